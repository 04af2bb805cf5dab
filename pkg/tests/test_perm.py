import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permquot.perm import (Permutation, commutator, compose, conjugate, cycle_decomposition,
                           from_cycles, inverse, parse_cycles, print_cycles)

from .oracles import element_order


def perms(max_degree=9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation))


def same_degree_triples(max_degree=9):
    return st.integers(1, max_degree).flatmap(lambda n: st.tuples(
        *[st.permutations(list(range(n))).map(Permutation)] * 3))


@pytest.mark.parametrize("text, degree, images", [
    ("(1 2 3)", 4, (1, 2, 0, 3)),
    ("()", 3, (0, 1, 2)),
    ("(1 2)(3 4)", 4, (1, 0, 3, 2)),
    ("(1,2,3)", 3, (1, 2, 0)),
    ("  (2 3) ", 3, (0, 2, 1)),
])
def test_parse_cycles(text, degree, images):
    assert parse_cycles(text, degree).images == images


@pytest.mark.parametrize("text", ["(1 2", "1 2)", "(1 x)", "(0 1)", "(1 5)", "(1 2 1)", "(1 2)junk"])
def test_parse_cycles_rejects(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)


def test_parse_multiplies_overlapping_cycles_left_to_right():
    # (1 2)(2 3) applies (1 2) first: 1 -> 2 -> 3, 2 -> 1, 3 -> 2
    assert parse_cycles("(1 2)(2 3)", 3) == parse_cycles("(1 3 2)", 3)


def test_compose_examples():
    c = parse_cycles("(1 2 3)", 3)
    assert compose(c, c) == parse_cycles("(1 3 2)", 3)
    assert compose(c, Permutation.identity(3)) == c
    assert compose(parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)) == parse_cycles("(1 3 2)", 3)


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_inverse_examples():
    assert inverse(parse_cycles("(1 2 3)", 3)) == parse_cycles("(1 3 2)", 3)
    assert inverse(Permutation.identity(5)).is_identity()
    rng = random.Random(7)
    images = list(range(50))
    rng.shuffle(images)
    a = Permutation(images)
    assert compose(a, inverse(a)).is_identity()


def test_cycle_decomposition_examples():
    assert cycle_decomposition(Permutation([1, 0, 3, 2])) == [(0, 1), (2, 3)]
    assert cycle_decomposition(Permutation.identity(4)) == []
    assert cycle_decomposition(Permutation([2, 0, 1])) == [(0, 2, 1)]
    assert print_cycles(Permutation([2, 0, 1])) == "(1 3 2)"
    assert print_cycles(Permutation.identity(2)) == "()"


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([])


def test_commutator_and_conjugate_conventions():
    a, b = parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)
    assert commutator(a, b) == ~a * ~b * a * b
    assert conjugate(a, b) == ~b * a * b
    # conjugation relabels cycles: (1 2)^(2 3) = (1 3)
    assert conjugate(a, b) == parse_cycles("(1 3)", 3)


def test_from_cycles_and_order_parity():
    a = from_cycles([(0, 1, 2), (3, 4)], 6)
    assert a.order() == 6
    assert a.parity() == 1
    assert a.support() == [0, 1, 2, 3, 4]


@given(perms())
def test_print_parse_round_trip(a):
    assert parse_cycles(print_cycles(a), a.degree) == a


@given(same_degree_triples())
def test_associativity_and_inverse_of_product(t):
    a, b, c = t
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert inverse(compose(a, b)) == compose(inverse(b), inverse(a))


@given(perms(8))
def test_order_matches_brute_force(a):
    assert a.order() == element_order(a.images)
    assert (a ** a.order()).is_identity()
    assert a ** -1 == inverse(a)


@given(perms(8))
def test_application_is_left_to_right(a):
    b = Permutation(list(reversed(range(a.degree))))
    ab = a * b
    assert all(ab(x) == b(a(x)) for x in range(a.degree))
