import pytest
from hypothesis import given
from hypothesis import strategies as st

from permquot.constructions import (alternating_group, cyclic_group, dihedral_group, extremal_example,
                                    gl23, matrix_to_perm, symmetric_group)
from permquot.group import (GroupError, IndexTooLarge, PermGroup, commutator_subgroup, coset_action,
                            derived_series, is_nilpotent, is_solvable, kernel_of_action, lower_central_series,
                            nilpotent_residual, normal_closure, solvable_residual, trivial_group)
from permquot.perm import Permutation, parse_cycles

from .oracles import closure, derived_stable, lower_central_stable


def P(text, n):
    return parse_cycles(text, n)


def elements(G):
    return frozenset(g.images for g in G.elements())


def test_orders():
    assert alternating_group(5).order() == 60
    assert trivial_group(4).order() == 1
    assert PermGroup([], 3).order() == 1


def test_identity_and_duplicates_dropped():
    G = PermGroup([Permutation.identity(4), P("(1 2)", 4), P("(1 2)", 4)], 4)
    assert G.generators == (P("(1 2)", 4),)


def test_membership():
    A4 = alternating_group(4)
    assert A4.contains(P("(1 2 3)", 4))
    assert not A4.contains(P("(1 2)", 4))
    C6 = cyclic_group(6)
    assert P("(1 3 5)(2 4 6)", 6) in C6
    with pytest.raises(GroupError):
        A4.contains(P("(1 2)", 5))


def test_normal_closure():
    S4, S5 = symmetric_group(4), symmetric_group(5)
    assert normal_closure(S4, [P("(1 2 3)", 4)]).order() == 12
    assert normal_closure(S4, [Permutation.identity(4)]).order() == 1
    assert normal_closure(S5, [P("(1 2 3 4 5)", 5)]).equals(alternating_group(5))
    with pytest.raises(GroupError):
        normal_closure(alternating_group(4), [P("(1 2)", 4)])


def test_commutator_subgroup():
    S4, A5 = symmetric_group(4), alternating_group(5)
    assert commutator_subgroup(S4, S4, S4).equals(alternating_group(4))
    assert commutator_subgroup(A5, A5, A5).order() == 60
    assert commutator_subgroup(S4, trivial_group(4), S4).order() == 1
    with pytest.raises(GroupError):
        commutator_subgroup(S4, PermGroup([P("(1 2)", 4)], 4), S4)  # not normal


def test_residual_examples():
    S4 = symmetric_group(4)
    nil, sol = nilpotent_residual(S4), solvable_residual(S4)
    assert nil.residual.equals(alternating_group(4)) and nil.index == 2
    assert sol.residual.order() == 1 and sol.index == 24
    A5 = alternating_group(5)
    assert nilpotent_residual(A5).index == 1 and solvable_residual(A5).index == 1
    GL = matrix_to_perm(gl23(), "nonzero")
    assert nilpotent_residual(GL).index == 2
    assert solvable_residual(GL).index == 48
    for r in (nil, sol, nilpotent_residual(A5), nilpotent_residual(GL)):
        assert r.certified


def test_uncertified_when_index_exceeds_limit():
    G = symmetric_group(7)
    r = nilpotent_residual(G, limit=1)
    assert r.index == 2 and not r.certified


def test_predicates():
    assert is_nilpotent(extremal_example("SD16_in_GL23").group)
    S3 = symmetric_group(3)
    assert not is_nilpotent(S3) and is_solvable(S3)
    assert not is_solvable(alternating_group(5))


def test_coset_action():
    S4 = symmetric_group(4)
    img = coset_action(S4, alternating_group(4)).image
    assert img.degree == 2 and img.order() == 2
    V4 = PermGroup([P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)], 4)
    q = coset_action(S4, V4).image
    assert q.degree == 6 and q.order() == 6 and not is_nilpotent(q)
    C6 = cyclic_group(6)
    C3 = PermGroup([P("(1 3 5)(2 4 6)", 6)], 6)
    assert coset_action(C6, C3).image.order() == 2
    with pytest.raises(IndexTooLarge):
        coset_action(S4, trivial_group(4), limit=10)
    with pytest.raises(GroupError):
        coset_action(alternating_group(4), PermGroup([P("(1 2)", 4)], 4))


def test_kernel_of_action():
    D4 = dihedral_group(4)
    assert kernel_of_action(D4, [0, 1, 0, 1]).order() == 4
    assert kernel_of_action(alternating_group(5), list(range(5))).order() == 1
    assert kernel_of_action(symmetric_group(4), [0, 0, 0, 0]).order() == 24
    with pytest.raises(GroupError):
        kernel_of_action(symmetric_group(4), [0, 0, 1, 1])


def test_series_stable_terms():
    G = symmetric_group(4)
    lc = lower_central_series(G)
    T = lc.stable
    assert commutator_subgroup(G, T, G).equals(T)
    ds = derived_series(symmetric_group(5))
    assert commutator_subgroup(symmetric_group(5), ds.stable, ds.stable).equals(ds.stable)
    assert ds.orders() == [120, 60]


def small_groups(max_degree=5):
    return st.integers(2, max_degree).flatmap(lambda n: st.lists(
        st.permutations(list(range(n))).map(tuple), min_size=1, max_size=3).map(lambda gs: (n, gs)))


@given(small_groups())
def test_residuals_match_closure_oracle(data):
    n, gens = data
    G = PermGroup([Permutation(g) for g in gens], n)
    elems = closure(gens, n)
    nil, sol = nilpotent_residual(G), solvable_residual(G)
    assert elements(nil.residual) == lower_central_stable(elems, n)
    assert elements(sol.residual) == derived_stable(elems, n)
    assert nil.index * nil.residual.order() == len(elems)
    for g in G.generators:
        assert all(nil.residual.contains(~g * h * g) for h in nil.residual.generators)
        assert all(sol.residual.contains(~g * h * g) for h in sol.residual.generators)


def test_equality_and_subgroups():
    S4 = symmetric_group(4)
    A4 = alternating_group(4)
    assert A4.is_subgroup_of(S4) and A4.is_normal_in(S4)
    assert not S4.is_subgroup_of(A4)
    assert S4.equals(PermGroup([P("(1 2)", 4), P("(2 3)", 4), P("(3 4)", 4)], 4))
    assert A4.join(PermGroup([P("(1 2)", 4)], 4)).equals(S4)
