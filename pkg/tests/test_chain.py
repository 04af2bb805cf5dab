import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permquot.chain import NumpyOps, StabilizerChain, TupleOps, ops_for
from permquot.constructions import gl23_wr_s4_imprimitive, symmetric_group
from permquot.group import PermGroup
from permquot.perm import Permutation, parse_cycles

from .oracles import closure


def gen_sets(max_degree=6, max_gens=3):
    return st.integers(1, max_degree).flatmap(lambda n: st.lists(
        st.permutations(list(range(n))).map(tuple), min_size=0, max_size=max_gens
    ).map(lambda gs: (n, gs)))


def test_s4_order_and_oracle():
    gens = [parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)]
    chain = StabilizerChain(4, gens)
    assert chain.order() == 24 == len(closure([g.images for g in gens], 4))


def test_empty_generators_give_trivial_group():
    chain = StabilizerChain(5, [])
    assert chain.order() == 1
    assert chain.contains(Permutation.identity(5))
    assert not chain.contains(parse_cycles("(1 2)", 5))


def test_wreath_product_order():
    assert gl23_wr_s4_imprimitive().order() == 127401984 == 48**4 * 24


@given(gen_sets())
def test_chain_agrees_with_closure(data):
    n, gens = data
    elements = closure(gens, n)
    chain = StabilizerChain(n, gens)
    assert chain.order() == len(elements)
    assert math.prod(chain.orbit_sizes()) == chain.order()
    assert chain.verify()
    # membership on a sample of S_n, both sides
    probe = [tuple((i * k + s) % n for i in range(n)) for k in range(1, n + 1) for s in range(n)
             if math.gcd(k, n) == 1]
    for p in probe + list(elements)[:20]:
        assert chain.contains(p) == (p in elements)


@given(gen_sets())
def test_strong_generators_fix_base_prefix(data):
    n, gens = data
    chain = StabilizerChain(n, gens)
    base = chain.base
    for i in range(len(base)):
        for g in chain.level_generators(i):
            assert all(g[b] == b for b in base[:i])


@given(gen_sets(max_degree=6), st.integers(0, 10))
def test_random_method_agrees(data, seed):
    n, gens = data
    det = StabilizerChain(n, gens)
    rnd = StabilizerChain(n, gens, method="random", seed=seed)
    assert det.order() == rnd.order()
    assert rnd.verify()


@given(gen_sets(max_degree=5))
def test_numpy_backend_agrees(data):
    n, gens = data
    a = StabilizerChain(n, gens, ops=TupleOps(n))
    b = StabilizerChain(n, gens, ops=NumpyOps(n))
    assert a.order() == b.order()


def test_backend_choice():
    assert isinstance(ops_for(10), TupleOps)
    assert isinstance(ops_for(5000), NumpyOps)


def test_base_prefix_is_respected():
    G = symmetric_group(5)
    chain = StabilizerChain(5, G.generators, base=[3, 1])
    assert chain.base[:2] == [3, 1]
    assert chain.order() == 120
    assert math.prod(chain.orbit_sizes()[2:]) == 6


def test_elements_enumerate_group():
    G = symmetric_group(4)
    elems = {tuple(int(x) for x in e) for e in G.chain.elements()}
    assert elems == set(closure([g.images for g in G.generators], 4))


def test_canonical_coset_element_is_a_coset_invariant():
    G = symmetric_group(5)
    H = PermGroup([parse_cycles("(1 2 3)", 5), parse_cycles("(1 2)", 5)], 5)
    hs = [tuple(e) for e in H.chain.elements()]
    for g in [parse_cycles("(1 4)(2 5)", 5), parse_cycles("(1 5 3)", 5)]:
        reps = {tuple(int(x) for x in H.chain.canonical_coset_element(tuple(g.images[h[x]] for x in range(5))))
                for h in hs}
        assert len(reps) == 1


def test_add_generator_grows_group():
    chain = StabilizerChain(4, [parse_cycles("(1 2 3 4)", 4)])
    assert chain.order() == 4
    assert chain.add_generator(parse_cycles("(1 2)", 4))
    assert chain.order() == 24
    assert not chain.add_generator(parse_cycles("(2 3)", 4))
