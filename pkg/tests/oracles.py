"""Brute-force references the library is checked against (no chains, no series)."""

from __future__ import annotations

from itertools import permutations


def mul(a: tuple, b: tuple) -> tuple:
    # left-to-right: x -> b(a(x))
    return tuple(b[a[x]] for x in range(len(a)))


def inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens, degree: int) -> frozenset:
    ident = tuple(range(degree))
    seen = {ident}
    todo = [ident]
    for x in todo:
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def commutator_closure(A: frozenset, B: frozenset, G: frozenset, degree: int) -> frozenset:
    """Normal closure in G of all commutators [a, b] (by element sets)."""
    comms = {mul(mul(inv(a), inv(b)), mul(a, b)) for a in A for b in B}
    sub = closure(list(comms), degree)
    while True:
        conj = {mul(mul(inv(g), h), g) for g in G for h in sub}
        bigger = closure(list(conj | sub), degree)
        if bigger == sub:
            return sub
        sub = bigger


def lower_central_stable(G: frozenset, degree: int) -> frozenset:
    term = G
    while True:
        nxt = commutator_closure(term, G, G, degree)
        if nxt == term:
            return term
        term = nxt


def derived_stable(G: frozenset, degree: int) -> frozenset:
    term = G
    while True:
        nxt = commutator_closure(term, term, G, degree)
        if nxt == term:
            return term
        term = nxt


def symmetric(degree: int) -> frozenset:
    return frozenset(permutations(range(degree)))


def element_order(a: tuple) -> int:
    ident = tuple(range(len(a)))
    x, k = a, 1
    while x != ident:
        x = mul(x, a)
        k += 1
    return k
