"""Subgroup classes of small symmetric groups, primitive rosters and a small simple-group table."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from . import constructions as cons
from .fields import is_prime, prime_power
from .group import PermGroup, is_nilpotent, is_solvable
from .perm import Permutation, print_cycles
from .structure import is_primitive, is_transitive

MAX_EXHAUSTIVE = 6
MAX_EXPENSIVE = 7


class CatalogError(ValueError):
    pass


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(b.__getitem__, a))


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(gens: Iterable[tuple], start: Iterable[tuple] = ()) -> frozenset:
    """Element set of the group generated by ``gens`` together with the subgroup ``start``.

    ``start`` must already be a group; the result is grown one right coset
    ``start * y`` at a time (Dimino), so each new element costs one product.
    """
    gens = list(gens)
    base = list(start)
    n = len(gens[0]) if gens else len(base[0])
    ident = tuple(range(n))
    if not base:
        base = [ident]
    seen = set(base)
    reps = [ident]
    for r in reps:
        for g in gens:
            y = _mul(r, g)
            if y not in seen:
                seen.update(_mul(h, y) for h in base)
                reps.append(y)
    return frozenset(seen)


def _conjugate_set(elements: frozenset, sigma: tuple, sigma_inv: tuple) -> frozenset:
    # x -> sigma^-1 x sigma, i.e. images sigma[x[sigma_inv[i]]]
    return frozenset(tuple(sigma[x[j]] for j in sigma_inv) for x in elements)


def _prime_power_order(a: tuple) -> int | None:
    seen = [False] * len(a)
    lengths = []
    for s in range(len(a)):
        if seen[s]:
            continue
        length, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = a[x]
            length += 1
        lengths.append(length)
    order = math.lcm(*lengths)
    if order == 1:
        return None
    pk = prime_power(order)
    return order if pk else None


@dataclass
class SubgroupClass:
    degree: int
    representative: PermGroup
    order: int
    class_size: int
    transitive: bool
    primitive: bool
    nilpotent: bool
    solvable: bool
    elements: frozenset = field(repr=False)

    @property
    def normalizer_order(self) -> int:
        return math.factorial(self.degree) // self.class_size

    @property
    def label(self) -> str:
        return f"S{self.degree}/order{self.order}/" + ";".join(
            print_cycles(g) for g in self.representative.generators) if \
            self.representative.generators else f"S{self.degree}/order1/()"

    def as_json(self) -> dict:
        return {
            "generators": [print_cycles(g) for g in self.representative.generators],
            "degree": self.degree,
            "order": str(self.order),
            "class_size": self.class_size,
            "flags": {"transitive": self.transitive, "primitive": self.primitive,
                      "nilpotent": self.nilpotent, "solvable": self.solvable},
        }


@dataclass
class SubgroupLattice:
    """Every subgroup of S_n as an element set, grouped into conjugacy classes."""

    degree: int
    classes: list[SubgroupClass]
    class_of: dict[frozenset, int]  # every subgroup (as element set) -> class index

    def subgroups(self) -> list[frozenset]:
        return list(self.class_of)

    def subgroups_of(self, elements: frozenset) -> list[frozenset]:
        return [H for H in self.class_of if len(H) <= len(elements) and
                len(elements) % len(H) == 0 and H <= elements]

    def normal_subgroups_of(self, cls: SubgroupClass) -> list[frozenset]:
        gens = [g.images for g in cls.representative.generators]
        out = []
        for H in self.subgroups_of(cls.elements):
            if all(_mul(_mul(_inv(g), h), g) in H for g in gens for h in H):
                out.append(H)
        return sorted(out, key=lambda H: (len(H), sorted(H)))


def group_from_elements(elements: frozenset, degree: int) -> PermGroup:
    """A PermGroup with a small generating set for the given closed element set."""
    gens: list[tuple] = []
    current = frozenset({tuple(range(degree))})
    for x in sorted(elements):
        if x not in current:
            gens.append(x)
            current = closure(gens)
            if len(current) == len(elements):
                break
    return PermGroup([Permutation._trusted(g) for g in gens], degree)


@lru_cache(maxsize=None)
def subgroup_lattice(n: int, allow_expensive: bool = False) -> SubgroupLattice:
    """All conjugacy classes of subgroups of S_n by cyclic extension.

    Every subgroup K > 1 equals <M, c> for a maximal subgroup M and any
    prime-power-order c in K outside M, so extending one representative per
    class by every prime-power cyclic subgroup reaches every class.
    Duplicates are recognised by looking up the element set among all
    conjugates of the classes found so far.
    """
    limit = MAX_EXPENSIVE if allow_expensive else MAX_EXHAUSTIVE
    if not 1 <= n <= limit:
        raise CatalogError(f"subgroup enumeration supports 1 <= n <= {limit}, got {n}")
    elements = list(itertools.permutations(range(n)))
    inverses = {s: _inv(s) for s in elements}
    cyclic: dict[frozenset, tuple] = {}
    for a in sorted(elements):
        if _prime_power_order(a):
            Z = closure([a])
            cyclic.setdefault(Z, a)
    cyclic_gens = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), kv[1]))

    class_of: dict[frozenset, int] = {}
    reps: list[tuple[frozenset, list[tuple]]] = []

    def register(K: frozenset, gens: list[tuple]) -> None:
        # one conjugation per right coset of the normalizer
        idx = len(reps)
        reps.append((K, gens))
        normalizer = [s for s in elements
                      if all(_mul(_mul(inverses[s], g), s) in K for g in gens)]
        covered: set[tuple] = set()
        for s in elements:
            if s in covered:
                continue
            covered.update(_mul(m, s) for m in normalizer)
            class_of.setdefault(_conjugate_set(K, s, inverses[s]), idx)

    register(frozenset({tuple(range(n))}), [])
    i = 0
    while i < len(reps):
        H, gens = reps[i]
        i += 1
        for Z, c in cyclic_gens:
            if c in H or Z <= H:
                continue
            K = closure(gens + [c], H)
            if K not in class_of:
                register(K, gens + [c])

    sizes = [0] * len(reps)
    for idx in class_of.values():
        sizes[idx] += 1
    classes = []
    for (K, gens), size in zip(reps, sizes):
        G = PermGroup([Permutation._trusted(g) for g in gens], n)
        classes.append(SubgroupClass(
            degree=n, representative=G, order=len(K), class_size=size,
            transitive=is_transitive(G), primitive=is_primitive(G),
            nilpotent=is_nilpotent(G), solvable=is_solvable(G), elements=K))
    order = sorted(range(len(classes)), key=lambda j: (classes[j].order, classes[j].label))
    remap = {old: new for new, old in enumerate(order)}
    classes = [classes[j] for j in order]
    class_of = {K: remap[j] for K, j in class_of.items()}
    return SubgroupLattice(n, classes, class_of)


def enumerate_subgroup_classes(n: int, allow_expensive: bool = False) -> list[SubgroupClass]:
    return subgroup_lattice(n, allow_expensive).classes


def _naive_closure(gens: list[tuple], n: int) -> frozenset:
    ident = tuple(range(n))
    seen = {ident}
    todo = [ident]
    for x in todo:
        for g in gens:
            y = _mul(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def all_subgroups_direct(n: int) -> set[frozenset]:
    """Independent oracle: every subgroup of S_n by joining with all cyclic subgroups, no conjugacy."""
    elements = list(itertools.permutations(range(n)))
    cyclics = {_naive_closure([a], n): a for a in elements}
    found = {frozenset({tuple(range(n))})}
    todo = list(found)
    for H in todo:
        for Z, a in cyclics.items():
            if Z <= H:
                continue
            K = _naive_closure([a] + sorted(H), n)
            if K not in found:
                found.add(K)
                todo.append(K)
    return found


def export_catalog(n: int) -> str:
    return json.dumps([c.as_json() for c in enumerate_subgroup_classes(n)], indent=2)


# -- primitive groups ---------------------------------------------------------------


@dataclass
class PrimitiveRoster:
    degree: int
    groups: list[tuple[str, PermGroup]]
    complete: bool


def _named_candidates(n: int) -> list[tuple[str, Callable[[], PermGroup]]]:
    cands: list[tuple[str, Callable[[], PermGroup]]] = [
        (f"S:{n}", lambda: cons.symmetric_group(n)), (f"A:{n}", lambda: cons.alternating_group(n))]
    if is_prime(n):
        cands += [(f"C:{n}", lambda: cons.cyclic_group(n)), (f"D:{n}", lambda: cons.dihedral_group(n))]
    pk = prime_power(n)
    if pk and (pk[1] == 1 or pk in _tabled()):
        cands.append((f"AGL1:{n}", lambda: cons.agl1(n)))
        if pk[1] > 1:
            cands.append((f"AGammaL1:{n}", lambda: cons.agl1(n, semilinear=True)))
    qk = prime_power(n - 1)
    if qk and (qk[1] == 1 or qk in _tabled()):
        q = n - 1
        cands += [(f"PSL2:{q}", lambda: cons.psl2(q)), (f"PGL2:{q}", lambda: cons.pgl2(q))]
        if qk[1] > 1:
            cands.append((f"PGammaL2:{q}", lambda: cons.pgammal2(q)))
    return cands


def _tabled():
    from .fields import CONWAY
    return CONWAY


def primitive_groups_of_degree(n: int, allow_expensive: bool = False) -> PrimitiveRoster:
    """Primitive groups of degree n: complete up to degree 6 (7 when expensive ops are allowed)."""
    limit = MAX_EXPENSIVE if allow_expensive else MAX_EXHAUSTIVE
    if n <= limit:
        classes = [c for c in enumerate_subgroup_classes(n, allow_expensive) if c.primitive]
        return PrimitiveRoster(n, [(c.label, c.representative) for c in classes], True)
    seen_orders: dict[int, list[PermGroup]] = {}
    groups = []
    for name, make in _named_candidates(n):
        G = make()
        if G.degree != n or not is_primitive(G):
            continue
        same = [H for H in seen_orders.get(G.order(), []) if G.equals(H)]
        if same:
            continue
        seen_orders.setdefault(G.order(), []).append(G)
        groups.append((name, G))
    return PrimitiveRoster(n, groups, False)


# -- simple groups ---------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleGroupDatum:
    name: str
    order: int
    out_order: int
    min_degree: int
    linear: tuple[int, int] | None  # (d, q) with L <= PSL_d(q)
    construct: Callable[[], PermGroup] = field(repr=False, compare=False)
    automorphisms: Callable[[], PermGroup] | None = field(default=None, repr=False, compare=False)


def simple_group_table() -> list[SimpleGroupDatum]:
    """Curated data; each row is cross-checked by constructing the group (and Aut L where cheap)."""
    return [
        SimpleGroupDatum("A5", 60, 2, 5, (2, 4),
                         lambda: cons.alternating_group(5), lambda: cons.symmetric_group(5)),
        SimpleGroupDatum("A6", 360, 4, 6, (2, 9),
                         lambda: cons.alternating_group(6), lambda: cons.pgammal2(9)),
        SimpleGroupDatum("A7", 2520, 2, 7, None,
                         lambda: cons.alternating_group(7), lambda: cons.symmetric_group(7)),
        SimpleGroupDatum("A8", 20160, 2, 8, (4, 2),
                         lambda: cons.alternating_group(8), lambda: cons.symmetric_group(8)),
        SimpleGroupDatum("PSL(2,7)", 168, 2, 7, (2, 7),
                         lambda: cons.matrix_to_perm(cons.gl_generators(3, 2), "nonzero"),
                         lambda: cons.pgl2(7)),
        SimpleGroupDatum("PSL(2,8)", 504, 3, 9, (2, 8),
                         lambda: cons.psl2(8), lambda: cons.pgammal2(8)),
        SimpleGroupDatum("PSL(2,11)", 660, 2, 11, (2, 11),
                         lambda: cons.psl2(11), lambda: cons.pgl2(11)),
        SimpleGroupDatum("PSL(3,3)", 5616, 2, 13, (3, 3),
                         lambda: cons.matrix_to_perm(cons.gl_generators(3, 3), "projective"), None),
    ]


@dataclass(frozen=True)
class SimpleGroupCheck:
    name: str
    description: str
    holds: bool
    detail: str


def simple_group_cross_checks(datum: SimpleGroupDatum) -> list[SimpleGroupCheck]:
    """Recompute what the curated row claims: order, degree, and |Aut L| = |L||Out L| where built."""
    out = []
    L = datum.construct()
    out.append(SimpleGroupCheck(datum.name, "chain order", L.order() == datum.order,
                                f"{L.order()} vs {datum.order}"))
    out.append(SimpleGroupCheck(datum.name, "order divides k!",
                                math.factorial(datum.min_degree) % datum.order == 0,
                                f"k = {datum.min_degree}"))
    if L.degree == datum.min_degree:
        out.append(SimpleGroupCheck(datum.name, "faithful action on k points",
                                    is_transitive(L), f"degree {L.degree}"))
    if datum.automorphisms is not None:
        A = datum.automorphisms()
        expected = datum.order * datum.out_order
        if A.degree == L.degree:
            normal = L.is_normal_in(A)
        else:
            normal = True
        out.append(SimpleGroupCheck(datum.name, "|L||Out L| realized", A.order() == expected and normal,
                                    f"{A.order()} vs {expected}"))
    return out


def outer_automorphism_checks(datum: SimpleGroupDatum) -> list[SimpleGroupCheck]:
    """The outer-automorphism inequalities for one row, each strict and certified."""
    from .bounds import BoundExpr, BoundKind, compare_value_to_bound

    k, out_o, order = datum.min_degree, datum.out_order, datum.order
    rows = []
    holds = 2 * out_o < k
    if datum.name == "A6":
        rows.append(SimpleGroupCheck(datum.name, "2|Out| < k (A6 excluded)", not holds,
                                     f"{2 * out_o} >= {k}, consistent with the exclusion"))
    else:
        rows.append(SimpleGroupCheck(datum.name, "2|Out| < k", holds, f"{2 * out_o} vs {k}"))
    # 2|Out| < k^beta  <=>  |Out| < k^beta / 2
    v = compare_value_to_bound(out_o, BoundExpr(BoundKind.T1_NILPOTENT, k))
    rows.append(SimpleGroupCheck(datum.name, "2|Out| < k^beta", v.outcome == "pass", v.margin))
    # lambda |Out| < k^alpha  <=>  |Out| < k^alpha / lambda
    v = compare_value_to_bound(out_o, BoundExpr(BoundKind.T3_SOLVABLE, k))
    rows.append(SimpleGroupCheck(datum.name, "lambda|Out| < k^alpha", v.outcome == "pass", v.margin))
    # k^alpha <= |L|^(alpha/2)  <=>  k^2 <= |L|
    rows.append(SimpleGroupCheck(datum.name, "k^alpha <= |L|^(alpha/2)", k * k <= order,
                                 f"{k * k} vs {order}"))
    rows.append(SimpleGroupCheck(datum.name, "2|Out| < sqrt|L|", 4 * out_o * out_o < order,
                                 f"{4 * out_o * out_o} vs {order}"))
    if datum.linear is not None:
        d, q = datum.linear
        rows.append(SimpleGroupCheck(datum.name, f"2|Out| < q^d/(q-1) for (d,q) = ({d},{q})",
                                     2 * out_o * (q - 1) < q**d, f"{2 * out_o * (q - 1)} vs {q**d}"))
    return rows
