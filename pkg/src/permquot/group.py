"""Permutation groups, normal closures and the nilpotent/solvable residuals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chain import StabilizerChain, ops_for
from .perm import Permutation, print_cycles

COSET_LIMIT = 100_000


class GroupError(ValueError):
    pass


class IndexTooLarge(GroupError):
    pass


class PermGroup:
    """A permutation group given by generators, with a lazily built stabilizer chain.

    The chain is built once on first use and never changes afterwards.
    """

    def __init__(self, generators: Iterable[Permutation] = (), degree: int | None = None,
                 *, name: str | None = None, chain_method: str = "deterministic"):
        gens: list[Permutation] = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if degree is None:
                degree = g.degree
            if g.degree != degree:
                raise GroupError(f"generator degree {g.degree} != group degree {degree}")
            if g.is_identity() or g.images in seen:
                continue
            seen.add(g.images)
            gens.append(g)
        if degree is None:
            raise GroupError("degree required for a group without generators")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self.chain_method = chain_method
        self._chain: StabilizerChain | None = None
        self.ops = ops_for(degree)

    @classmethod
    def _from_chain(cls, chain: StabilizerChain, generators, name=None) -> "PermGroup":
        g = cls(generators, chain.degree, name=name)
        g._chain = chain
        return g

    def __repr__(self) -> str:
        label = self.name or "<" + ", ".join(map(print_cycles, self.generators[:4])) + \
            (", ..." if len(self.generators) > 4 else "") + ">"
        return f"PermGroup({label}, degree={self.degree})"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(
                self.degree, [g.images for g in self.generators], method=self.chain_method)
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabilizerChain:
        return StabilizerChain(self.degree, [g.images for g in self.generators], base=prefix)

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, a: Permutation) -> bool:
        if a.degree != self.degree:
            raise GroupError(f"degree mismatch: {a.degree} vs {self.degree}")
        return self.chain.contains(a.images)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        """Equal orders plus generator containment."""
        return self.degree == other.degree and self.order() == other.order() \
            and self.is_subgroup_of(other)

    def is_normal_in(self, ambient: "PermGroup") -> bool:
        return all(self.contains(conj(a, g)) for a in self.generators for g in ambient.generators)

    def elements(self) -> list[Permutation]:
        return [Permutation._trusted(self.ops.to_tuple(e)) for e in self.chain.elements()]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def strong_generators(self) -> list[Permutation]:
        return [Permutation._trusted(self.ops.to_tuple(s)) for s in self.chain.strong]

    def subgroup(self, generators: Iterable[Permutation], name=None) -> "PermGroup":
        return PermGroup(generators, self.degree, name=name)

    def join(self, other: "PermGroup") -> "PermGroup":
        return PermGroup(self.generators + other.generators, self.degree)


def conj(a: Permutation, g: Permutation) -> Permutation:
    return ~g * a * g


def comm(a: Permutation, b: Permutation) -> Permutation:
    return ~a * ~b * a * b


def trivial_group(degree: int) -> PermGroup:
    return PermGroup((), degree)


# -- normal closures and series -------------------------------------------------


def normal_closure(G: PermGroup, seeds: Iterable[Permutation], *, check: bool = True) -> PermGroup:
    """Smallest subgroup containing ``seeds`` that is normalized by the generators of ``G``."""
    seeds = [s for s in seeds if not s.is_identity()]
    if check:
        for s in seeds:
            if not G.contains(s):
                raise GroupError(f"seed {s} is not in the group")
    chain = StabilizerChain(G.degree, [], ops=G.ops)
    gens: list[Permutation] = []
    queue: list[Permutation] = []
    for s in seeds:
        if chain.add_generator(s.images):
            gens.append(s)
            queue.append(s)
    while queue:
        x = queue.pop()
        for g in G.generators:
            y = conj(x, g)
            if chain.add_generator(y.images):
                gens.append(y)
                queue.append(y)
    return PermGroup._from_chain(chain, gens)


def commutator_subgroup(ambient: PermGroup, A: PermGroup, B: PermGroup,
                        *, check: bool = True) -> PermGroup:
    """``[A, B]`` for subgroups normal in ``ambient``."""
    if check:
        if not (A.is_subgroup_of(ambient) and B.is_subgroup_of(ambient)):
            raise GroupError("commutator arguments must be subgroups of the ambient group")
        if not (A.is_normal_in(ambient) and B.is_normal_in(ambient)):
            raise GroupError("commutator arguments must be normal in the ambient group")
    seeds = [comm(a, b) for a in A.generators for b in B.generators]
    return normal_closure(ambient, seeds, check=False)


@dataclass
class NormalSeries:
    kind: str  # "derived" or "lower_central"
    terms: list[PermGroup]

    @property
    def stable(self) -> PermGroup:
        return self.terms[-1]

    def orders(self) -> list[int]:
        return [t.order() for t in self.terms]


def derived_series(G: PermGroup) -> NormalSeries:
    terms = [G]
    while not terms[-1].is_trivial():
        T = terms[-1]
        nxt = commutator_subgroup(G, T, T, check=False)
        if nxt.order() == T.order():
            break
        terms.append(nxt)
    return NormalSeries("derived", terms)


def lower_central_series(G: PermGroup) -> NormalSeries:
    terms = [G]
    while not terms[-1].is_trivial():
        T = terms[-1]
        nxt = commutator_subgroup(G, T, G, check=False)
        if nxt.order() == T.order():
            break
        terms.append(nxt)
    return NormalSeries("lower_central", terms)


@dataclass
class ResidualResult:
    """The stable term of a series together with its index in the group."""

    kind: str  # "nilpotent" or "solvable"
    group: PermGroup
    residual: PermGroup
    index: int
    series: NormalSeries
    certified: bool
    certificate: str = ""

    @property
    def is_trivial(self) -> bool:
        return self.residual.order() == 1


def _residual(G: PermGroup, kind: str, certify: bool, limit: int) -> ResidualResult:
    series = lower_central_series(G) if kind == "nilpotent" else derived_series(G)
    stable = series.stable
    index = G.order() // stable.order()
    certified, how = False, "skipped"
    if stable.order() == 1:
        certified, how = True, "series reaches the identity"
    elif certify:
        if index <= limit:
            image = coset_action(G, stable, limit=limit).image
            inner = lower_central_series(image) if kind == "nilpotent" else derived_series(image)
            certified = inner.stable.order() == 1
            how = f"coset action on {index} points"
        else:
            how = f"index {index} exceeds coset limit {limit}"
    return ResidualResult(kind, G, stable, index, series, certified, how)


def nilpotent_residual(G: PermGroup, *, certify: bool = True, limit: int = COSET_LIMIT) -> ResidualResult:
    return _residual(G, "nilpotent", certify, limit)


def solvable_residual(G: PermGroup, *, certify: bool = True, limit: int = COSET_LIMIT) -> ResidualResult:
    return _residual(G, "solvable", certify, limit)


def is_nilpotent(G: PermGroup) -> bool:
    return lower_central_series(G).stable.order() == 1


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G).stable.order() == 1


# -- actions ----------------------------------------------------------------------


@dataclass
class CosetAction:
    image: PermGroup
    representatives: list[Permutation]  # coset i is H * representatives[i]


def coset_action(G: PermGroup, H: PermGroup, *, limit: int = COSET_LIMIT) -> CosetAction:
    """Action of ``G`` by right multiplication on the right cosets of ``H``."""
    if not H.is_subgroup_of(G):
        raise GroupError("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > limit:
        raise IndexTooLarge(f"index {index} exceeds limit {limit}")
    ops, hchain = G.ops, H.chain
    start = ops.identity
    key0 = ops.key(hchain.canonical_coset_element(start))
    reps = [start]
    lookup = {key0: 0}
    gens = [ops.coerce(g) for g in G.generators]
    images = [[0] * index for _ in gens]
    i = 0
    while i < len(reps):
        r = reps[i]
        for gi, g in enumerate(gens):
            rg = ops.mul(r, g)
            k = ops.key(hchain.canonical_coset_element(rg))
            j = lookup.get(k)
            if j is None:
                j = len(reps)
                lookup[k] = j
                reps.append(rg)
            images[gi][i] = j
        i += 1
    if len(reps) != index:
        raise GroupError(f"coset enumeration found {len(reps)} cosets, expected {index}")
    perms = [Permutation._trusted(tuple(im)) for im in images]
    return CosetAction(PermGroup(perms, index),
                       [Permutation._trusted(ops.to_tuple(r)) for r in reps])


def induced_permutations(G: PermGroup, labeling: Sequence[int]) -> list[Permutation]:
    """Images of G's generators on the labels; raises if the labeling is not G-equivariant."""
    m = max(labeling) + 1
    out = []
    for g in G.generators:
        img = [-1] * m
        for x, lab in enumerate(labeling):
            t = labeling[g.images[x]]
            if img[lab] == -1:
                img[lab] = t
            elif img[lab] != t:
                raise GroupError("labeling is not G-equivariant")
        if sorted(img) != list(range(m)):
            raise GroupError("labeling is not G-equivariant")
        out.append(Permutation._trusted(tuple(img)))
    return out


def kernel_of_action(G: PermGroup, labeling: Sequence[int]) -> PermGroup:
    """Elements of ``G`` fixing every label, via a chain on the diagonal action whose base starts with the labels."""
    n = G.degree
    induced = induced_permutations(G, labeling)
    m = max(labeling) + 1
    extended = [g.images + tuple(n + x for x in h.images) for g, h in zip(G.generators, induced)]
    chain = StabilizerChain(n + m, extended, base=range(n, n + m))
    tail = chain.level_generators(m)
    ops = chain.ops
    gens = [Permutation._trusted(ops.to_tuple(t)[:n]) for t in tail]
    return PermGroup(gens, n)


def action_image(G: PermGroup, labeling: Sequence[int]) -> PermGroup:
    return PermGroup(induced_permutations(G, labeling), max(labeling) + 1)
