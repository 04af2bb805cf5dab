"""Orbits, block systems, primitivity and point stabilizers."""

from __future__ import annotations

from dataclasses import dataclass

from .group import GroupError, PermGroup, action_image, kernel_of_action
from .perm import Permutation


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int | None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])


def orbits(G: PermGroup) -> list[tuple[int, ...]]:
    uf = _UnionFind(G.degree)
    for g in G.generators:
        for x, y in enumerate(g.images):
            uf.union(x, y)
    return uf.classes()


def orbit(G: PermGroup, x: int) -> list[int]:
    seen = {x}
    todo = [x]
    for y in todo:
        for g in G.generators:
            z = g.images[y]
            if z not in seen:
                seen.add(z)
                todo.append(z)
    return sorted(seen)


def is_transitive(G: PermGroup) -> bool:
    return len(orbit(G, 0)) == G.degree


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]  # sorted by least element

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def is_trivial(self) -> bool:
        return self.num_blocks == 1 or self.block_size == 1

    def labeling(self) -> list[int]:
        lab = [0] * self.degree
        for i, b in enumerate(self.blocks):
            for x in b:
                lab[x] = i
        return lab

    def is_invariant(self, G: PermGroup) -> bool:
        lab = self.labeling()
        for g in G.generators:
            for b in self.blocks:
                if len({lab[g.images[x]] for x in b}) != 1:
                    return False
        return True

    def __str__(self) -> str:
        return " | ".join("{" + ",".join(str(x + 1) for x in b) + "}" for b in self.blocks)


def minimal_block_system_containing(G: PermGroup, a: int, b: int) -> BlockSystem:
    """Finest G-congruence with ``a`` and ``b`` in one block (Atkinson's union-find closure)."""
    if a == b:
        raise ValueError("points must differ")
    if not is_transitive(G):
        raise GroupError("group is not transitive")
    uf = _UnionFind(G.degree)
    uf.union(a, b)
    queue = [(a, b)]
    gens = [g.images for g in G.generators]
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = uf.find(g[x]), uf.find(g[y])
            if u != v:
                uf.union(u, v)
                queue.append((u, v))
    return BlockSystem(tuple(uf.classes()))


def is_primitive(G: PermGroup) -> bool:
    """Intransitive groups are imprimitive; degree 1 counts as primitive."""
    if G.degree == 1:
        return True
    if not is_transitive(G):
        return False
    for b in range(1, G.degree):
        if minimal_block_system_containing(G, 0, b).num_blocks != 1:
            return False
    return True


def block_systems(G: PermGroup) -> list[BlockSystem]:
    """Distinct nontrivial systems of the form minimal_block_system_containing(0, b)."""
    if G.degree < 2 or not is_transitive(G):
        return []
    found = {}
    for b in range(1, G.degree):
        bs = minimal_block_system_containing(G, 0, b)
        if not bs.is_trivial():
            found.setdefault(bs.blocks, bs)
    return sorted(found.values(), key=lambda s: (s.block_size, s.blocks))


def point_stabilizer(G: PermGroup, x: int) -> PermGroup:
    chain = G.chain_with_base([x])
    gens = [Permutation._trusted(G.ops.to_tuple(s)) for s in chain.level_generators(1)]
    return PermGroup(gens, G.degree)


def induced_block_action(G: PermGroup, B: BlockSystem) -> tuple[PermGroup, list[int]]:
    if not B.is_invariant(G):
        raise GroupError("block system is not G-invariant")
    lab = B.labeling()
    return action_image(G, lab), lab


def block_kernel(G: PermGroup, B: BlockSystem) -> PermGroup:
    return kernel_of_action(G, B.labeling())
