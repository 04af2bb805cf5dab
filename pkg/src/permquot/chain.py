"""Base and strong generating sets via Schreier-Sims.

The chain works on raw image sequences rather than :class:`Permutation`
objects: tuples for small degrees, numpy arrays once the degree makes tuple
composition the bottleneck.  Both follow the left-to-right convention,
``mul(a, b)[x] == b[a[x]]``.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

import numpy as np

NUMPY_DEGREE = 1024
EXPLICIT_TRANSVERSAL_LIMIT = 4_000_000


class TupleOps:
    def __init__(self, n: int):
        self.n = n
        self.identity = tuple(range(n))

    def mul(self, a, b):
        return tuple(map(b.__getitem__, a))

    def inv(self, a):
        out = [0] * self.n
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def is_id(self, a) -> bool:
        return a == self.identity

    def convert(self, images: Sequence[int]):
        return tuple(images)

    def coerce(self, g):
        if hasattr(g, "images"):
            return g.images
        return g if isinstance(g, tuple) else tuple(int(x) for x in g)

    def to_tuple(self, a) -> tuple:
        return a

    def key(self, a):
        return a


class NumpyOps:
    def __init__(self, n: int):
        self.n = n
        self.dtype = np.int32
        self.identity = np.arange(n, dtype=self.dtype)

    def mul(self, a, b):
        return b[a]

    def inv(self, a):
        out = np.empty_like(a)
        out[a] = self.identity
        return out

    def is_id(self, a) -> bool:
        return bool(np.array_equal(a, self.identity))

    def convert(self, images: Sequence[int]):
        return np.asarray(images, dtype=self.dtype)

    def coerce(self, g):
        if hasattr(g, "images"):
            g = g.images
        return g if isinstance(g, np.ndarray) else self.convert(g)

    def to_tuple(self, a) -> tuple:
        return tuple(a.tolist())

    def key(self, a):
        return a.tobytes()


def ops_for(n: int):
    return NumpyOps(n) if n >= NUMPY_DEGREE else TupleOps(n)


class _Level:
    __slots__ = ("base", "gens", "orbit", "parent", "uinv", "checked")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[int] = []  # indices into the chain's strong generator list
        self.orbit: list[int] = [base]
        self.parent: dict[int, int] = {base: -1}
        self.uinv: dict | None = None
        self.checked: set[tuple[int, int]] = set()


class StabilizerChain:
    """A verified base and strong generating set for ``<generators>``.

    ``base`` is an optional prefix of base points; the chain always starts
    with exactly these points (possibly with trivial fundamental orbits),
    which is how point stabilizers and kernels are read off.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable = (),
        base: Sequence[int] = (),
        *,
        method: str = "deterministic",
        seed: int = 0,
        ops=None,
    ):
        self.degree = degree
        self.ops = ops if ops is not None else ops_for(degree)
        self._explicit = degree * degree <= EXPLICIT_TRANSVERSAL_LIMIT or degree < 256
        self.strong: list = []
        self.strong_inv: list = []
        self.levels: list[_Level] = []
        self._preferred = list(dict.fromkeys(int(b) for b in base))
        for b in self._preferred:
            self._push_level(b)
        gens = [self.ops.coerce(g) for g in generators]
        gens = [g for g in gens if not self.ops.is_id(g)]
        if method == "random" and gens:
            self._random_phase(gens, seed)
        else:
            for g in gens:
                h, j = self.sift(g)
                if not self.ops.is_id(h):
                    self._add_strong(h, j)
        self._complete()

    # -- construction ------------------------------------------------------

    def _push_level(self, b: int) -> _Level:
        lv = _Level(b)
        if self._explicit:
            lv.uinv = {b: self.ops.identity}
        self.levels.append(lv)
        return lv

    def _add_to_level(self, lv: _Level, gi: int) -> None:
        lv.gens.append(gi)
        k_new = len(lv.gens) - 1
        parent, orbit = lv.parent, lv.orbit
        fresh = []
        g = self.strong[gi]
        for y in list(orbit):
            z = int(g[y])
            if z not in parent:
                self._attach(lv, z, y, k_new)
                fresh.append(z)
        i = 0
        while i < len(fresh):
            y = fresh[i]
            i += 1
            for k, gj in enumerate(lv.gens):
                z = int(self.strong[gj][y])
                if z not in parent:
                    self._attach(lv, z, y, k)
                    fresh.append(z)

    def _attach(self, lv: _Level, z: int, y: int, k: int) -> None:
        lv.parent[z] = k
        lv.orbit.append(z)
        if lv.uinv is not None:
            ginv = self.strong_inv[lv.gens[k]]
            lv.uinv[z] = self.ops.mul(ginv, lv.uinv[y])

    def _add_strong(self, h, j: int) -> None:
        """Add ``h`` (fixing base points ``0..j-1``) to levels ``0..j``."""
        ops = self.ops
        if j == len(self.levels):
            if isinstance(h, np.ndarray):
                point = int(np.flatnonzero(h != ops.identity)[0])
            else:
                point = next(i for i, x in enumerate(h) if i != x)
            self._push_level(point)
        self.strong.append(h)
        self.strong_inv.append(ops.inv(h))
        gi = len(self.strong) - 1
        for lv in self.levels[: j + 1]:
            self._add_to_level(lv, gi)

    def _complete(self) -> None:
        ops = self.ops
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            found = False
            for y in list(lv.orbit):
                uy = None
                for k in range(len(lv.gens)):
                    if (y, k) in lv.checked:
                        continue
                    lv.checked.add((y, k))
                    s = self.strong[lv.gens[k]]
                    z = int(s[y])
                    if lv.parent.get(z) == k and self._tree_pred(lv, z) == y:
                        continue
                    if uy is None:
                        uy = self.transversal(i, y)
                    t = self._strip_level(ops.mul(uy, s), i)
                    h, j = self.sift(t, i + 1)
                    if not ops.is_id(h):
                        self._add_strong(h, j)
                        i = j
                        found = True
                        break
                if found:
                    break
            if not found:
                i -= 1

    def _tree_pred(self, lv: _Level, z: int) -> int:
        k = lv.parent[z]
        return int(self.strong_inv[lv.gens[k]][z])

    def _random_phase(self, gens: list, seed: int, stop_after: int = 30) -> None:
        ops = self.ops
        rng = random.Random(seed)
        pool = list(gens) * (1 if len(gens) >= 5 else (5 // len(gens) + 1))
        acc = ops.identity
        for g in gens:
            h, j = self.sift(g)
            if not ops.is_id(h):
                self._add_strong(h, j)
        quiet = 0
        while quiet < stop_after:
            a, b = rng.sample(range(len(pool)), 2)
            pool[a] = ops.mul(pool[a], pool[b]) if rng.random() < 0.5 else ops.mul(pool[b], pool[a])
            acc = ops.mul(acc, pool[a])
            h, j = self.sift(acc)
            if ops.is_id(h):
                quiet += 1
            else:
                quiet = 0
                self._add_strong(h, j)

    # -- queries -----------------------------------------------------------

    def _strip_level(self, g, i: int):
        """Multiply ``g`` by ``u_y^-1`` where ``y = g(base_i)``; ``y`` must lie in the orbit."""
        lv = self.levels[i]
        y = int(g[lv.base])
        if lv.uinv is not None:
            return self.ops.mul(g, lv.uinv[y])
        while y != lv.base:
            ginv = self.strong_inv[lv.gens[lv.parent[y]]]
            g = self.ops.mul(g, ginv)
            y = int(ginv[y])
        return g

    def sift(self, g, start: int = 0):
        """Return ``(residue, level)``; the residue is the identity iff ``g`` is in the group."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            if int(g[lv.base]) not in lv.parent:
                return g, i
            g = self._strip_level(g, i)
        return g, len(self.levels)

    def contains(self, g) -> bool:
        h, _ = self.sift(self.ops.coerce(g))
        return self.ops.is_id(h)

    def add_generator(self, g) -> bool:
        """Extend the group by ``g``; returns False when ``g`` was already a member."""
        h, j = self.sift(self.ops.coerce(g))
        if self.ops.is_id(h):
            return False
        self._add_strong(h, j)
        self._complete()
        return True

    def transversal(self, i: int, y: int):
        """An element of the level-``i`` group mapping ``base_i`` to ``y``."""
        lv = self.levels[i]
        if lv.uinv is not None:
            return self.ops.inv(lv.uinv[y])
        path = []
        while y != lv.base:
            gi = lv.gens[lv.parent[y]]
            path.append(gi)
            y = int(self.strong_inv[gi][y])
        u = self.ops.identity
        for gi in reversed(path):
            u = self.ops.mul(u, self.strong[gi])
        return u

    def order(self) -> int:
        result = 1
        for lv in self.levels:
            result *= len(lv.orbit)
        return result

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.orbit) for lv in self.levels]

    def level_generators(self, i: int) -> list:
        """Strong generators of the pointwise stabilizer of ``base[:i]``."""
        if i >= len(self.levels):
            return []
        return [self.strong[k] for k in self.levels[i].gens]

    def fundamental_orbit(self, i: int) -> list[int]:
        return list(self.levels[i].orbit)

    def canonical_coset_element(self, g):
        """The element of the right coset ``H g`` with least base-image sequence."""
        ops = self.ops
        for i, lv in enumerate(self.levels):
            if len(lv.orbit) == 1:
                continue
            y = min(lv.orbit, key=lambda z: int(g[z]))
            if y != lv.base:
                g = ops.mul(self.transversal(i, y), g)
        return g

    def elements(self) -> Iterator:
        """All group elements; intended for small groups only."""
        ops = self.ops
        reps = []
        for i, lv in enumerate(self.levels):
            reps.append([self.transversal(i, y) for y in lv.orbit])

        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for u in reps[i]:
                yield from rec(i - 1, ops.mul(acc, u))

        yield from rec(len(reps) - 1, ops.identity)

    def verify(self) -> bool:
        """Recheck every Schreier generator from scratch (independent of the build bookkeeping)."""
        ops = self.ops
        for i, lv in enumerate(self.levels):
            gens = self.level_generators(i)
            for g in gens:
                for b in self.base[:i]:
                    if int(g[b]) != b:
                        return False
            for y in lv.orbit:
                uy = self.transversal(i, y)
                if int(uy[lv.base]) != y:
                    return False
                for s in gens:
                    t = self._strip_level(ops.mul(uy, s), i)
                    h, _ = self.sift(t, i + 1)
                    if not ops.is_id(h):
                        return False
        return True
