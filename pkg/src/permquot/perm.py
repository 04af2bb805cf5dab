"""Permutations of {0, ..., n-1}.

Points are 0-based internally and 1-based in every piece of text (cycle
notation in and out).  Products apply left to right: ``(a * b)(x) == b(a(x))``.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """An immutable bijection of ``range(degree)`` stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise ValueError("degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be at least 1")
        return cls._trusted(tuple(range(degree)))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({print_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return print_cycles(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        """Least common multiple of the cycle lengths."""
        return math.lcm(1, *(len(c) for c in cycle_decomposition(self)))

    def parity(self) -> int:
        """0 for even permutations, 1 for odd ones."""
        return sum(len(c) - 1 for c in cycle_decomposition(self)) % 2

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return the permutation ``x -> b(a(x))``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return Permutation._trusted(tuple(map(b.images.__getitem__, a.images)))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * a.degree
    for i, x in enumerate(a.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``[a, b] = a^-1 b^-1 a b`` under left-to-right products."""
    return inverse(a) * inverse(b) * a * b


def conjugate(a: Permutation, g: Permutation) -> Permutation:
    """``a^g = g^-1 a g``."""
    return inverse(g) * a * g


def cycle_decomposition(a: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles (0-based), each starting at its minimum, sorted by that minimum."""
    seen = [False] * a.degree
    cycles = []
    for start in range(a.degree):
        if seen[start] or a.images[start] == start:
            continue
        cycle = [start]
        seen[start] = True
        x = a.images[start]
        while x != start:
            seen[x] = True
            cycle.append(x)
            x = a.images[x]
        cycles.append(tuple(cycle))
    return cycles


def print_cycles(a: Permutation) -> str:
    cycles = cycle_decomposition(a)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``.

    Commas are accepted as separators inside a cycle.  Cycles are multiplied
    left to right, so overlapping cycles compose in reading order.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    stripped = text.strip()
    rest = _CYCLE_RE.sub("", stripped)
    if rest.strip():
        raise ValueError(f"malformed cycle notation {text!r}: stray {rest.strip()!r}")
    result = list(range(degree))
    for body in _CYCLE_RE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        points = []
        for tok in tokens:
            if not tok.isdigit():
                raise ValueError(f"malformed point {tok!r} in {text!r}")
            p = int(tok)
            if not 1 <= p <= degree:
                raise ValueError(f"point {p} out of range 1..{degree}")
            points.append(p - 1)
        if len(set(points)) != len(points):
            raise ValueError(f"repeated point in cycle ({body})")
        cyc = list(range(degree))
        for i, p in enumerate(points):
            cyc[p] = points[(i + 1) % len(points)]
        result = [cyc[x] for x in result]
    return Permutation._trusted(tuple(result))


def from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
    """Build from 0-based cycles (disjoint)."""
    images = list(range(degree))
    for c in cycles:
        for i, p in enumerate(c):
            images[p] = c[(i + 1) % len(c)]
    return Permutation(images)
