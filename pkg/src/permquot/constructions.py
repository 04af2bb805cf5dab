"""Concrete permutation groups: classical families, wreath products, linear and semilinear groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .fields import FiniteField, field, is_prime, prime_power
from .group import PermGroup
from .perm import Permutation, from_cycles, parse_cycles

DEGREE_BUDGET = 10_000


class GroupSpecError(ValueError):
    pass


def _check_budget(n: int, budget: int) -> None:
    if n > budget:
        raise GroupSpecError(f"degree {n} exceeds budget {budget}")


# -- small families ------------------------------------------------------------


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup((), max(n, 1), name=f"S{n}")
    gens = [from_cycles([(0, 1)], n), from_cycles([tuple(range(n))], n)]
    return PermGroup(gens, n, name=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup((), max(n, 1), name=f"A{n}")
    gens = [from_cycles([(0, 1, 2)], n)]
    if n > 3:
        cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(from_cycles([cyc], n))
    return PermGroup(gens, n, name=f"A{n}")


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([from_cycles([tuple(range(n))], n)] if n > 1 else [], n, name=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on the n vertices of a polygon."""
    if n < 3:
        return PermGroup(symmetric_group(n).generators, max(n, 1), name=f"D{n}")
    rotation = from_cycles([tuple(range(n))], n)
    reflection = Permutation([(2 - x) % n for x in range(n)])
    return PermGroup([rotation, reflection], n, name=f"D{n}")


def named_group(family: str, n: int, budget: int = DEGREE_BUDGET) -> PermGroup:
    _check_budget(n, budget)
    try:
        make = {"S": symmetric_group, "A": alternating_group,
                "C": cyclic_group, "D": dihedral_group}[family]
    except KeyError:
        raise GroupSpecError(f"unknown family {family!r}") from None
    if n < 1:
        raise GroupSpecError(f"degree must be positive, got {n}")
    return make(n)


def direct_product(groups: Sequence[PermGroup]) -> PermGroup:
    """Groups acting on consecutive disjoint point ranges."""
    n = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(n))
            for x, y in enumerate(g.images):
                images[offset + x] = offset + y
            gens.append(Permutation._trusted(tuple(images)))
        offset += G.degree
    return PermGroup(gens, n)


# -- wreath products ---------------------------------------------------------------


def _top_orbit_reps(top: PermGroup) -> list[int]:
    from .structure import orbits
    return [o[0] for o in orbits(top)]


def wreath_imprimitive(bottom: PermGroup, top: PermGroup, budget: int = DEGREE_BUDGET) -> PermGroup:
    """``bottom wr top`` on ``m * r`` points; block ``j`` is ``range(j*m, (j+1)*m)``."""
    m, r = bottom.degree, top.degree
    n = m * r
    _check_budget(n, budget)
    gens = []
    for j in _top_orbit_reps(top):
        for g in bottom.generators:
            images = list(range(n))
            for i in range(m):
                images[j * m + i] = j * m + g.images[i]
            gens.append(Permutation._trusted(tuple(images)))
    for s in top.generators:
        gens.append(Permutation._trusted(
            tuple(s.images[j] * m + i for j in range(r) for i in range(m))))
    return PermGroup(gens, n)


def wreath_product_action(bottom: PermGroup, top: PermGroup, budget: int = DEGREE_BUDGET) -> PermGroup:
    """``bottom wr top`` acting on ``r``-tuples over the bottom points.

    A tuple ``(x_0, ..., x_{r-1})`` is the point ``sum(x_j * m**j)``.
    """
    m, r = bottom.degree, top.degree
    n = m**r
    _check_budget(n, budget)
    powers = [m**j for j in range(r)]
    points = list(itertools.product(range(m), repeat=r))  # last coordinate varies fastest
    index = [sum(x * pw for x, pw in zip(t, powers)) for t in points]
    gens = []
    for j in _top_orbit_reps(top):
        for g in bottom.generators:
            images = [0] * n
            for t, idx in zip(points, index):
                images[idx] = idx + (g.images[t[j]] - t[j]) * powers[j]
            gens.append(Permutation._trusted(tuple(images)))
    for s in top.generators:
        images = [0] * n
        for t, idx in zip(points, index):
            images[idx] = sum(t[j] * powers[s.images[j]] for j in range(r))
        gens.append(Permutation._trusted(tuple(images)))
    return PermGroup(gens, n)


# -- Sylow subgroups of symmetric groups ---------------------------------------------


def _iterated_wreath(p: int, k: int) -> PermGroup:
    G = cyclic_group(p)
    for _ in range(k - 1):
        G = wreath_imprimitive(G, cyclic_group(p))
    return G


def sylow_of_symmetric(n: int, p: int) -> PermGroup:
    """A Sylow p-subgroup of S_n: per base-p digit n_k, n_k copies of C_p wr ... wr C_p (k factors)."""
    if not is_prime(p):
        raise GroupSpecError(f"{p} is not prime")
    if n < 1:
        raise GroupSpecError("n must be positive")
    parts = []
    k, rest = 0, n
    digits = []
    while rest:
        digits.append(rest % p)
        rest //= p
    for k, d in enumerate(digits):
        for _ in range(d):
            parts.append(_iterated_wreath(p, k) if k else PermGroup((), 1))
    G = direct_product(parts)
    G.name = f"Syl{p}(S{n})"
    return G


# -- matrices -----------------------------------------------------------------------


Matrix = tuple  # tuple of row tuples of field elements


@dataclass
class MatrixGroup:
    dimension: int
    field: FiniteField
    generators: list[Matrix] = dc_field(default_factory=list)
    name: str | None = None

    def __post_init__(self):
        for M in self.generators:
            if len(M) != self.dimension or any(len(row) != self.dimension for row in M):
                raise ValueError("generator has the wrong shape")
            if determinant(M, self.field) == 0:
                raise ValueError("generator is singular")

    def closure_order(self, limit: int = 200_000) -> int:
        """Order by brute-force closure over matrices (small groups only)."""
        ident = identity_matrix(self.dimension)
        seen = {ident}
        todo = [ident]
        for A in todo:
            for M in self.generators:
                B = mat_mul(A, M, self.field)
                if B not in seen:
                    seen.add(B)
                    todo.append(B)
                    if len(seen) > limit:
                        raise ValueError("closure limit exceeded")
        return len(seen)


def identity_matrix(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def mat_mul(A: Matrix, B: Matrix, F: FiniteField) -> Matrix:
    d = len(A)
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            s = 0
            for k in range(d):
                s = F.add(s, F.mul(A[i][k], B[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def determinant(M: Matrix, F: FiniteField) -> int:
    rows = [list(r) for r in M]
    d = len(rows)
    det = 1
    for c in range(d):
        piv = next((r for r in range(c, d) if rows[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for r in range(c + 1, d):
            f = F.mul(rows[r][c], inv)
            if f:
                rows[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[r], rows[c])]
    return det


def vec_mat(v: Sequence[int], M: Matrix, F: FiniteField) -> tuple[int, ...]:
    d = len(M)
    out = [0] * d
    for i, vi in enumerate(v):
        if vi:
            row = M[i]
            for j in range(d):
                out[j] = F.add(out[j], F.mul(vi, row[j]))
    return tuple(out)


def _encode(v: Sequence[int], q: int) -> int:
    a = 0
    for c in reversed(v):
        a = a * q + c
    return a


def _decode(a: int, q: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(a % q)
        a //= q
    return tuple(out)


def rank_mod_p(vectors: Sequence[Sequence[int]], p: int) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] % p:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def companion_matrix(coeffs: Sequence[int], F: FiniteField) -> Matrix:
    """Multiplication by x on F[x]/(x^d + c_{d-1} x^{d-1} + ... + c_0), acting on row vectors."""
    d = len(coeffs)
    rows = []
    for i in range(d - 1):
        rows.append(tuple(int(j == i + 1) for j in range(d)))
    rows.append(tuple(F.neg(c) for c in coeffs))
    return tuple(rows)


def _poly_order(coeffs: Sequence[int], p: int) -> int:
    """Multiplicative order of x modulo the monic polynomial (0 if x is not a unit)."""
    if coeffs[0] % p == 0:
        return 0
    d = len(coeffs)
    F = field(p)
    C = companion_matrix(coeffs, F)
    v = tuple(int(j == 0) for j in range(d))
    start, n = v, 0
    limit = p**d
    while True:
        v = vec_mat(v, C, F)
        n += 1
        if v == start:
            return n
        if n > limit:
            return 0


@lru_cache(maxsize=None)
def primitive_polynomial(d: int, p: int) -> tuple[int, ...]:
    """Least (lexicographic from the top coefficient) monic primitive polynomial of degree d."""
    for coeffs in itertools.product(range(p), repeat=d):
        coeffs = tuple(reversed(coeffs))
        if _poly_order(coeffs, p) == p**d - 1:
            return coeffs
    raise ValueError(f"no primitive polynomial of degree {d} over GF({p})")


def gl_generators(d: int, p: int) -> MatrixGroup:
    """GL(d, p) generated by a Singer cycle and one transvection (a primitive scalar when d = 1)."""
    if not is_prime(p):
        raise GroupSpecError(f"GL(d, p) needs a prime p, got {p}")
    if d < 1:
        raise GroupSpecError("dimension must be positive")
    F = field(p)
    if d == 1:
        gens = [((F.primitive,),)] if p > 2 else []
        return MatrixGroup(1, F, gens, name=f"GL(1,{p})")
    singer = companion_matrix(primitive_polynomial(d, p), F)
    transvection = tuple(tuple(int(i == j or (i == 0 and j == 1)) for j in range(d)) for i in range(d))
    return MatrixGroup(d, F, [singer, transvection], name=f"GL({d},{p})")


def semilinear_matrices(q: int) -> MatrixGroup:
    """GammaL(1, q) as k x k matrices over GF(p): multiplication by the primitive element and Frobenius."""
    F = field(q)
    p, k = F.p, F.k
    Fp = field(p)
    basis = [p**i for i in range(k)]  # the field elements x^i
    mult = tuple(tuple(F.digits(F.mul(F.primitive, b))) for b in basis)
    gens = [mult]
    if k > 1:
        frob = tuple(tuple(F.digits(F.frobenius(b))) for b in basis)
        gens.append(frob)
    return MatrixGroup(k, Fp, gens, name=f"GammaL(1,{q})")


MODES = ("nonzero", "all", "affine", "projective")


def matrix_to_perm(M: MatrixGroup, mode: str = "nonzero", budget: int = DEGREE_BUDGET) -> PermGroup:
    """Permutation image of a matrix group on vectors (row-vector action ``v -> v M``).

    Vectors are numbered ``sum(v_i * q**i)``; in ``nonzero`` mode point ``i``
    is vector ``i + 1``.  ``affine`` adjoins the translations by the standard
    basis vectors; ``projective`` acts on vectors whose first nonzero
    coordinate is 1.
    """
    if mode not in MODES:
        raise GroupSpecError(f"unknown matrix action mode {mode!r}")
    F, d = M.field, M.dimension
    q = F.q
    size = q**d
    _check_budget(size, budget)
    vectors = [_decode(a, q, d) for a in range(size)]
    if mode == "projective":
        reps = [v for v in vectors if any(v) and v[next(i for i, c in enumerate(v) if c)] == 1]
        pos = {v: i for i, v in enumerate(reps)}

        def normalize(v):
            lead = next(c for c in v if c)
            inv = F.inv(lead)
            return tuple(F.mul(inv, c) for c in v)

        gens = [Permutation([pos[normalize(vec_mat(v, A, F))] for v in reps]) for A in M.generators]
        return PermGroup(gens, len(reps), name=M.name)
    offset = 1 if mode == "nonzero" else 0
    gens = []
    for A in M.generators:
        gens.append(Permutation([_encode(vec_mat(v, A, F), q) - offset for v in vectors[offset:]]))
    if mode == "affine":
        for i in range(d):
            e = tuple(int(j == i) for j in range(d))
            gens.append(Permutation([_encode(tuple(F.add(a, b) for a, b in zip(v, e)), q)
                                     for v in vectors]))
    return PermGroup(gens, size - offset, name=M.name)


def is_irreducible_on_vectors(G: PermGroup, p: int, d: int, offset: int = 0) -> bool:
    """Whether the linear group behind ``G`` (points = vectors over GF(p)) has no proper invariant subspace.

    Every nonzero vector's orbit must span the whole space.
    """
    from .structure import orbits
    for orb in orbits(G):
        v = orb[0] + offset
        if v == 0:
            continue
        if rank_mod_p([_decode(x + offset, p, d) for x in orb], p) < d:
            return False
    return True


# -- semilinear, affine and projective groups -------------------------------------------


def semilinear_group(q: int) -> PermGroup:
    """GammaL(1, q) on the q field elements; order k (q - 1)."""
    F = _tabled_field(q)
    gens = [Permutation([F.mul(F.primitive, x) for x in range(q)])]
    if F.k > 1:
        gens.append(Permutation([F.frobenius(x) for x in range(q)]))
    return PermGroup(gens, q, name=f"Gamma({q})")


def agl1(q: int, semilinear: bool = False) -> PermGroup:
    """AGL(1, q) (or AGammaL(1, q)) on the q field elements."""
    F = _tabled_field(q)
    gens = [Permutation([F.mul(F.primitive, x) for x in range(q)]),
            Permutation([F.add(x, 1) for x in range(q)])]
    if semilinear and F.k > 1:
        gens.append(Permutation([F.frobenius(x) for x in range(q)]))
    return PermGroup(gens, q, name=("AGammaL" if semilinear else "AGL") + f"(1,{q})")


def _projective_line(q: int, kind: str) -> PermGroup:
    F = _tabled_field(q)
    inf = q
    translation = Permutation([F.add(x, 1) for x in range(q)] + [inf])
    scalar = F.primitive if (kind != "PSL" or q % 2 == 0) else F.mul(F.primitive, F.primitive)
    scaling = Permutation([F.mul(scalar, x) for x in range(q)] + [inf])
    inversion = Permutation([inf] + [F.neg(F.inv(x)) for x in range(1, q)] + [0])
    gens = [translation, scaling, inversion]
    if kind == "PGammaL" and F.k > 1:
        gens.append(Permutation([F.frobenius(x) for x in range(q)] + [inf]))
    return PermGroup(gens, q + 1, name=f"{kind}(2,{q})")


def psl2(q: int) -> PermGroup:
    return _projective_line(q, "PSL")


def pgl2(q: int) -> PermGroup:
    return _projective_line(q, "PGL")


def pgammal2(q: int) -> PermGroup:
    return _projective_line(q, "PGammaL")


def _tabled_field(q: int) -> FiniteField:
    try:
        return field(q)
    except ValueError as exc:
        raise GroupSpecError(str(exc)) from None


# -- the extremal examples -------------------------------------------------------------


@dataclass
class Example:
    name: str
    group: PermGroup
    vector_space_size: int
    expected_order: int
    note: str = ""


def gl23() -> MatrixGroup:
    return gl_generators(2, 3)


def sd16_matrices() -> MatrixGroup:
    M = semilinear_matrices(9)
    M.name = "SD16"
    return M


def gl23_wr_s4_imprimitive() -> PermGroup:
    G = wreath_imprimitive(matrix_to_perm(gl23(), "nonzero"), symmetric_group(4))
    G.name = "GL(2,3) wr S4 (32 points)"
    return G


def gl23_wr_s4_product() -> PermGroup:
    G = wreath_product_action(matrix_to_perm(gl23(), "all"), symmetric_group(4))
    G.name = "GL(2,3) wr S4 on F_3^8 (6561 points)"
    return G


def affine_extremal() -> PermGroup:
    """Translations of F_3^8 extended by the 6561-point linear wreath product.

    Point ``i`` is the vector of base-3 digits of ``i``; one translation
    suffices because the linear part is irreducible.
    """
    H = gl23_wr_s4_product()
    n = H.degree
    translation = Permutation([i - i % 3 + (i + 1) % 3 for i in range(n)])
    G = PermGroup(H.generators + (translation,), n, name="F_3^8 : (GL(2,3) wr S4)")
    return G


WREATH_ORDER = 48**4 * 24

EXTREMAL_NAMES = ("SD16_in_GL23", "Gamma9", "GL23_wr_S4_imprimitive32",
                  "GL23_wr_S4_product6561", "affine_extremal_6561")


def extremal_example(name: str) -> Example:
    if name == "SD16_in_GL23":
        return Example(name, matrix_to_perm(sd16_matrices(), "nonzero"), 9, 16,
                       "Sylow 2-subgroup of GL(2,3) on the 8 nonzero vectors of F_3^2")
    if name == "Gamma9":
        return Example(name, semilinear_group(9), 9, 16, "GammaL(1,9) on F_9")
    if name == "GL23_wr_S4_imprimitive32":
        return Example(name, gl23_wr_s4_imprimitive(), 3**8, WREATH_ORDER,
                       "imprimitive action on 4 blocks of nonzero vectors")
    if name == "GL23_wr_S4_product6561":
        return Example(name, gl23_wr_s4_product(), 3**8, WREATH_ORDER,
                       "linear action on all vectors of F_3^8")
    if name == "affine_extremal_6561":
        return Example(name, affine_extremal(), 3**8, 3**8 * WREATH_ORDER,
                       "affine group on F_3^8")
    raise GroupSpecError(f"unknown extremal example {name!r}")


def extremal_examples() -> dict[str, Example]:
    return {name: extremal_example(name) for name in EXTREMAL_NAMES}


_EXTREMAL_ALIASES = {
    "sd16": "SD16_in_GL23", "gamma9": "Gamma9", "imprimitive32": "GL23_wr_S4_imprimitive32",
    "product6561": "GL23_wr_S4_product6561", "affine6561": "affine_extremal_6561",
}


# -- group-spec strings -----------------------------------------------------------------


@dataclass
class GroupSpec:
    text: str
    group: PermGroup
    vector_space_size: int | None = None


def _int(tok: str, spec: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GroupSpecError(f"bad integer {tok!r} in group spec {spec!r}") from None


def read_group_file(path: str | Path) -> PermGroup:
    """A ``degree N`` header line followed by one cycle-notation generator per line."""
    degree = None
    gens = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            head = line.replace(":", " ").split()
            if len(head) != 2 or head[0].lower() != "degree" or not head[1].isdigit():
                raise GroupSpecError(f"{path}:{lineno}: expected 'degree N' header, got {line!r}")
            degree = int(head[1])
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except ValueError as exc:
            raise GroupSpecError(f"{path}:{lineno}: {exc}") from None
    if degree is None:
        raise GroupSpecError(f"{path}: missing 'degree N' header")
    return PermGroup(gens, degree, name=f"file:{path}")


def parse_group_spec(spec: str, budget: int = DEGREE_BUDGET) -> GroupSpec:
    text = spec.strip()
    if text.startswith("file:"):
        return GroupSpec(text, read_group_file(text[5:]))
    if text.startswith("wr:"):
        body = text[3:]
        if "|" not in body:
            raise GroupSpecError(f"wreath spec {spec!r} needs 'bottom|top'")
        bottom_txt, top_txt = body.split("|", 1)
        action = "imprimitive"
        for suffix in ("imprimitive", "product"):
            if top_txt.endswith(":" + suffix):
                action, top_txt = suffix, top_txt[: -len(suffix) - 1]
        bottom = parse_group_spec(bottom_txt, budget).group
        top = parse_group_spec(top_txt, budget).group
        build = wreath_imprimitive if action == "imprimitive" else wreath_product_action
        G = build(bottom, top, budget)
        G.name = text
        return GroupSpec(text, G)
    head, *args = text.split(":")
    if head in ("S", "A", "C", "D"):
        if len(args) != 1:
            raise GroupSpecError(f"{head} expects one argument in {spec!r}")
        return GroupSpec(text, named_group(head, _int(args[0], spec), budget))
    if head == "SylS":
        if len(args) != 2:
            raise GroupSpecError(f"SylS expects n:p in {spec!r}")
        return GroupSpec(text, sylow_of_symmetric(_int(args[0], spec), _int(args[1], spec)))
    if head == "GL":
        if len(args) not in (2, 3):
            raise GroupSpecError(f"GL expects d:p[:mode] in {spec!r}")
        d, p = _int(args[0], spec), _int(args[1], spec)
        mode = args[2] if len(args) == 3 else "nonzero"
        if mode not in MODES:
            raise GroupSpecError(f"unknown token {mode!r} in {spec!r}")
        G = matrix_to_perm(gl_generators(d, p), mode, budget)
        G.name = text
        return GroupSpec(text, G, p**d)
    one_arg = {"AGL1": agl1, "AGammaL1": lambda q: agl1(q, semilinear=True),
               "Gamma": semilinear_group, "PSL2": psl2, "PGL2": pgl2, "PGammaL2": pgammal2}
    if head in one_arg:
        if len(args) != 1:
            raise GroupSpecError(f"{head} expects one argument in {spec!r}")
        q = _int(args[0], spec)
        if prime_power(q) is None:
            raise GroupSpecError(f"{args[0]!r} is not a prime power in {spec!r}")
        G = one_arg[head](q)
        return GroupSpec(text, G, q if head == "Gamma" else None)
    if head == "extremal":
        if len(args) != 1:
            raise GroupSpecError(f"extremal expects a name in {spec!r}")
        name = _EXTREMAL_ALIASES.get(args[0].lower(), args[0])
        ex = extremal_example(name)
        return GroupSpec(text, ex.group, ex.vector_space_size)
    raise GroupSpecError(f"unknown token {head!r} in group spec {spec!r}")
