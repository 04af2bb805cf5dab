"""Small finite fields GF(p^k) with table-driven arithmetic.

An element is an integer in ``range(q)`` whose base-p digits are the
coefficients of a polynomial in the generator ``x`` (least significant digit
is the constant term).  The same integer doubles as the index of the
corresponding coordinate vector over GF(p), so field elements and vectors
of GF(p)^k share one point labelling.
"""

from __future__ import annotations

from functools import lru_cache

# Conway polynomials, coefficients from the constant term up (monic, leading 1 omitted).
CONWAY = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (2, 6): (1, 1, 0, 1, 1, 0),
    (2, 7): (1, 1, 0, 0, 0, 0, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (3, 4): (2, 0, 0, 2),
    (5, 2): (2, 4),
    (5, 3): (3, 3, 0),
    (7, 2): (3, 6),
    (11, 2): (2, 7),
}

TABLED_ORDERS = sorted(p**k for p, k in CONWAY)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = [r for r in primes_up_to(p - 1) if (p - 1) % r == 0]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


class FiniteField:
    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        p, k = pk
        if k > 1 and (p, k) not in CONWAY:
            raise ValueError(f"no tabled modulus for GF({q})")
        self.p, self.k, self.q = p, k, q
        self.modulus = CONWAY.get((p, k))
        self._digits = [self._to_digits(a) for a in range(q)]
        self.add_table = [[self._from_digits([(x + y) % p for x, y in zip(da, db)])
                           for db in self._digits] for da in self._digits]
        self.neg_table = [self._from_digits([(-x) % p for x in d]) for d in self._digits]
        self.mul_table = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break
        self.primitive = p if k > 1 else primitive_root(p)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def _to_digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, d) -> int:
        a = 0
        for c in reversed(d):
            a = a * self.p + c
        return a

    def _mul_slow(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        da, db = self._to_digits(a), self._to_digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce with x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1})
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return self._from_digits(prod[:k])

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def power(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def digits(self, a: int) -> list[int]:
        return list(self._digits[a])

    def squares(self) -> list[int]:
        return sorted({self.mul(a, a) for a in range(1, self.q)})


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)
