"""The quotient-bound constants and certified comparisons against exact indices.

The constants

    beta   = log 32 / log 9
    alpha  = (3 log 48 + log 24) / (3 log 9)
    lambda = 24 ** (1/3)

are irrational, but several bounds evaluated at powers of 9 are exact
integers (9**beta == 32, 9**alpha == 48 * 24**(1/3), lambda**3 == 24).  The
sharpness examples sit exactly on such bounds, so comparisons are done with
outward-rounded intervals, a precision ladder, and finally exact rational
arithmetic when an exact closed form exists.
"""

from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from functools import lru_cache

from mpmath import iv
from mpmath.libmp import to_rational

from .fields import is_prime

BETA_EXPR = "log(32)/log(9)"
ALPHA_EXPR = "(3*log(48) + log(24))/(3*log(9))"
LAMBDA_EXPR = "24**(1/3)"
PRECISION_LADDER = (60, 200, 1000)
GAMMA_EXCEPTIONS = frozenset({(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)})


class AmbiguousComparison(ArithmeticError):
    """Intervals overlapped at every precision and no exact form was available."""


@contextmanager
def working_digits(digits: int):
    """Run mpmath interval arithmetic at ``digits`` significant digits plus guard digits.

    mpmath keeps the interval precision in global state, so this is not
    thread-safe; campaigns parallelize with processes.
    """
    old = iv.prec
    iv.dps = digits + 10
    try:
        yield
    finally:
        iv.prec = old


@dataclass(frozen=True)
class BoundConstants:
    digits: int
    beta: object
    alpha: object
    lam: object
    log2: object
    log_lam: object

    expressions = {"beta": BETA_EXPR, "alpha": ALPHA_EXPR, "lambda": LAMBDA_EXPR}


@lru_cache(maxsize=None)
def constants(digits: int = 60) -> BoundConstants:
    with working_digits(digits):
        log9 = iv.log(9)
        beta = iv.log(32) / log9
        alpha = (3 * iv.log(48) + iv.log(24)) / (3 * log9)
        log_lam = iv.log(24) / 3
        lam = iv.exp(log_lam)
        return BoundConstants(digits, beta, alpha, lam, iv.log(2), log_lam)


class BoundKind(str, enum.Enum):
    T1_NILPOTENT = "T1_nilpotent"          # n^beta / 2
    T1_SOLVABLE = "T1_solvable"            # n^(alpha+1) / lambda
    T2_NILPOTENT = "T2_nilpotent"          # 2^(n-1)
    T2_SOLVABLE = "T2_solvable"            # lambda^(n-1)
    T3_NILPOTENT = "T3_nilpotent"          # |V|^beta / 2
    T3_SOLVABLE = "T3_solvable"            # |V|^alpha / lambda
    PRIMITIVE_SOLVABLE = "primitive_solvable"  # lambda^(n-1)

    def __str__(self) -> str:
        return self.value


_FORMULAS = {
    BoundKind.T1_NILPOTENT: "{n}^beta/2",
    BoundKind.T1_SOLVABLE: "{n}^(alpha+1)/lambda",
    BoundKind.T2_NILPOTENT: "2^({n}-1)",
    BoundKind.T2_SOLVABLE: "lambda^({n}-1)",
    BoundKind.T3_NILPOTENT: "{n}^beta/2",
    BoundKind.T3_SOLVABLE: "{n}^alpha/lambda",
    BoundKind.PRIMITIVE_SOLVABLE: "lambda^({n}-1)",
}


@dataclass(frozen=True)
class BoundExpr:
    kind: BoundKind
    size: int

    def __post_init__(self):
        object.__setattr__(self, "kind", BoundKind(self.kind))
        if self.size < 1:
            raise ValueError("bound size must be at least 1")

    def __str__(self) -> str:
        return _FORMULAS[self.kind].format(n=self.size)

    def log_interval(self, digits: int = 60):
        c = constants(digits)
        n = self.size
        with working_digits(digits):
            logn = iv.log(n)
            k = self.kind
            if k in (BoundKind.T1_NILPOTENT, BoundKind.T3_NILPOTENT):
                return c.beta * logn - c.log2
            if k is BoundKind.T1_SOLVABLE:
                return (c.alpha + 1) * logn - c.log_lam
            if k is BoundKind.T3_SOLVABLE:
                return c.alpha * logn - c.log_lam
            if k is BoundKind.T2_NILPOTENT:
                return (n - 1) * c.log2
            return (n - 1) * c.log_lam

    def enclosure(self, digits: int = 60):
        log_value = self.log_interval(digits)
        with working_digits(digits):
            return iv.exp(log_value)


def _nine_power(n: int) -> int | None:
    k = 0
    while n > 1 and n % 9 == 0:
        n //= 9
        k += 1
    return k if n == 1 else None


def exact_bound_value(expr: BoundExpr) -> Fraction | None:
    """The bound as an exact rational when a closed form exists, else None."""
    n, kind = expr.size, expr.kind
    if kind is BoundKind.T2_NILPOTENT:
        return Fraction(2 ** (n - 1))
    if kind in (BoundKind.T2_SOLVABLE, BoundKind.PRIMITIVE_SOLVABLE):
        return Fraction(24 ** ((n - 1) // 3)) if (n - 1) % 3 == 0 else None
    k = _nine_power(n)
    if k is None:
        return None
    if kind in (BoundKind.T1_NILPOTENT, BoundKind.T3_NILPOTENT):
        return Fraction(32**k, 2)
    if k % 3 != 1:
        return None
    value = Fraction(48**k * 24 ** ((k - 1) // 3))  # 9^(k alpha) / lambda
    return value * n if kind is BoundKind.T1_SOLVABLE else value


def _raw_to_fraction(raw) -> Fraction:
    p, q = to_rational(raw)
    return Fraction(int(p), int(q))


def interval_strings(x, digits: int) -> tuple[str, str]:
    """Outward-rounded decimal strings for the endpoints of an mpmath interval."""
    lo, hi = (_raw_to_fraction(r) for r in x._mpi_)
    floor = Context(prec=digits, rounding=ROUND_FLOOR)
    ceil = Context(prec=digits, rounding=ROUND_CEILING)
    lo_d = floor.divide(Decimal(lo.numerator), Decimal(lo.denominator))
    hi_d = ceil.divide(Decimal(hi.numerator), Decimal(hi.denominator))
    return str(lo_d), str(hi_d)


def fraction_string(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def serialize_bound(expr: BoundExpr, digits: int = 60) -> dict:
    exact = exact_bound_value(expr)
    lo, hi = interval_strings(expr.enclosure(digits), digits)
    return {"expr": str(expr), "exact": fraction_string(exact) if exact is not None else None,
            "lo": lo, "hi": hi, "digits": digits}


@dataclass(frozen=True)
class Verdict:
    """Outcome of ``index <= bound``; margin is log(bound) - log(index)."""

    outcome: str  # "pass", "exact_equality" or "fail"
    margin_lo: str
    margin_hi: str
    digits: int
    exact: bool

    @property
    def ok(self) -> bool:
        return self.outcome != "fail"

    @property
    def margin(self) -> str:
        return self.margin_lo if self.margin_lo == self.margin_hi else f"[{self.margin_lo}, {self.margin_hi}]"

    def as_dict(self) -> dict:
        return {"outcome": self.outcome, "margin_lo": self.margin_lo, "margin_hi": self.margin_hi,
                "digits": self.digits, "exact": self.exact}


def compare_index_to_bound(index: int, expr: BoundExpr,
                           ladder: tuple[int, ...] = PRECISION_LADDER) -> Verdict:
    """Certified comparison of an exact index with a bound.

    Intervals decide whenever they separate; otherwise the precision climbs
    the ladder, then the exact closed form is tried.  Equality is only ever
    reported from the exact path.
    """
    index = int(index)
    if index < 1:
        raise ValueError("index must be positive")
    margin = None
    digits = ladder[0]
    for digits in ladder:
        log_bound = expr.log_interval(digits)
        with working_digits(digits):
            margin = log_bound - iv.log(index)
        lo, hi = interval_strings(margin, min(digits, 30))
        if margin.a > 0:
            return Verdict("pass", lo, hi, digits, False)
        if margin.b < 0:
            return Verdict("fail", lo, hi, digits, False)
    exact = exact_bound_value(expr)
    if exact is None:
        raise AmbiguousComparison(f"cannot separate {index} from {expr} at {digits} digits")
    lo, hi = interval_strings(margin, 30)
    if Fraction(index) == exact:
        return Verdict("exact_equality", "0", "0", digits, True)
    return Verdict("pass" if Fraction(index) < exact else "fail", lo, hi, digits, True)


def compare_value_to_bound(value: int, expr: BoundExpr, **kw) -> Verdict:
    """Same comparison for any positive integer quantity (not necessarily an index)."""
    return compare_index_to_bound(value, expr, **kw)


# -- Sylow orders of symmetric groups ------------------------------------------------


def base_digits(n: int, p: int) -> list[int]:
    digits = []
    while n:
        digits.append(n % p)
        n //= p
    return digits


def nu(n: int, p: int) -> int:
    """Exponent of p in |S_n| from the base-p digits of n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    return sum(d * (p**i - 1) // (p - 1) for i, d in enumerate(base_digits(n, p)))


def legendre_valuation(n: int, p: int) -> int:
    """Exponent of p in n! by Legendre's formula."""
    total, pk = 0, p
    while pk <= n:
        total += n // pk
        pk *= p
    return total


def digit_inequality(p: int, i: int, n_i: int) -> bool:
    """``p^(n_i (p^i-1)/(p-1)) <= 2^(n_i (p^i-1)) <= 2^(n_i p^i - 1)`` in exact integers."""
    left = p ** (n_i * (p**i - 1) // (p - 1))
    middle = 2 ** (n_i * (p**i - 1))
    right = 2 ** (n_i * p**i - 1)
    return left <= middle <= right


# -- the Gamma(V) inequality -----------------------------------------------------------


@dataclass(frozen=True)
class GammaCheck:
    p: int
    n: int
    value: int  # n (p^n - 1), a bound for |Gamma(p^n)|
    alpha: Verdict
    beta: Verdict
    listed: bool

    @property
    def consistent(self) -> bool:
        """The alpha claim holds, and the beta claim holds exactly off the listed exceptions."""
        if not self.alpha.ok:
            return False
        if self.listed:
            return self.beta.outcome in ("fail", "exact_equality")
        return self.beta.outcome == "pass"


def gamma_remark_check(p: int, n: int, ladder=PRECISION_LADDER) -> GammaCheck:
    value = n * (p**n - 1)
    size = p**n
    a = compare_value_to_bound(value, BoundExpr(BoundKind.T3_SOLVABLE, size), ladder=ladder)
    b = compare_value_to_bound(value, BoundExpr(BoundKind.T3_NILPOTENT, size), ladder=ladder)
    return GammaCheck(p, n, value, a, b, (p, n) in GAMMA_EXCEPTIONS)
