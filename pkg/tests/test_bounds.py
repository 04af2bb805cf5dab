from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from permquot.bounds import (GAMMA_EXCEPTIONS, AmbiguousComparison, BoundExpr, BoundKind, compare_index_to_bound,
                             constants, digit_inequality, exact_bound_value, gamma_remark_check,
                             interval_strings, legendre_valuation, nu, serialize_bound)
from permquot.fields import primes_up_to

mp.dps = 120


def float_bound(kind: BoundKind, n: int):
    """Plain 120-digit evaluation of each formula, written independently of the library."""
    beta = mp.log(32) / mp.log(9)
    alpha = (3 * mp.log(48) + mp.log(24)) / (3 * mp.log(9))
    lam = mp.cbrt(24)
    return {
        BoundKind.T1_NILPOTENT: mpf(n) ** beta / 2,
        BoundKind.T3_NILPOTENT: mpf(n) ** beta / 2,
        BoundKind.T1_SOLVABLE: mpf(n) ** (alpha + 1) / lam,
        BoundKind.T3_SOLVABLE: mpf(n) ** alpha / lam,
        BoundKind.T2_NILPOTENT: mpf(2) ** (n - 1),
        BoundKind.T2_SOLVABLE: lam ** (n - 1),
        BoundKind.PRIMITIVE_SOLVABLE: lam ** (n - 1),
    }[kind]


def test_constant_enclosures():
    c = constants(60)
    for x, centre in ((c.beta, 1.5774), (c.alpha, 2.2440), (c.lam, 2.8845)):
        lo, hi = (float(s) for s in interval_strings(x, 30))
        assert centre - 1e-4 <= lo <= hi <= centre + 1e-4
        assert hi - lo < 1e-50


def test_exact_identities_inside_enclosures():
    assert exact_bound_value(BoundExpr("T3_nilpotent", 9)) == 16
    assert exact_bound_value(BoundExpr("T3_solvable", 9)) == 48
    assert exact_bound_value(BoundExpr("T2_solvable", 4)) == 24
    assert exact_bound_value(BoundExpr("T3_solvable", 3**8)) == 48**4 * 24 == 127401984
    assert exact_bound_value(BoundExpr("T2_nilpotent", 6)) == 32
    assert exact_bound_value(BoundExpr("T3_nilpotent", 81)) == 512
    assert exact_bound_value(BoundExpr("T1_solvable", 3**8)) == 3**8 * 48**4 * 24
    assert exact_bound_value(BoundExpr("T3_solvable", 81)) is None
    assert exact_bound_value(BoundExpr("T2_solvable", 5)) is None
    assert exact_bound_value(BoundExpr("T1_nilpotent", 10)) is None


EXPONENTIAL = {BoundKind.T2_NILPOTENT, BoundKind.T2_SOLVABLE, BoundKind.PRIMITIVE_SOLVABLE}


CASES = [(kind, n) for kind in BoundKind for n in (1, 2, 4, 7, 9, 10, 81, 730, 6561, 9**7, 3**8 + 1)
         if kind not in EXPONENTIAL or n <= 1000]


@pytest.mark.parametrize("kind, n", CASES)
def test_enclosures_contain_reference_and_exact_values(kind, n):
    expr = BoundExpr(kind, n)
    s = serialize_bound(expr, 40)
    lo, hi = Decimal(s["lo"]), Decimal(s["hi"])
    ref = Decimal(mp.nstr(float_bound(kind, n), 60))
    assert lo <= hi
    assert abs(ref - lo) <= abs(ref) * Decimal("1e-38") + (hi - lo) and abs(hi - ref) <= abs(ref) * Decimal("1e-38") + (hi - lo)
    exact = exact_bound_value(expr)
    if exact is not None:
        assert Fraction(lo) <= exact <= Fraction(hi)
        assert s["exact"] == (str(exact.numerator) if exact.denominator == 1 else f"{exact.numerator}/{exact.denominator}")


def test_comparison_examples():
    assert compare_index_to_bound(16, BoundExpr("T3_nilpotent", 9)).outcome == "exact_equality"
    assert compare_index_to_bound(48, BoundExpr("T3_solvable", 9)).outcome == "exact_equality"
    v = compare_index_to_bound(20, BoundExpr("primitive_solvable", 5))
    assert v.outcome == "pass" and not v.exact
    assert compare_index_to_bound(17, BoundExpr("T3_nilpotent", 9)).outcome == "fail"
    assert compare_index_to_bound(15, BoundExpr("T3_nilpotent", 9)).outcome == "pass"
    assert compare_index_to_bound(24, BoundExpr("T2_solvable", 4)).outcome == "exact_equality"


def test_equality_needs_the_exact_path():
    expr = BoundExpr("T3_nilpotent", 9)
    assert compare_index_to_bound(16, expr, ladder=(5,)).outcome == "exact_equality"
    with pytest.raises(ValueError):
        compare_index_to_bound(0, expr)


def test_ambiguous_without_exact_form(monkeypatch):
    import permquot.bounds as b
    monkeypatch.setattr(b, "exact_bound_value", lambda expr: None)
    with pytest.raises(AmbiguousComparison):
        b.compare_index_to_bound(16, BoundExpr("T3_nilpotent", 9))


@given(st.integers(1, 10**6), st.sampled_from(list(BoundKind)), st.integers(1, 3000))
def test_verdict_agrees_with_reference(index, kind, n):
    v = compare_index_to_bound(index, BoundExpr(kind, n))
    ref = float_bound(kind, n)
    exact = exact_bound_value(BoundExpr(kind, n))
    if exact is not None and Fraction(index) == exact:
        assert v.outcome == "exact_equality"
    elif index < ref:
        assert v.outcome == "pass"
    else:
        assert v.outcome == "fail"
    assert v.outcome != "exact_equality" or v.exact


def test_nu_examples():
    assert nu(6, 2) == 4
    assert all(nu(p, p) == 1 for p in primes_up_to(50))
    assert nu(9, 3) == 4
    with pytest.raises(ValueError):
        nu(6, 4)


def test_nu_matches_legendre_and_bound():
    for p in primes_up_to(50):
        for n in range(1, 201):
            e = nu(n, p)
            assert e == legendre_valuation(n, p)
            assert p**e <= 2 ** (n - 1)


def test_digit_inequality_examples():
    assert digit_inequality(2, 1, 1)
    assert digit_inequality(3, 2, 2)
    assert digit_inequality(5, 1, 4)
    for p in primes_up_to(50):
        i = 1
        while p**i <= 200:
            for d in range(1, p):
                assert digit_inequality(p, i, d)
            i += 1


def test_gamma_examples():
    g = gamma_remark_check(2, 3)
    assert g.value == 21 and g.beta.outcome == "fail" and g.listed
    g = gamma_remark_check(5, 2)
    assert g.value == 48 and g.beta.outcome == "pass"
    g = gamma_remark_check(3, 2)
    assert g.beta.outcome == "exact_equality" and g.listed and g.consistent
    g = gamma_remark_check(2, 4)
    assert g.value == 60 and g.beta.outcome == "fail"


def test_gamma_p2_n6_beta_fails_outside_the_list():
    # 6 * 63 = 378 against 2^(6 beta)/2 ~ 353.1: the beta form fails although (2, 6) is not listed
    g = gamma_remark_check(2, 6)
    assert g.value == 378
    assert g.beta.outcome == "fail" and not g.listed and not g.consistent
    assert g.alpha.outcome == "pass"
    assert 353 < float_bound(BoundKind.T3_NILPOTENT, 64) < 354


def test_gamma_exception_set():
    assert GAMMA_EXCEPTIONS == {(2, 2), (2, 3), (2, 4), (2, 5), (3, 2)}
