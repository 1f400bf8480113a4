import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from certipoly.errors import DomainError, InvalidInputError, ParseError
from certipoly.numeric import (
    PrecisionBudget,
    RationalInterval,
    format_rational,
    interval_exp,
    interval_ln,
    interval_sqrt,
    parse_rational,
    rational_arith,
)

B64 = PrecisionBudget(64)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
positive = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**6)


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def test_rational_arith_examples():
    assert rational_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    r = rational_arith(Fraction(2, 4), Fraction(3, 3), "mul")
    assert (r.numerator, r.denominator) == (1, 2)
    with pytest.raises(InvalidInputError):
        rational_arith(Fraction(5, 7), 0, "div")
    with pytest.raises(InvalidInputError):
        rational_arith(1, 2, "pow")


@given(rationals, rationals, st.sampled_from(["add", "sub", "mul", "div"]))
def test_rational_arith_canonical(a, b, op):
    if op == "div" and b == 0:
        return
    r = rational_arith(a, b, op)
    assert r.denominator > 0
    from math import gcd

    assert gcd(abs(r.numerator), r.denominator) == 1


def test_rational_text_format():
    assert parse_rational("−3/4") == Fraction(-3, 4)
    assert parse_rational("-12") == -12
    assert format_rational(Fraction(-6, 8)) == "-3/4"
    for bad in ("1/0", "1.5", "abc", ""):
        with pytest.raises(ParseError):
            parse_rational(bad)


@given(rationals)
def test_rational_text_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_ln_examples():
    assert interval_ln(RationalInterval(1)) == RationalInterval(0)
    two = interval_ln(RationalInterval(2), B64)
    assert two.width <= Fraction(1, 2**60)
    assert mp(two.lo) <= mpmath.log(2) <= mp(two.hi)
    assert interval_ln(RationalInterval(Fraction(312, 361)), B64).hi < 0
    for bad in (RationalInterval(0, 1), RationalInterval(-2, -1)):
        with pytest.raises(DomainError):
            interval_ln(bad)


def test_sqrt_examples():
    assert interval_sqrt(RationalInterval(4)) == RationalInterval(2)
    assert interval_sqrt(RationalInterval(Fraction(9, 49))) == RationalInterval(Fraction(3, 7))
    r2 = interval_sqrt(RationalInterval(2), B64)
    assert r2.width <= Fraction(1, 2**60)
    assert mp(r2.lo) <= mpmath.sqrt(2) <= mp(r2.hi)
    with pytest.raises(DomainError):
        interval_sqrt(RationalInterval(-1, 1))


def test_exp_examples():
    assert interval_exp(RationalInterval(0)) == RationalInterval(1)
    e = interval_exp(RationalInterval(1), B64)
    assert e.width <= Fraction(1, 2**60)
    assert mp(e.lo) <= mpmath.e <= mp(e.hi)


@settings(max_examples=200)
@given(positive)
def test_ln_contains_mpmath(q):
    iv = interval_ln(RationalInterval(q), B64)
    assert mp(iv.lo) <= mpmath.log(mp(q)) <= mp(iv.hi)


@settings(max_examples=200)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=10**4))
def test_exp_contains_mpmath(q):
    iv = interval_exp(RationalInterval(q), B64)
    assert mp(iv.lo) <= mpmath.exp(mp(q)) <= mp(iv.hi)


@settings(max_examples=100)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=100),
       st.fractions(min_value=0, max_value=1, max_denominator=100),
       st.fractions(min_value=0, max_value=1, max_denominator=100))
def test_exp_monotone_nesting(a, w1, w2):
    inner = RationalInterval(a, a + w1)
    outer = RationalInterval(a - w2, a + w1 + w2)
    assert outer.contains(inner)
    assert interval_exp(outer).contains(interval_exp(inner))


def test_containment_under_precision_growth():
    """10^4 random inputs: 4x the bits gives a nested, narrower enclosure."""
    rng = random.Random(20240601)
    lo_p, hi_p = PrecisionBudget(32), PrecisionBudget(128)
    ops = (interval_ln, interval_sqrt, interval_exp)
    for i in range(10**4):
        num = rng.randint(1, 10**6)
        den = rng.randint(1, 10**4)
        q = Fraction(num, den)
        op = ops[i % 3]
        if op is interval_exp:
            q = Fraction(rng.randint(-4000, 4000), den % 100 + 1) / 100
        coarse, fine = op(RationalInterval(q), lo_p), op(RationalInterval(q), hi_p)
        assert coarse.contains(fine), (op.__name__, q)
        assert fine.width <= coarse.width


def test_determinism():
    a = interval_ln(RationalInterval(Fraction(7, 3), Fraction(5, 2)), B64)
    b = interval_ln(RationalInterval(Fraction(7, 3), Fraction(5, 2)), B64)
    assert a == b and a.to_json() == b.to_json()


@given(rationals, rationals, rationals, rationals)
def test_interval_arith_contains_samples(a, b, c, d):
    x = RationalInterval(min(a, b), max(a, b))
    y = RationalInterval(min(c, d), max(c, d))
    for op in ("__add__", "__sub__", "__mul__"):
        z = getattr(x, op)(y)
        for u in (x.lo, x.hi, x.mid):
            for v in (y.lo, y.hi, y.mid):
                assert getattr(u, op)(v) in z
    if y.excludes_zero():
        z = x / y
        assert x.mid / y.mid in z


def test_interval_invariants():
    with pytest.raises(InvalidInputError):
        RationalInterval(2, 1)
    iv = RationalInterval(Fraction(1, 3), Fraction(2, 3))
    assert iv.width == Fraction(1, 3)
    wide = iv.round_out(8)
    assert wide.contains(iv)
    assert RationalInterval(Fraction(1, 3)).round_out(4).is_point()
    assert RationalInterval(-1, 2).sign() is None
    assert RationalInterval(1, 2).sign() == 1
    assert RationalInterval(0).sign() == 0


def test_precision_budget():
    b = PrecisionBudget(128, 1024, 2)
    assert list(b.schedule()) == [128, 256, 512, 1024]
    assert list(PrecisionBudget(100, 300, 2).schedule()) == [100, 200, 300]
    with pytest.raises(InvalidInputError):
        PrecisionBudget(256, 128)
    with pytest.raises(InvalidInputError):
        PrecisionBudget(8, 16, 1)
