from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from certipoly import expr as E
from certipoly.bestconstant import (
    critical_derivation,
    critical_derivatives,
    critical_function,
    isoceles_h,
    ratio_derivative,
    ratio_derivative_identity,
    ratio_function,
)
from certipoly.errors import DomainError, ParseError
from certipoly.logsqrt import LogSqrtExpression, RationalFunction, differentiate_logsqrt
from certipoly.numeric import RationalInterval
from certipoly.polynomial import Poly

X = Poly.x()


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def as_mp(e: E.ExprNode):
    """Float oracle for an expression tree, built independently of evaluate()."""
    k = e.kind
    if k == "const":
        return lambda x: mp(Fraction(e.value))
    if k == "var":
        return lambda x: x
    if k == "poly":
        cs = [mp(c) for c in e.value.coeffs]
        return lambda x: mpmath.polyval(cs[::-1], x)
    if k == "pow":
        f = as_mp(e.args[0])
        return lambda x: f(x) ** e.value
    fs = [as_mp(a) for a in e.args]
    ops = {
        "add": lambda x: fs[0](x) + fs[1](x),
        "sub": lambda x: fs[0](x) - fs[1](x),
        "mul": lambda x: fs[0](x) * fs[1](x),
        "div": lambda x: fs[0](x) / fs[1](x),
        "ln": lambda x: mpmath.log(fs[0](x)),
        "sqrt": lambda x: mpmath.sqrt(fs[0](x)),
        "exp": lambda x: mpmath.exp(fs[0](x)),
    }
    return ops[k]


def test_evaluate_examples():
    x = E.var()
    assert E.evaluate(x * x + 1, 2) == RationalInterval(5)
    two = E.evaluate(E.sqrt(E.const(2)), 1)
    assert mp(two.lo) <= mpmath.sqrt(2) <= mp(two.hi) and two.width < Fraction(1, 2**120)
    assert E.evaluate(E.ln(x), 1) == RationalInterval(0)


def test_domain_error_names_subtree():
    x = E.var()
    bad = E.ln(x - 1)
    with pytest.raises(DomainError) as exc:
        E.evaluate(E.const(1) + bad, RationalInterval(0, 2))
    assert exc.value.subtree == x - 1
    with pytest.raises(DomainError):
        E.evaluate(E.const(1) / x, RationalInterval(-1, 1))
    with pytest.raises(DomainError):
        E.evaluate(E.sqrt(x), -1)


def test_text_round_trip():
    for e in (ratio_function(), isoceles_h(), critical_function().to_expr(), E.exp(E.var() ** 3)):
        assert E.from_text(E.to_text(e)) == e
    with pytest.raises(ParseError):
        E.from_text("(foo 1)")
    with pytest.raises(ParseError):
        E.from_text("(add (var)")


@given(st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=1000))
def test_enclosure_contains_oracle(q):
    e = E.ln(E.var() * E.var() + 1) / E.sqrt(E.var()) - E.exp(E.const(Fraction(1, 3)) * E.var())
    iv = E.evaluate(e, q)
    assert mp(iv.lo) <= as_mp(e)(mp(q)) <= mp(iv.hi)


def test_substitute():
    e = E.poly(X * X + 1)
    s = E.substitute(e, E.var() + 1)
    assert E.evaluate(s, 2) == RationalInterval(10)


def test_log_derivative_is_reciprocal():
    d = LogSqrtExpression.log(RationalFunction.x()).derivative()
    assert d.is_rational() and d.rational_part == RationalFunction(Poly([1]), X)
    s = LogSqrtExpression.sqrt(RationalFunction.x()).derivative()
    assert s == LogSqrtExpression.sqrt(RationalFunction.x(), RationalFunction(Poly([Fraction(1, 2)]), X))


def _check_derivative(expr_f, expr_df, points):
    f, df = as_mp(expr_f), as_mp(expr_df)
    for x in points:
        want = mpmath.diff(f, mp(x))
        got = df(mp(x))
        assert abs(got - want) <= mpmath.mpf(10) ** -25 * (1 + abs(want)), x


def test_logsqrt_derivatives_against_numeric_differentiation():
    """g, g', g'', g''' differentiated symbolically vs numerically at 20 points."""
    pts = [3 + Fraction(i + 1, 20) for i in range(20)]
    ds = critical_derivatives(4)
    for lo, hi in zip(ds, ds[1:]):
        _check_derivative(lo.to_expr(), hi.to_expr(), pts)
    assert ds[4].is_rational()


def test_ratio_derivative_against_numeric_differentiation():
    assert ratio_derivative_identity()
    pts = [Fraction(31, 10) + Fraction(i, 20) for i in range(20)]
    _check_derivative(ratio_function(), ratio_derivative(), pts)


def test_isoceles_h_derivative_sign_form(data):
    assert critical_derivation(data["critical"], 15360)
    assert not critical_derivation(data["critical"], 15359)


def test_differentiate_times():
    e = LogSqrtExpression.log(RationalFunction(X * X + 1))
    assert differentiate_logsqrt(e, 2) == e.derivative().derivative()
