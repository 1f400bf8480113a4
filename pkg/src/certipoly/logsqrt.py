"""Rational functions and their extension by ln and sqrt terms.

A :class:`LogSqrtExpression` is

    R(x) + sum_i C_i(x) ln(A_i(x)) + sum_j S_j(x) sqrt(Q_j(x))

with rational functions R, C_i, A_i, S_j, Q_j.  The class is closed under
differentiation, which is all the monotonicity arguments need.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInputError
from . import expr as E
from .numeric import as_rational
from .polynomial import Poly, poly_gcd


class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if den.is_zero():
            raise InvalidInputError("rational function with zero denominator")
        if num.is_zero():
            den = Poly([1])
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(Poly.x())

    @staticmethod
    def _coerce(other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction._coerce(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RationalFunction._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction._coerce(other))

    def __rsub__(self, other):
        return RationalFunction._coerce(other) - self

    def __mul__(self, other):
        o = RationalFunction._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction._coerce(other)
        if o.is_zero():
            raise InvalidInputError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** -n, self.num ** -n)
        return RationalFunction(self.num ** n, self.den ** n)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(self.num.derivative() * self.den - self.num * self.den.derivative(),
                                self.den * self.den)

    def eval(self, x):
        return self.num.eval(x) / self.den.eval(x)

    def to_expr(self) -> E.ExprNode:
        if self.den == Poly([1]):
            return E.poly(self.num)
        return E.poly(self.num) / E.poly(self.den)

    def __repr__(self):
        if self.den == Poly([1]):
            return f"({self.num.to_string()})"
        return f"({self.num.to_string()})/({self.den.to_string()})"


def _rf(x) -> RationalFunction:
    return RationalFunction._coerce(x)


def _merge(terms):
    merged = []
    for coef, arg in terms:
        for i, (c0, a0) in enumerate(merged):
            if a0 == arg:
                merged[i] = (c0 + coef, a0)
                break
        else:
            merged.append((coef, arg))
    return tuple((c, a) for c, a in merged if not c.is_zero())


class LogSqrtExpression:
    __slots__ = ("rational_part", "log_terms", "sqrt_terms")

    def __init__(self, rational_part=0, log_terms=(), sqrt_terms=()):
        self.rational_part = _rf(rational_part)
        logs = []
        for c, a in log_terms:
            c, a = _rf(c), _rf(a)
            if a.is_constant():
                if a.num.lc != 1:
                    raise InvalidInputError("log of a constant other than 1 is not supported")
                continue
            logs.append((c, a))
        sqrts = []
        for c, a in sqrt_terms:
            c, a = _rf(c), _rf(a)
            if a.is_constant() and _perfect_square(a.num.lc):
                self.rational_part = self.rational_part + c * _perfect_square(a.num.lc)
                continue
            sqrts.append((c, a))
        self.log_terms = _merge(logs)
        self.sqrt_terms = _merge(sqrts)

    @classmethod
    def log(cls, arg, coef=1) -> "LogSqrtExpression":
        return cls(0, [(coef, arg)])

    @classmethod
    def sqrt(cls, arg, coef=1) -> "LogSqrtExpression":
        return cls(0, (), [(coef, arg)])

    def is_rational(self) -> bool:
        return not self.log_terms and not self.sqrt_terms

    def __add__(self, other):
        o = other if isinstance(other, LogSqrtExpression) else LogSqrtExpression(other)
        return LogSqrtExpression(self.rational_part + o.rational_part,
                                 self.log_terms + o.log_terms,
                                 self.sqrt_terms + o.sqrt_terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        o = other if isinstance(other, LogSqrtExpression) else LogSqrtExpression(other)
        return self + (-o)

    def scale(self, r) -> "LogSqrtExpression":
        """Multiply by a rational function."""
        r = _rf(r)
        return LogSqrtExpression(self.rational_part * r,
                                 [(c * r, a) for c, a in self.log_terms],
                                 [(c * r, a) for c, a in self.sqrt_terms])

    __mul__ = scale
    __rmul__ = scale

    def times_sqrt(self, q) -> "LogSqrtExpression":
        """Multiply by sqrt(q); only defined without log terms."""
        q = _rf(q)
        if self.log_terms:
            raise InvalidInputError("cannot multiply log terms by a radical")
        rational = RationalFunction(0)
        sqrts = [(self.rational_part, q)]
        for c, a in self.sqrt_terms:
            if a == q:
                rational = rational + c * q
            else:
                sqrts.append((c, a * q))
        return LogSqrtExpression(rational, (), sqrts)

    def derivative(self) -> "LogSqrtExpression":
        rational = self.rational_part.derivative()
        logs, sqrts = [], []
        for c, a in self.log_terms:
            logs.append((c.derivative(), a))
            rational = rational + c * a.derivative() / a
        for c, a in self.sqrt_terms:
            sqrts.append((c.derivative() + c * a.derivative() / (a * 2), a))
        return LogSqrtExpression(rational, logs, sqrts)

    def __eq__(self, other):
        if not isinstance(other, LogSqrtExpression):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return self.rational_part.is_zero() and not self.log_terms and not self.sqrt_terms

    def to_expr(self) -> E.ExprNode:
        parts = []
        if not self.rational_part.is_zero():
            parts.append(self.rational_part.to_expr())
        for c, a in self.log_terms:
            parts.append(c.to_expr() * E.ln(a.to_expr()))
        for c, a in self.sqrt_terms:
            parts.append(c.to_expr() * E.sqrt(a.to_expr()))
        if not parts:
            return E.const(0)
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out

    def __repr__(self):
        bits = [repr(self.rational_part)]
        bits += [f"{c!r}*ln{a!r}" for c, a in self.log_terms]
        bits += [f"{c!r}*sqrt{a!r}" for c, a in self.sqrt_terms]
        return " + ".join(bits)


def _perfect_square(q):
    from math import isqrt

    q = as_rational(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def differentiate_logsqrt(e: LogSqrtExpression, times: int = 1) -> LogSqrtExpression:
    for _ in range(times):
        e = e.derivative()
    return e
