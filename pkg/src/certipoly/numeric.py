"""Exact rationals and validated interval evaluation of ln, sqrt and exp.

Scalars are :class:`fractions.Fraction` throughout.  Transcendental values
are returned as :class:`RationalInterval` enclosures computed with
fixed-point integer series whose truncation and rounding errors are
bounded explicitly, so every interval contains the exact image.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InvalidInputError, ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([-−]?)(\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"``; a leading ``-`` or ``−`` negates."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator: {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign else value


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidInputError(f"cannot use {type(value).__name__} as an exact rational")


def rational_arith(a, b, op: str) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise InvalidInputError("division by zero")
        return a / b
    raise InvalidInputError(f"unknown operation {op!r}")


def sign(q) -> int:
    return (q > 0) - (q < 0)


def _floor_div_pow2(q: Fraction, shift: int) -> int:
    """floor(q * 2**shift)."""
    if shift >= 0:
        return (q.numerator << shift) // q.denominator
    return q.numerator // (q.denominator << -shift)


def _ceil_div_pow2(q: Fraction, shift: int) -> int:
    return -_floor_div_pow2(-q, shift)


def _exponent(q: Fraction) -> int:
    """An integer e with 2**(e-1) <= |q| < 2**(e+1); q must be nonzero."""
    return abs(q.numerator).bit_length() - q.denominator.bit_length()


@dataclass(frozen=True)
class PrecisionBudget:
    working_bits: int = 128
    max_bits: int = 16384
    growth_factor: int = 2

    def __post_init__(self):
        if self.working_bits < 1 or self.max_bits < 1:
            raise InvalidInputError("precision bits must be positive")
        if self.growth_factor < 2:
            raise InvalidInputError("growth_factor must be at least 2")
        if self.working_bits > self.max_bits:
            raise InvalidInputError("working_bits exceeds max_bits")

    def schedule(self):
        """Working precisions to try, in increasing order, ending at max_bits."""
        bits = self.working_bits
        while True:
            yield bits
            if bits >= self.max_bits:
                return
            bits = min(bits * self.growth_factor, self.max_bits)

    def with_bits(self, bits: int) -> "PrecisionBudget":
        return PrecisionBudget(bits, max(bits, self.max_bits), self.growth_factor)


DEFAULT_BUDGET = PrecisionBudget()


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __init__(self, lo, hi=None):
        lo = as_rational(lo)
        hi = lo if hi is None else as_rational(hi)
        if lo > hi:
            raise InvalidInputError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, q) -> "RationalInterval":
        return cls(q, q)

    @classmethod
    def coerce(cls, value) -> "RationalInterval":
        if isinstance(value, RationalInterval):
            return value
        return cls.point(value)

    # -- queries ---------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, other) -> bool:
        if isinstance(other, RationalInterval):
            return self.lo <= other.lo and other.hi <= self.hi
        return self.lo <= other <= self.hi

    def __contains__(self, item) -> bool:
        return self.contains(item)

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self):
        """+1/-1 when the interval excludes 0, 0 for [0,0], None otherwise."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def intersect(self, other: "RationalInterval"):
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return RationalInterval(lo, hi) if lo <= hi else None

    def hull(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- arithmetic ------------------------------------------------------
    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __add__(self, other):
        other = RationalInterval.coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalInterval.coerce(other)
        return RationalInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return RationalInterval.coerce(other) - self

    def __mul__(self, other):
        other = RationalInterval.coerce(other)
        if self.is_point() and other.is_point():
            return RationalInterval.point(self.lo * other.lo)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self):
        if not self.excludes_zero():
            raise DomainError(f"division by interval containing zero: {self}")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        other = RationalInterval.coerce(other)
        if other.is_point():
            if other.lo == 0:
                raise DomainError("division by zero")
            q = other.lo
            return RationalInterval(self.lo / q, self.hi / q) if q > 0 else \
                RationalInterval(self.hi / q, self.lo / q)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return RationalInterval.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise InvalidInputError("interval powers take integer exponents")
        if n < 0:
            return (self ** -n).reciprocal()
        if n == 0:
            return RationalInterval.point(1)
        a, b = self.lo ** n, self.hi ** n
        if n % 2 == 1 or self.lo >= 0:
            return RationalInterval(min(a, b), max(a, b))
        if self.hi <= 0:
            return RationalInterval(b, a)
        return RationalInterval(0, max(a, b))

    def round_out(self, bits: int) -> "RationalInterval":
        """Widen to endpoints carrying about ``bits`` significant bits.

        Point intervals are returned unchanged so exact values stay exact.
        """
        if self.is_point():
            return self
        mag = max(abs(self.lo), abs(self.hi))
        shift = bits - _exponent(mag)
        lo = Fraction(_floor_div_pow2(self.lo, shift)) / Fraction(2) ** shift
        hi = Fraction(_ceil_div_pow2(self.hi, shift)) / Fraction(2) ** shift
        return RationalInterval(lo, hi)

    def decimal(self, digits: int = 10) -> str:
        return f"{float(self.mid):.{digits}g}"

    def __repr__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]

    @classmethod
    def from_json(cls, pair):
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))


# -- fixed-point series ---------------------------------------------------

def _atanh_fixed(z: Fraction, P: int, inv_bound: int):
    """atanh(z) * 2**P as (value, err) with |true - value| <= err (integers).

    Requires |z| <= 1/inv_bound.
    """
    zz = z * z
    a, b = zz.numerator, zz.denominator
    n_terms = 1
    # tail after n terms is <= |z|**(2n+1) / ((2n+1)(1 - z**2)) < 2**-P
    while inv_bound ** (2 * n_terms + 1) < (2 << P):
        n_terms += 1
    pw = _floor_div_pow2(z, P)
    total = 0
    for j in range(n_terms):
        total += pw // (2 * j + 1) if pw >= 0 else -((-pw) // (2 * j + 1))
        pw = (pw * a) // b if pw >= 0 else -((-pw * a) // b)
    # each power carries < 2 ulp of error, each term < 3 ulp, tail < 1 ulp
    return total, 3 * n_terms + 2


@lru_cache(maxsize=64)
def _ln2_fixed(P: int):
    # ln 2 = 2 atanh(1/3)
    v, e = _atanh_fixed(Fraction(1, 3), P, 3)
    return 2 * v, 2 * e


def _ln_point(q: Fraction, bits: int):
    """Enclosure (lo, hi) of ln q for q > 0, about ``bits`` bits absolute."""
    if q == 1:
        return Fraction(0), Fraction(0)
    e = _exponent(q)
    m = q / Fraction(2) ** e if e >= 0 else q * Fraction(2) ** -e
    while m >= Fraction(3, 2):
        m /= 2
        e += 1
    while m < Fraction(3, 4):
        m *= 2
        e -= 1
    P = bits + 16 + abs(e).bit_length() + bits.bit_length()
    z = (m - 1) / (m + 1)
    v, err = _atanh_fixed(z, P, 5)
    v, err = 2 * v, 2 * err
    if e:
        l2, l2err = _ln2_fixed(P)
        v += e * l2
        err += abs(e) * l2err
    scale = Fraction(2) ** P
    return Fraction(v - err) / scale, Fraction(v + err) / scale


def _exp_point(q: Fraction, bits: int):
    """Enclosure (lo, hi) of exp q with lo > 0."""
    if q == 0:
        return Fraction(1), Fraction(1)
    r = 0
    y = q
    while abs(y) > Fraction(1, 2):
        y /= 2
        r += 1
    growth = max(0, math.ceil(float(q) * 1.4427)) if q > 0 else 0
    P = bits + 2 * r + growth + 16 + bits.bit_length()
    n_terms = 1
    fact = 1
    # tail <= 2 |y|^(N+1) / (N+1)! <= 2**-N / (N+1)!
    while (fact << n_terms) < (4 << P):
        n_terms += 1
        fact *= n_terms
    a, b = y.numerator, y.denominator
    term = 1 << P
    total = term
    for j in range(1, n_terms + 1):
        num = term * a
        term = num // (b * j) if num >= 0 else -((-num) // (b * j))
        total += term
    err = 2 * (n_terms + 1) + 2
    scale = Fraction(2) ** P
    lo, hi = Fraction(total - err) / scale, Fraction(total + err) / scale
    for _ in range(r):
        lo, hi = lo * lo, hi * hi
        rounded = RationalInterval(lo, hi).round_out(P)
        lo, hi = rounded.lo, rounded.hi
    return lo, hi


def interval_ln(I, prec: PrecisionBudget = DEFAULT_BUDGET) -> RationalInterval:
    I = RationalInterval.coerce(I)
    if I.lo <= 0:
        raise DomainError(f"ln of interval with nonpositive lower end {I}")
    bits = prec.working_bits
    lo, hi = _ln_point(I.lo, bits)
    if not I.is_point():
        hi = _ln_point(I.hi, bits)[1]
    return RationalInterval(lo, hi).round_out(bits + 4)


def _isqrt_floor(q: Fraction, shift: int) -> int:
    """floor(sqrt(q) * 2**shift) for q >= 0."""
    return math.isqrt(_floor_div_pow2(q, 2 * shift))


def _exact_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def interval_sqrt(I, prec: PrecisionBudget = DEFAULT_BUDGET) -> RationalInterval:
    I = RationalInterval.coerce(I)
    if I.lo < 0:
        raise DomainError(f"sqrt of interval with negative lower end {I}")
    bits = prec.working_bits

    def lower(q):
        exact = _exact_sqrt(q)
        if exact is not None:
            return exact
        shift = bits + 4 - min(0, _exponent(q) // 2)
        return Fraction(_isqrt_floor(q, shift)) / Fraction(2) ** shift

    def upper(q):
        exact = _exact_sqrt(q)
        if exact is not None:
            return exact
        shift = bits + 4 - min(0, _exponent(q) // 2)
        return Fraction(_isqrt_floor(q, shift) + 1) / Fraction(2) ** shift

    return RationalInterval(lower(I.lo), upper(I.hi))


def interval_exp(I, prec: PrecisionBudget = DEFAULT_BUDGET) -> RationalInterval:
    I = RationalInterval.coerce(I)
    bits = prec.working_bits
    lo, hi = _exp_point(I.lo, bits)
    if not I.is_point():
        hi = _exp_point(I.hi, bits)[1]
    return RationalInterval(lo, hi).round_out(bits + 4)
