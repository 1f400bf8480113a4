"""Sturm-sequence real-root counting, isolation and refinement.

All sign decisions are exact: chain members are kept as primitive integer
polynomials (scaled by positive constants only) and evaluated at rational
points with integer Horner schemes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from functools import reduce

from .errors import EndpointRootError, InvalidInputError
from .numeric import RationalInterval, as_rational, format_rational
from .polynomial import Poly, _prem, squarefree_part


@dataclass(frozen=True)
class IsolatingInterval:
    """(lo, hi] holding exactly one real root; neither endpoint is a root."""

    lo: Fraction
    hi: Fraction
    root_count: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidInputError("isolating interval needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def as_interval(self) -> RationalInterval:
        return RationalInterval(self.lo, self.hi)

    def decimal(self, digits: int = 10) -> str:
        return f"{float((self.lo + self.hi) / 2):.{digits}g}"

    def to_json(self):
        return [format_rational(self.lo), format_rational(self.hi)]


def _positive_primitive(coeffs: list) -> list:
    g = reduce(gcd, (abs(c) for c in coeffs), 0)
    return [c // g for c in coeffs] if g > 1 else coeffs


@dataclass(frozen=True)
class SturmChain:
    chain: tuple
    _ints: tuple = field(repr=False, compare=False, default=())

    @classmethod
    def of(cls, f: Poly) -> "SturmChain":
        if f.is_zero():
            raise InvalidInputError("Sturm chain of the zero polynomial")
        g = squarefree_part(f)
        a = g.int_coeffs()
        chain = [a]
        if len(a) > 1:
            b = _positive_primitive([i * c for i, c in enumerate(a)][1:])
            chain.append(b)
            while len(b) > 1:
                delta = len(a) - len(b) + 1
                r = _prem(a, b)
                if not r:
                    break
                # -rem(a, b) up to a positive factor
                flip = -1 if (b[-1] < 0 and delta % 2) else 1
                r = _positive_primitive([-flip * c for c in r])
                chain.append(r)
                a, b = b, r
        return cls(tuple(Poly(c) for c in chain), tuple(chain))

    def variations_at(self, x) -> int:
        x = as_rational(x)
        num, den = x.numerator, x.denominator
        signs = []
        for c in self._ints:
            acc, pw = 0, 1
            for a in reversed(c):
                acc = acc * num + a * pw
                pw *= den
            if acc:
                signs.append(acc > 0)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for c in self._ints:
            s = c[-1] > 0
            if not positive and (len(c) - 1) % 2:
                s = not s
            signs.append(s)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    @property
    def target(self) -> Poly:
        return self.chain[0]

    def count(self, lo, hi) -> int:
        """Distinct roots in (lo, hi]."""
        return self.variations_at(lo) - self.variations_at(hi)


def cauchy_bound(f: Poly) -> Fraction:
    """1 + max |a_i| / |a_n|; every complex root lies strictly inside."""
    if f.degree < 1:
        return Fraction(1)
    lc = abs(f.lc)
    return 1 + max(abs(c) for c in f.coeffs[:-1]) / lc


def count_roots_in(f: Poly, lo, hi) -> int:
    """Number of distinct real roots of f in the open interval (lo, hi)."""
    lo, hi = as_rational(lo), as_rational(hi)
    if f.is_zero():
        raise InvalidInputError("root count of the zero polynomial")
    if not lo < hi:
        raise InvalidInputError("count_roots_in needs lo < hi")
    for e in (lo, hi):
        if f.sign_at(e) == 0:
            raise EndpointRootError(f"endpoint {e} is a root", e)
    return SturmChain.of(f).count(lo, hi)


def count_roots_closed(f: Poly, lo, hi):
    """Roots in [lo, hi], moving any endpoint that is a root slightly outward.

    Returns ``(count, lo_used, hi_used)`` so callers can report adjustments.
    """
    lo, hi = as_rational(lo), as_rational(hi)
    bound = cauchy_bound(f)

    def nudge(e, direction):
        step = Fraction(1, 2 * e.denominator * (1 + bound.numerator))
        while f.sign_at(e) == 0:
            e += direction * step
            step /= 2
        return e

    lo2, hi2 = nudge(lo, -1), nudge(hi, 1)
    return SturmChain.of(f).count(lo2, hi2), lo2, hi2


def _split_point(chain: SturmChain, a: Fraction, b: Fraction) -> Fraction:
    g = chain.target
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5)):
        m = a + (b - a) * Fraction(num, den)
        if g.sign_at(m) != 0:
            return m
    m, step = (a + b) / 2, (b - a) / 8
    while g.sign_at(m) == 0:
        step /= 2
        m += step
    return m


def isolate_real_roots(f: Poly, range=None) -> list:
    """Isolating intervals for the distinct real roots, sorted ascending.

    ``range`` restricts to roots in the open interval (lo, hi); its
    endpoints must not be roots.
    """
    if f.is_zero():
        raise InvalidInputError("cannot isolate roots of the zero polynomial")
    chain = SturmChain.of(f)
    g = chain.target
    if g.degree < 1:
        return []
    if range is None:
        bound = cauchy_bound(g)
        lo, hi = -bound, bound
    else:
        lo, hi = as_rational(range[0]), as_rational(range[1])
        for e in (lo, hi):
            if g.sign_at(e) == 0:
                raise EndpointRootError(f"range endpoint {e} is a root", e)
    out = []
    stack = [(lo, hi, chain.count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(a, b))
            continue
        m = _split_point(chain, a, b)
        nl = chain.count(a, m)
        stack.append((m, b, n - nl))
        stack.append((a, m, nl))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine_root(f: Poly, iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect ``iv`` (exact signs) until its width is at most ``width``."""
    width = as_rational(width)
    if width <= 0:
        raise InvalidInputError("target width must be positive")
    g = squarefree_part(f)
    a, b = iv.lo, iv.hi
    sa, sb = g.sign_at(a), g.sign_at(b)
    if sa == 0 or sb == 0 or sa == sb:
        raise InvalidInputError(f"{iv} does not bracket a simple root of f")
    while b - a > width:
        m = (a + b) / 2
        sm = g.sign_at(m)
        if sm == 0:
            # m is the root itself; wrap it in a small non-root bracket
            d = min(width, b - a) / 4
            while g.sign_at(m - d) in (0, sm) or g.sign_at(m + d) == 0 \
                    or g.sign_at(m - d) == g.sign_at(m + d):
                d /= 2
            return IsolatingInterval(m - d, m + d)
        if sm == sa:
            a = m
        else:
            b = m
    return IsolatingInterval(a, b)


def refine_all(f: Poly, intervals, width) -> list:
    return [refine_root(f, iv, width) for iv in intervals]
