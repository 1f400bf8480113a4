"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored ascending (index = exponent).  Heavy routines
(pseudo-remainders, subresultants) run on plain integer lists whenever the
input is integral, falling back to :class:`~fractions.Fraction` otherwise.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from pathlib import Path

from .errors import DivisibilityError, InvalidInputError, ParseError
from .numeric import RationalInterval, as_rational, format_rational, parse_rational


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class Poly:
    """Immutable dense polynomial in one variable over Q."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        self.coeffs = tuple(as_rational(c) for c in _strip(coeffs))
        self._hash = None

    # -- construction ----------------------------------------------------
    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots, lc=1) -> "Poly":
        out = cls([lc])
        for r in roots:
            out = out * cls([-as_rational(r), 1])
        return out

    @classmethod
    def from_descending(cls, coeffs) -> "Poly":
        return cls(list(reversed(list(coeffs))))

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list:
        if not self.is_integral():
            raise InvalidInputError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __add__(self, other):
        other = Poly._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Poly._coerce(other))

    def __rsub__(self, other):
        return Poly._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = Poly._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInputError("negative polynomial power")
        out, base = Poly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = Poly._coerce(other)
        if other.is_zero():
            raise InvalidInputError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = other.degree
        if self.degree < dg:
            return Poly(), self
        quo = [Fraction(0)] * (self.degree - dg + 1)
        inv = 1 / other.lc
        for i in range(self.degree - dg, -1, -1):
            q = rem[i + dg] * inv
            quo[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return Poly(quo), Poly(rem[:dg])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        """Quotient q with self == q * other; raises DivisibilityError otherwise."""
        q, r = divmod(self, other)
        if r:
            raise DivisibilityError(f"nonzero remainder of degree {r.degree}")
        return q

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def scale_var(self, s) -> "Poly":
        """p(s * x)."""
        s = as_rational(s)
        return Poly([c * s ** i for i, c in enumerate(self.coeffs)])

    def mirror(self) -> "Poly":
        """p(-x)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    # -- evaluation ------------------------------------------------------
    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner evaluation at a rational (exact) or an interval (enclosure)."""
        if isinstance(x, RationalInterval):
            if x.is_point():
                return RationalInterval.point(self.eval(x.lo))
            return self._eval_interval(x)
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _eval_interval(self, x: RationalInterval) -> RationalInterval:
        # expand around the midpoint to limit dependency blow-up
        m = x.mid
        shifted = self.taylor_shift(m)
        r = x - m
        acc = RationalInterval.point(0)
        for c in reversed(shifted.coeffs):
            acc = acc * r + c
        return acc

    def taylor_shift(self, a) -> "Poly":
        """p(x + a)."""
        a = as_rational(a)
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return Poly(c)

    def sign_at(self, x) -> int:
        """Exact sign of p(x) at a rational x, using integer arithmetic."""
        x = as_rational(x)
        num, den = x.numerator, x.denominator
        if self.is_integral():
            acc = 0
            pw = 1
            for c in reversed(self.coeffs):
                acc = acc * num + c.numerator * pw
                pw *= den
            # acc == den**deg * p(x), den > 0
            return (acc > 0) - (acc < 0)
        v = self.eval(x)
        return (v > 0) - (v < 0)

    # -- normalization ---------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self / c integral and primitive."""
        if not self.coeffs:
            return Fraction(0)
        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (abs(c.numerator * (den // c.denominator)) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integral primitive associate with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return Poly([a / c for a in self.coeffs])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return Poly([a * inv for a in self.coeffs])

    # -- misc ------------------------------------------------------------
    def __repr__(self):
        return f"Poly({self.to_string()})"

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sgn = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if a == 1 and mono:
                body = mono
            else:
                body = format_rational(a) + ("*" + mono if mono else "")
            parts.append((sgn, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def digest(self) -> str:
        text = ",".join(format_rational(c) for c in self.coeffs)
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items):
        return cls([parse_rational(s) for s in items])


# -- integer-list kernels ---------------------------------------------------

def _as_domain_list(p: Poly):
    """Integer list when integral, otherwise Fraction list (ascending)."""
    if p.is_integral():
        return [c.numerator for c in p.coeffs]
    return list(p.coeffs)


def _exact_quo(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact division in subresultant recurrence")
        return q
    return Fraction(a) / b


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b (ascending lists)."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return list(a)
    r = list(a)
    lb = b[-1]
    delta = da - db + 1
    for i in range(da, db - 1, -1):
        lead = r[i]
        shift = i - db
        r = [c * lb for c in r]
        if lead:
            for j in range(db + 1):
                r[shift + j] -= lead * b[j]
        r.pop()
        delta -= 1
    if delta:
        f = lb ** delta
        r = [c * f for c in r]
    while r and r[-1] == 0:
        r.pop()
    return r


@dataclass(frozen=True)
class SubresultantSequence:
    """Subresultant PRS of (f, g) with the principal subresultant coefficients.

    ``principal_coefficients[i]`` is the principal subresultant coefficient
    of degree ``prs[i].degree``; all other principal coefficients vanish.
    """

    prs: tuple
    principal_coefficients: tuple

    @property
    def degrees(self):
        return tuple(p.degree for p in self.prs)

    def last(self) -> Poly:
        return self.prs[-1]

    def principal(self, j: int) -> Fraction:
        """Principal subresultant coefficient psc_j (zero when j is skipped)."""
        for p, c in zip(self.prs, self.principal_coefficients):
            if p.degree == j:
                return c
        return Fraction(0)


def subresultant_prs(f: Poly, g: Poly) -> SubresultantSequence:
    """Subresultant polynomial remainder sequence (Brown-Traub recurrence)."""
    if f.is_zero() or g.is_zero():
        raise InvalidInputError("subresultant PRS of a zero polynomial")
    if f.degree < g.degree:
        raise InvalidInputError("subresultant PRS needs deg f >= deg g")
    a, b = _as_domain_list(f), _as_domain_list(g)
    if isinstance(a[0], int) != isinstance(b[0], int):
        a, b = [Fraction(c) for c in a], [Fraction(c) for c in b]
    prs = [a, b]
    n, m = len(a) - 1, len(b) - 1
    d = n - m
    h = [(-1) ** (d + 1) * c for c in _prem(a, b)]
    lc = b[-1]
    c = lc ** d
    psc = [1, c]
    c = -c
    while h:
        k = len(h) - 1
        prs.append(h)
        a, b, m, d = b, h, k, m - k
        beta = -lc * c ** d
        h = [_exact_quo(x, beta) for x in _prem(a, b)]
        lc = b[-1]
        if d > 1:
            c = _exact_quo((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        psc.append(-c)
    return SubresultantSequence(
        tuple(Poly(p) for p in prs),
        tuple(Fraction(x) for x in psc),
    )


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient (zero if both zero)."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    if f.degree < g.degree:
        f, g = g, f
    return subresultant_prs(f.primitive(), g.primitive()).last().primitive()


def squarefree_part(f: Poly) -> Poly:
    if f.is_zero():
        raise InvalidInputError("squarefree part of the zero polynomial")
    if f.degree < 1:
        return Poly([1])
    d = poly_gcd(f, f.derivative())
    return f.exact_div(d).primitive()


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "exact_div":
        if g.is_zero():
            raise InvalidInputError("exact division by the zero polynomial")
        return f.exact_div(g)
    raise InvalidInputError(f"unknown operation {op!r}")


def derivative(f: Poly) -> Poly:
    return f.derivative()


def eval_poly(f: Poly, x):
    return f.eval(x)


# -- file format -------------------------------------------------------------

def format_poly_file(p: Poly) -> str:
    lines = [f"degree {p.degree}"]
    lines += [f"{i} {format_rational(c)}" for i, c in enumerate(p.coeffs)]
    return "\n".join(lines) + "\n"


def parse_poly_file(text: str) -> Poly:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty polynomial file", 1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree":
        raise ParseError("expected 'degree N'", 1)
    try:
        deg = int(head[1])
    except ValueError:
        raise ParseError(f"bad degree {head[1]!r}", 1) from None
    coeffs = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError("expected 'exponent coefficient'", lineno)
        try:
            e = int(fields[0])
        except ValueError:
            raise ParseError(f"bad exponent {fields[0]!r}", lineno) from None
        if e < 0 or e > deg:
            raise ParseError(f"exponent {e} outside 0..{deg}", lineno)
        if e in coeffs:
            raise ParseError(f"duplicate exponent {e}", lineno)
        try:
            coeffs[e] = parse_rational(fields[1])
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    p = Poly([coeffs.get(i, 0) for i in range(deg + 1)])
    if p.degree != deg:
        raise ParseError(f"declared degree {deg} but leading coefficient is zero", 1)
    return p


def read_poly(path) -> Poly:
    return parse_poly_file(Path(path).read_text())


def write_poly(p: Poly, path) -> None:
    Path(path).write_text(format_poly_file(p))
