"""Sylvester resultants, bivariate elimination and factorization checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import DegenerateInputError, DivisibilityError, InvalidInputError, ParseError
from .numeric import as_rational, format_rational, parse_rational
from .polynomial import Poly, subresultant_prs


# -- univariate -------------------------------------------------------------

def sylvester_matrix(F: Poly, G: Poly) -> list:
    """(n+m) x (n+m) matrix: m shifted rows of F, then n shifted rows of G."""
    if F.is_zero() or G.is_zero():
        raise InvalidInputError("Sylvester matrix of a zero polynomial")
    n, m = F.degree, G.degree
    size = n + m
    a = list(reversed(F.coeffs))
    b = list(reversed(G.coeffs))
    rows = []
    for i in range(m):
        rows.append([Fraction(0)] * i + a + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + b + [Fraction(0)] * (size - m - 1 - i))
    return rows


def determinant(matrix) -> Fraction:
    """Fraction-free Bareiss elimination with row pivoting."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return Fraction(1)
    if all(x.denominator == 1 for r in M for x in r):
        M = [[x.numerator for x in r] for r in M]
        integral = True
    else:
        integral = False
    sgn, prev = 1, 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sgn = -sgn
        p = M[c][c]
        for r in range(c + 1, n):
            row, mrc = M[r], M[r][c]
            for j in range(c + 1, n):
                v = p * row[j] - mrc * M[c][j]
                row[j] = v // prev if integral else v / prev
            row[c] = 0
        prev = p
    return Fraction(sgn * M[n - 1][n - 1])


def resultant_univariate(F: Poly, G: Poly) -> Fraction:
    """det(sylvester_matrix(F, G)), computed through the subresultant PRS."""
    if F.is_zero() or G.is_zero():
        raise InvalidInputError("resultant of a zero polynomial")
    n, m = F.degree, G.degree
    if n == 0 or m == 0:
        return F.lc ** m * G.lc ** n
    if n < m:
        r = resultant_univariate(G, F)
        return -r if (n * m) % 2 else r
    seq = subresultant_prs(F, G)
    return seq.principal(0)


# -- bivariate ----------------------------------------------------------------

class BivariatePolynomial:
    """Polynomial in (t, k) stored as coefficients in t, each a Poly in k."""

    __slots__ = ("coefficients_in_t",)

    def __init__(self, coefficients_in_t=()):
        cs = [c if isinstance(c, Poly) else Poly([c]) for c in coefficients_in_t]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coefficients_in_t = tuple(cs)

    @classmethod
    def from_terms(cls, terms) -> "BivariatePolynomial":
        """Build from (t_exp, k_exp, coefficient) triples."""
        grid = {}
        for te, ke, c in terms:
            grid[(te, ke)] = grid.get((te, ke), Fraction(0)) + as_rational(c)
        if not grid:
            return cls()
        dt = max(te for te, _ in grid)
        rows = []
        for te in range(dt + 1):
            ks = {ke: c for (t_, ke), c in grid.items() if t_ == te}
            dk = max(ks, default=-1)
            rows.append(Poly([ks.get(i, 0) for i in range(dk + 1)]))
        return cls(rows)

    @classmethod
    def from_t_poly(cls, p: Poly) -> "BivariatePolynomial":
        return cls([Poly([c]) for c in p.coeffs])

    @classmethod
    def from_k_poly(cls, p: Poly) -> "BivariatePolynomial":
        return cls([p])

    def terms(self):
        for te, ck in enumerate(self.coefficients_in_t):
            for ke, c in enumerate(ck.coeffs):
                if c:
                    yield te, ke, c

    @property
    def deg_t(self) -> int:
        return len(self.coefficients_in_t) - 1

    @property
    def deg_k(self) -> int:
        return max((c.degree for c in self.coefficients_in_t), default=-1)

    def is_zero(self) -> bool:
        return not self.coefficients_in_t

    def leading_t_coefficient(self) -> Poly:
        return self.coefficients_in_t[-1] if self.coefficients_in_t else Poly()

    def coefficient(self, t_exp: int, k_exp: int) -> Fraction:
        if t_exp >= len(self.coefficients_in_t):
            return Fraction(0)
        return self.coefficients_in_t[t_exp][k_exp]

    def coefficients_in_k(self) -> list:
        """Transpose: list indexed by k-exponent of Polys in t."""
        dk = self.deg_k
        return [Poly([c[ke] for c in self.coefficients_in_t]) for ke in range(dk + 1)]

    @classmethod
    def from_coefficients_in_k(cls, polys) -> "BivariatePolynomial":
        return cls.from_terms((te, ke, c) for ke, p in enumerate(polys)
                              for te, c in enumerate(p.coeffs))

    def eval_k(self, k) -> Poly:
        k = as_rational(k)
        return Poly([c.eval(k) for c in self.coefficients_in_t])

    def eval_t(self, t) -> Poly:
        t = as_rational(t)
        out = Poly()
        for c in reversed(self.coefficients_in_t):
            out = out * t + c
        return out

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.coefficients_in_t == other.coefficients_in_t

    def __hash__(self):
        return hash(self.coefficients_in_t)

    def __add__(self, other):
        other = _as_bivariate(other)
        n = max(len(self.coefficients_in_t), len(other.coefficients_in_t))
        get = lambda p, i: p.coefficients_in_t[i] if i < len(p.coefficients_in_t) else Poly()
        return BivariatePolynomial([get(self, i) + get(other, i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial([-c for c in self.coefficients_in_t])

    def __sub__(self, other):
        return self + (-_as_bivariate(other))

    def __rsub__(self, other):
        return _as_bivariate(other) - self

    def __mul__(self, other):
        other = _as_bivariate(other)
        if self.is_zero() or other.is_zero():
            return BivariatePolynomial()
        out = [Poly()] * (len(self.coefficients_in_t) + len(other.coefficients_in_t) - 1)
        for i, a in enumerate(self.coefficients_in_t):
            if a:
                for j, b in enumerate(other.coefficients_in_t):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out, base = BivariatePolynomial([Poly([1])]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "BivariatePolynomial":
        c = as_rational(c)
        return BivariatePolynomial([p * c for p in self.coefficients_in_t])

    def exact_div_t(self, d: Poly) -> "BivariatePolynomial":
        """Divide every k-coefficient (a polynomial in t) exactly by d(t)."""
        return BivariatePolynomial.from_coefficients_in_k(
            [p.exact_div(d) for p in self.coefficients_in_k()])

    def __repr__(self):
        return f"BivariatePolynomial(deg_t={self.deg_t}, deg_k={self.deg_k})"

    def to_json(self):
        return [[te, ke, format_rational(c)] for te, ke, c in self.terms()]

    @classmethod
    def from_json(cls, rows):
        return cls.from_terms((te, ke, parse_rational(c)) for te, ke, c in rows)


def _as_bivariate(x) -> BivariatePolynomial:
    if isinstance(x, BivariatePolynomial):
        return x
    if isinstance(x, Poly):
        return BivariatePolynomial.from_t_poly(x)
    return BivariatePolynomial([Poly([x])])


def t_var() -> BivariatePolynomial:
    return BivariatePolynomial([Poly(), Poly([1])])


def k_var() -> BivariatePolynomial:
    return BivariatePolynomial([Poly([0, 1])])


def format_bipoly_file(P: BivariatePolynomial) -> str:
    return "".join(f"{te} {ke} {format_rational(c)}\n" for te, ke, c in P.terms())


def parse_bipoly_file(text: str) -> BivariatePolynomial:
    terms = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError("expected 't_exp k_exp coefficient'", lineno)
        try:
            te, ke = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("exponents must be integers", lineno) from None
        if te < 0 or ke < 0:
            raise ParseError("negative exponent", lineno)
        if (te, ke) in seen:
            raise ParseError(f"duplicate term t^{te} k^{ke}", lineno)
        seen.add((te, ke))
        try:
            terms.append((te, ke, parse_rational(fields[2])))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return BivariatePolynomial.from_terms(terms)


def read_bipoly(path) -> BivariatePolynomial:
    return parse_bipoly_file(Path(path).read_text())


def write_bipoly(P: BivariatePolynomial, path) -> None:
    Path(path).write_text(format_bipoly_file(P))


# -- elimination ----------------------------------------------------------------

def interpolation_nodes():
    """0, 1, -1, 2, -2, ..."""
    yield 0
    n = 1
    while True:
        yield n
        yield -n
        n += 1


def _newton_interpolate(xs, ys) -> Poly:
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * Poly([-xs[i], 1]) + coef[i]
    return out


def resultant_in_t(P, Q) -> Poly:
    """Res_t(P, Q) as a polynomial in k, by evaluation at integer k and interpolation.

    Nodes where either leading t-coefficient vanishes are skipped.
    """
    P, Q = _as_bivariate(P), _as_bivariate(Q)
    if P.is_zero() or Q.is_zero():
        raise InvalidInputError("resultant of a zero polynomial")
    lp, lq = P.leading_t_coefficient(), Q.leading_t_coefficient()
    bound = Q.deg_t * max(P.deg_k, 0) + P.deg_t * max(Q.deg_k, 0)
    need = bound + 1
    xs, ys = [], []
    skipped = 0
    for node in interpolation_nodes():
        if len(xs) == need:
            break
        if lp.eval(node) == 0 or lq.eval(node) == 0:
            skipped += 1
            if skipped > lp.degree + lq.degree:
                raise DegenerateInputError("too many nodes kill a leading coefficient")
            continue
        xs.append(Fraction(node))
        ys.append(resultant_univariate(P.eval_k(node), Q.eval_k(node)))
    return _newton_interpolate(xs, ys)


def sylvester_resultant_symbolic(P, Q) -> Poly:
    """Res_t by a Sylvester determinant with polynomial entries (small inputs only)."""
    P, Q = _as_bivariate(P), _as_bivariate(Q)
    n, m = P.deg_t, Q.deg_t
    a = list(reversed(P.coefficients_in_t))
    b = list(reversed(Q.coefficients_in_t))
    size = n + m
    rows = []
    for i in range(m):
        rows.append([Poly()] * i + a + [Poly()] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Poly()] * i + b + [Poly()] * (size - m - 1 - i))
    return _poly_det(rows)


def _poly_det(rows) -> Poly:
    # Laplace expansion along the first column; fine up to ~8x8
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Poly()
    for i in range(n):
        if rows[i][0].is_zero():
            continue
        minor = [r[1:] for j, r in enumerate(rows) if j != i]
        term = rows[i][0] * _poly_det(minor)
        total = total + (term if i % 2 == 0 else -term)
    return total


@dataclass(frozen=True)
class EliminationResult:
    resultant_in_k: Poly
    constant_factor: Fraction
    declared_factors: tuple

    def verify(self) -> bool:
        return verify_factorization(self.resultant_in_k, list(self.declared_factors),
                                    self.constant_factor)


def verify_factorization(R: Poly, factors, constant) -> bool:
    """True iff R == constant * prod(factors) exactly."""
    constant = as_rational(constant)
    q = R
    try:
        for f in factors:
            q = q.exact_div(f)
    except (DivisibilityError, InvalidInputError):
        return False
    return q == Poly([constant])


def eliminate_two_radicals(alpha, beta, U, V) -> BivariatePolynomial:
    """Eliminate u, v from alpha*u - v - beta = 0, u^2 = U, v^2 = V.

    (alpha u - beta)^2 = V gives alpha^2 U + beta^2 - V = 2 alpha beta u;
    squaring once more removes u.
    """
    alpha, beta, U, V = map(_as_bivariate, (alpha, beta, U, V))
    left = alpha * alpha * U + beta * beta - V
    return left * left - alpha * alpha * beta * beta * U * 4


def isoceles_radical_system():
    """(alpha, beta, U, V) of the radical system behind the linear-form critical points."""
    t = Poly.x()
    one = Poly([1])
    quad = t * (one - t) * 4
    D = t * (one - t) * (one - quad ** 5)
    alpha = one + t
    beta = BivariatePolynomial.from_t_poly(D) * k_var()
    U = one - t * t
    V = t * t * (one - t) ** 2 * 27
    return alpha, beta, U, V


def t_content(P: BivariatePolynomial) -> Poly:
    from .polynomial import poly_gcd

    g = Poly()
    for c in P.coefficients_in_k():
        g = poly_gcd(g, c)
    return g


@dataclass(frozen=True)
class RadicalElimination:
    raw: BivariatePolynomial
    cofactor: Poly
    reduced: BivariatePolynomial
    normalization: Fraction


def radical_elimination() -> RadicalElimination:
    """Eliminate u, v from the radical system; strip the t-content.

    ``reduced`` is scaled so its t^0 k^0 coefficient is 1, and
    ``raw == normalization * cofactor * reduced``.
    """
    raw = eliminate_two_radicals(*isoceles_radical_system())
    cofactor = t_content(raw)
    reduced = raw.exact_div_t(cofactor)
    c0 = reduced.coefficient(0, 0)
    if c0 == 0:
        raise DegenerateInputError("eliminant has zero constant term")
    reduced = reduced.scale(1 / c0)
    return RadicalElimination(raw, cofactor, reduced, c0)


def eliminate_radicals() -> BivariatePolynomial:
    return radical_elimination().reduced


@dataclass(frozen=True)
class RationalizationCheck:
    holds: bool
    lhs: Poly
    rhs: Poly

    @property
    def degree(self) -> int:
        return self.lhs.degree

    def __bool__(self):
        return self.holds


def rationalize_critical_equation(A: Poly, radical_coefficient, p2: Poly) -> RationalizationCheck:
    """Check A^2 - 3 c^2 (1-t^2)(1-t)^10 t^12 == p2 (t+1)(2t-1)^3 exactly.

    ``A`` is the polynomial part of h'(t)'s numerator and ``c`` the rational
    coefficient of its sqrt(3) sqrt(1-t^2) (1-t)^5 t^6 term.
    """
    t = Poly.x()
    one = Poly([1])
    c = as_rational(radical_coefficient)
    lhs = A * A - (one - t * t) * (one - t) ** 10 * t ** 12 * (3 * c * c)
    rhs = p2 * (t + 1) * (2 * t - 1) ** 3
    return RationalizationCheck(lhs == rhs, lhs, rhs)
