"""Best constants for two sharpened triangle inequalities in s, R and r.

Both problems reduce, on the isoceles boundary family with
t = cos B = cos C in [1/2, 1), to one-variable statements:

* power form: sqrt(3) p >= 10 r - r (2r/R)^lam.  With x = sqrt((3+3t)/(1-t))
  it becomes  base(x)^lam >= rhs(x)  for x >= 3, and the best lam is the
  minimum of f = ln(rhs)/ln(base) on (3, x0), x0 the largest root of the
  cubic numerator of rhs.
* linear form: p >= 3 sqrt(3) r + k (1 - (2r/R)^5) r, whose best k is the
  minimum of h(t) on (1/2, 1).

Everything here returns certificate objects; nothing is concluded from
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import expr as E
from .certify import (
    ChainFailure,
    ChainIndeterminate,
    SignCertificate,
    analyze_level,
    certify_sign,
    eval_expr,
    poly_sign_on,
)
from .discrimination import count_roots
from .errors import DomainError
from .isolation import IsolatingInterval, count_roots_in, isolate_real_roots, refine_root
from .logsqrt import LogSqrtExpression, RationalFunction
from .numeric import DEFAULT_BUDGET, PrecisionBudget, RationalInterval, as_rational
from .polynomial import Poly

X = Poly.x()
ONE = Poly([1])


# -- power form -----------------------------------------------------------------

def boundary_power_form():
    """(base, rhs) as rational functions of x.

    Substituting t = (x^2-3)/(x^2+3) gives 1+t = 2x^2/(x^2+3),
    1-t = 6/(x^2+3) and sqrt(3) sqrt(1-t^2) = 6x/(x^2+3); dividing the
    boundary inequality by 2t(1-t) leaves base^lam >= rhs with
    base = 4t(1-t) and rhs = 10 - (1+t) sqrt(3(1-t^2)) / (t(1-t)).
    """
    s = X * X + 3
    t = RationalFunction(X * X - 3, s)
    one_minus = 1 - t
    base = t * one_minus * 4
    root_term = RationalFunction(X * 6, s)
    rhs = 10 - (1 + t) * root_term / (t * one_minus)
    return base, rhs


def boundary_cubic() -> Poly:
    """Numerator of rhs up to a constant; its largest root is x0."""
    _, rhs = boundary_power_form()
    return rhs.num.monic()


def ratio_function() -> E.ExprNode:
    """f(x) = ln(rhs)/ln(base); lam <= f(x) is the power form on (3, x0)."""
    base, rhs = boundary_power_form()
    return E.ln(rhs.to_expr()) / E.ln(base.to_expr())


def critical_function() -> LogSqrtExpression:
    """g(x), the numerator of f'(x) after removing nonvanishing factors."""
    base, rhs = boundary_power_form()
    c = boundary_cubic()
    return LogSqrtExpression(0, [(X * (X * X + 3), base), (c * 2, rhs)])


def ratio_derivative_identity() -> bool:
    """Check f' = x(x-3)(x+3) g / ((x^2+3)(x^2-3) c ln(base)^2) exactly.

    Since f' = (ln(base) rhs'/rhs - ln(rhs) base'/base) / ln(base)^2 this is
    an identity between log-linear expressions.
    """
    base, rhs = boundary_power_form()
    c = boundary_cubic()
    numer = LogSqrtExpression(0, [(rhs.derivative() / rhs, base),
                                  (-(base.derivative() / base), rhs)])
    factor = RationalFunction(X * (X - 3) * (X + 3), (X * X + 3) * (X * X - 3) * c)
    return numer == critical_function().scale(factor)


def ratio_derivative() -> E.ExprNode:
    """f'(x) in the factored form x(x-3)(x+3) g / ((x^2+3)(x^2-3) c ln(base)^2)."""
    base, _ = boundary_power_form()
    c = boundary_cubic()
    factor = RationalFunction(X * (X - 3) * (X + 3), (X * X + 3) * (X * X - 3) * c)
    return factor.to_expr() * critical_function().to_expr() / E.ln(base.to_expr()) ** 2


def mean_value_enclosure(fn, dfn, iv: RationalInterval, prec: PrecisionBudget = DEFAULT_BUDGET):
    """fn over iv as fn(mid) + fn'(iv) (iv - mid); tight where fn' is small."""
    iv = RationalInterval.coerce(iv)
    m = iv.mid
    return eval_expr(fn, m, prec) + eval_expr(dfn, iv, prec) * (iv - m)


def critical_derivatives(order: int = 4) -> list:
    out = [critical_function()]
    for _ in range(order):
        out.append(out[-1].derivative())
    return out


@dataclass(frozen=True)
class FourthDerivativeCheck:
    holds: bool
    derived_p: Poly
    denominator_matches: bool


def fourth_derivative_factor(transcribed_p: Poly) -> FourthDerivativeCheck:
    """Re-derive p from g'''' = 4x p / (c^3 (x^2+3)^3 (x^2-3)^3)."""
    g4 = critical_derivatives(4)[-1]
    if not g4.is_rational():
        return FourthDerivativeCheck(False, Poly(), False)
    c = boundary_cubic()
    den = c ** 3 * (X * X + 3) ** 3 * (X * X - 3) ** 3
    scaled = g4.rational_part * den / (X * 4)
    if not scaled.is_polynomial():
        return FourthDerivativeCheck(False, Poly(), False)
    derived = scaled.num
    return FourthDerivativeCheck(derived == transcribed_p, derived, True)


@dataclass
class RatioChain:
    """Everything certified about g and f on (3, x0)."""

    x0: IsolatingInterval
    facts: list
    steps: list
    x1: RationalInterval
    lambda_max: RationalInterval
    lambda_at_ends: tuple
    minimum_shape: bool
    derivatives: list = field(repr=False, default_factory=list)

    def root(self, level: int) -> RationalInterval:
        for s in self.steps:
            if s.level == level:
                return s.root
        raise KeyError(level)


def boundary_sign_facts(p: Poly, x0: IsolatingInterval, left) -> list:
    """Signs of every factor of g'''' on (left, x0)."""
    c = boundary_cubic()
    facts = []
    rc = count_roots(p)
    if rc.distinct_real != 0:
        raise ChainFailure(f"p has {rc.distinct_real} real roots; expected none")
    p_pos = poly_sign_on(p)
    x_pos = poly_sign_on(X, left, x0.hi)
    sq_pos = poly_sign_on(X * X - 3, left, x0.hi)
    c_neg = poly_sign_on(c, left, x0.lo)
    for fact, want, what in ((p_pos, 1, "p"), (x_pos, 1, "x"), (sq_pos, 1, "x^2-3"),
                             (c_neg, -1, "x^3-5x^2+15")):
        if fact is None or fact.sign != want:
            raise ChainFailure(f"sign of {what} on the domain is not as required")
        facts.append(fact)
    # x^2+3 has no real roots at all
    facts.append(poly_sign_on(X * X + 3))
    return facts


def largest_cubic_root(width) -> IsolatingInterval:
    roots = isolate_real_roots(boundary_cubic())
    return refine_root(boundary_cubic(), roots[-1], width)


def certify_ratio_chain(p: Poly, constants: dict, width, prec: PrecisionBudget = DEFAULT_BUDGET,
                        ) -> RatioChain:
    """Monotone chain g'''' < 0 => g''' => g'' => g' => g, each with one root.

    Raises :class:`ChainFailure` on an unexpected certified sign and
    :class:`ChainIndeterminate` when precision runs out.
    """
    width = as_rational(width)
    left = as_rational(constants["left_end"])
    check_point = as_rational(constants["check_point"])
    offset = as_rational(constants["probe_offset"])
    lam_width = min(width, as_rational(constants["lambda_root_width"]))

    x0 = largest_cubic_root(min(width, Fraction(1, 10**12)))
    facts = boundary_sign_facts(p, x0, left)

    derivs = critical_derivatives(4)
    g4 = derivs[4]
    c = boundary_cubic()
    expected = RationalFunction(X * 4 * p, c ** 3 * (X * X + 3) ** 3 * (X * X - 3) ** 3)
    if not (g4.is_rational() and g4.rational_part == expected):
        raise ChainFailure("fourth derivative of g does not factor through p")

    probes = [check_point] + [x0.lo - offset * 2 ** i for i in range(12)]
    pattern = [(left, x0.as_interval(), -1)]
    steps = []
    for level in (3, 2, 1, 0):
        fn = derivs[level].to_expr()
        w = lam_width if level == 0 else width
        step = analyze_level(fn, level, pattern, probes, prec, w)
        near = certify_sign(fn, left + offset, prec)
        step.refinement_certificates.insert(0, near)
        first_sign = step.sign_pattern[0][2]
        if not near.certified:
            raise ChainIndeterminate(f"probe right of {left} not certified at level {level}", near)
        if near.value != first_sign:
            raise ChainFailure(f"level {level}: sign right of {left} contradicts the chain", near)
        if not step.reached_width:
            raise ChainIndeterminate(f"root at level {level} not refined to the target width")
        steps.append(step)
        pattern = step.sign_pattern

    x1 = steps[-1].root
    g_pattern = [s for _, _, s in steps[-1].sign_pattern]
    # f' = K g / ln(base)^2 with K < 0 on (3, x0): f falls while g > 0, then rises
    minimum_shape = g_pattern == [1, -1]
    if not minimum_shape:
        raise ChainFailure(f"g has sign pattern {g_pattern}; f has no interior minimum")

    f = ratio_function()
    lam = mean_value_enclosure(f, ratio_derivative(), x1, prec)
    ends = (eval_expr(f, x1.lo, prec), eval_expr(f, x1.hi, prec))
    return RatioChain(x0, facts, steps, x1, lam, ends, minimum_shape, derivs)


# -- power inequality -------------------------------------------------------------

@dataclass
class InequalityVerdict:
    lam: Fraction
    verdict: str  # certified / falsified / indeterminate / out-of-range
    pieces: list = field(default_factory=list)
    witness: SignCertificate = None
    note: str = ""

    def to_json(self):
        return {
            "lambda": str(self.lam),
            "verdict": self.verdict,
            "pieces": [[str(a), str(b), how, bits] for a, b, how, bits in self.pieces],
            "witness": self.witness.to_json() if self.witness else None,
            "note": self.note,
        }


def _power_pieces(lam):
    """psi, base^lam - rhs, psi' and psi'' as expression trees."""
    lam = as_rational(lam)
    base, rhs = boundary_power_form()
    b, r = base.to_expr(), rhs.to_expr()
    psi = E.const(lam) * E.ln(b) - E.ln(r)
    gap = E.exp(E.const(lam) * E.ln(b)) - r
    d1 = LogSqrtExpression(0, [(lam, base), (-1, rhs)]).derivative()
    return psi, gap, d1.to_expr(), d1.derivative().to_expr()


def _psi_enclosure(psi, dpsi, iv: RationalInterval, prec) -> RationalInterval:
    """Naive enclosure of psi intersected with its mean-value form."""
    naive = eval_expr(psi, iv, prec)
    mv = mean_value_enclosure(psi, dpsi, iv, prec)
    return naive.intersect(mv) or mv


def verify_power_inequality(lam, x0: IsolatingInterval, lambda_max: RationalInterval = None,
                            subdivision_limit: int = 4000, left=3,
                            prec: PrecisionBudget = DEFAULT_BUDGET) -> InequalityVerdict:
    """Certify base(x)^lam >= rhs(x) for every x >= 3 by interval subdivision.

    * x = 3: both sides are exactly 1.
    * x >= x0: rhs <= 0 < base^lam (cubic sign, no sweep needed).
    * (3, x0): psi = lam ln(base) - ln(rhs) >= 0 is swept.  A piece [3, b] is
      settled by psi(3) = psi'(3) = 0 and psi'' > 0 on it; other pieces by a
      positive enclosure of psi, or near x0 of base^lam - rhs.
    """
    lam = as_rational(lam)
    left = as_rational(left)
    verdict = InequalityVerdict(lam, "indeterminate")
    if lambda_max is not None and lam > lambda_max.lo:
        verdict.verdict = "out-of-range"
        verdict.note = "lambda exceeds the certified lower bound of the best constant"
        return verdict

    psi, gap, d1, psi2 = _power_pieces(lam)
    base, rhs = boundary_power_form()
    at_left = (eval_expr(base.to_expr(), left, prec), eval_expr(rhs.to_expr(), left, prec))
    if at_left != (RationalInterval(1), RationalInterval(1)):
        verdict.verdict = "falsified"
        verdict.note = "sides do not agree at the equilateral point"
        return verdict
    c = boundary_cubic()
    beyond = poly_sign_on(c, x0.hi, None)
    if beyond is None or beyond.sign != 1 or count_roots_in(c, x0.lo, x0.hi) != 1:
        verdict.verdict = "falsified"
        verdict.note = "rhs is not certified nonpositive beyond x0"
        return verdict

    if eval_expr(d1, left, prec) != RationalInterval(0):
        verdict.verdict = "falsified"
        verdict.note = "psi'(3) is not exactly zero"
        return verdict

    stack = [(left, x0.hi)]
    used = 0
    while stack:
        a, b = stack.pop()
        used += 1
        if used > subdivision_limit:
            verdict.note = f"subdivision limit {subdivision_limit} reached"
            return verdict
        iv = RationalInterval(a, b)
        how = None
        try:
            if a == left and eval_expr(psi2, iv, prec).lo > 0:
                how = "taylor"
        except DomainError:
            pass
        if how is None and b <= x0.lo:
            try:
                if _psi_enclosure(psi, d1, iv, prec).lo >= 0:
                    how = "psi"
            except DomainError:
                pass
        if how is None and a > left:
            try:
                if eval_expr(gap, iv, prec).lo >= 0:
                    how = "gap"
            except DomainError:
                pass
        if how is not None:
            verdict.pieces.append((a, b, how, prec.working_bits))
            continue
        mid = (a + b) / 2
        if mid < x0.lo:
            cert = certify_sign(psi, mid, prec)
            if cert.value == -1:
                verdict.verdict = "falsified"
                verdict.witness = cert
                return verdict
        stack.append((mid, b))
        stack.append((a, mid))
    verdict.pieces.sort()
    verdict.verdict = "certified"
    return verdict


def recheck_power_pieces(v: InequalityVerdict, prec: PrecisionBudget = DEFAULT_BUDGET) -> bool:
    """Re-run each recorded piece test and confirm the pieces tile the range."""
    psi, gap, d1, psi2 = _power_pieces(v.lam)
    tests = {"taylor": psi2, "gap": gap}
    prev = None
    for a, b, how, _ in v.pieces:
        if prev is not None and a != prev:
            return False
        iv = RationalInterval(a, b)
        enc = _psi_enclosure(psi, d1, iv, prec) if how == "psi" else eval_expr(tests[how], iv, prec)
        if how == "taylor" and not enc.lo > 0:
            return False
        if how != "taylor" and not enc.lo >= 0:
            return False
        prev = b
    return True


# -- linear form ------------------------------------------------------------------

def isoceles_h() -> E.ExprNode:
    """h(t) = ((1+t)sqrt(1-t^2) - 3 sqrt(3) t(1-t)) / (t(1-t)(1 - (4t(1-t))^5))."""
    t = X
    quad = t * (ONE - t) * 4
    num = E.poly(ONE + t) * E.sqrt(E.poly(ONE - t * t)) - E.const(3) * E.sqrt(E.const(3)) * E.poly(t * (ONE - t))
    return num / E.poly(t * (ONE - t) * (ONE - quad ** 5))


def critical_lhs(A: Poly, radical_coefficient) -> E.ExprNode:
    """A(t) + c sqrt(3(1-t^2)) (1-t)^5 t^6, the sign-carrying part of h'."""
    t = X
    return E.poly(A) + E.const(radical_coefficient) * E.sqrt(E.poly((ONE - t * t) * 3)) \
        * E.poly((ONE - t) ** 5 * t ** 6)


def critical_derivation(A: Poly, radical_coefficient) -> bool:
    """Check (N'D - N D') sqrt(1-t^2) = (1-t)(2t-1) [A + c sqrt(3(1-t^2)) (1-t)^5 t^6].

    N, D are the numerator and denominator of h; (1-t)(2t-1) > 0 on
    (1/2, 1), so h' and the bracket share their sign there.
    """
    t = X
    c = as_rational(radical_coefficient)
    u = ONE - t * t
    N = LogSqrtExpression(0, (), [(ONE + t, u), (t * (ONE - t) * -3, 3)])
    D = t * (ONE - t) * (ONE - (t * (ONE - t) * 4) ** 5)
    lhs = (N.derivative().scale(D) - N.scale(D.derivative())).times_sqrt(u)
    pos = (ONE - t) * (t * 2 - 1)
    rhs = LogSqrtExpression(pos * A, (), [(pos * (ONE - t) ** 5 * t ** 6 * c, u * 3)])
    return lhs == rhs


@dataclass
class IsoscelesResult:
    p2_roots: list
    t1: IsolatingInterval
    t2: IsolatingInterval
    t2_certificate: SignCertificate
    t1_certificates: tuple
    k0: RationalInterval
    p4_root: IsolatingInterval
    p5_count: int
    all_p2_roots: list


def certify_isoceles_constant(p2: Poly, p4: Poly, p5: Poly, A: Poly, constants: dict, width,
                              prec: PrecisionBudget = DEFAULT_BUDGET) -> IsoscelesResult:
    """Locate t1, reject t2, evaluate k0 = h(t1) and pin it to p4's root."""
    width = as_rational(width)
    t_lo, t_hi = (as_rational(v) for v in constants["t_range"])
    t1_lo, t1_hi = (as_rational(v) for v in constants["t1_range"])
    k_lo, k_hi = (as_rational(v) for v in constants["k_range"])
    coef = as_rational(constants["radical_coefficient"])

    roots = isolate_real_roots(p2, (t_lo, t_hi))
    if len(roots) != 2:
        raise ChainFailure(f"p2 has {len(roots)} roots in ({t_lo}, {t_hi}); expected 2")
    roots = [refine_root(p2, iv, width) for iv in roots]
    inside = [iv for iv in roots if t1_lo <= iv.lo and iv.hi <= t1_hi]
    if len(inside) != 1:
        raise ChainFailure("no unique root of p2 inside the t1 range")
    t1 = inside[0]
    t2 = roots[1] if roots[0] is t1 else roots[0]

    lhs = critical_lhs(A, coef)
    t2_cert = certify_sign(lhs, t2.as_interval(), prec)
    if not t2_cert.certified:
        raise ChainIndeterminate("critical equation at t2 not certified nonzero", t2_cert)
    if t2_cert.value == 0:
        raise ChainFailure("t2 satisfies the critical equation", t2_cert)
    c_lo, c_hi = certify_sign(lhs, t1.lo, prec), certify_sign(lhs, t1.hi, prec)
    if not (c_lo.certified and c_hi.certified):
        raise ChainIndeterminate("critical equation near t1 not certified", c_lo)
    # h' < 0 before t1 and > 0 after: a minimum
    if not (c_lo.value == -1 and c_hi.value == 1):
        raise ChainFailure("critical equation does not change sign from - to + across t1", c_lo)

    k0 = eval_expr(isoceles_h(), t1.as_interval(), prec)
    if not (k_lo < k0.lo and k0.hi < k_hi):
        raise ChainFailure(f"k0 enclosure {k0} is not inside ({k_lo}, {k_hi})")
    p4_roots = isolate_real_roots(p4, (k_lo, k_hi))
    if len(p4_roots) != 1:
        raise ChainFailure(f"p4 has {len(p4_roots)} roots in ({k_lo}, {k_hi}); expected 1")
    p4_root = refine_root(p4, p4_roots[0], width)
    p5_count = count_roots_in(p5, k_lo, k_hi)
    if p5_count != 0:
        raise ChainFailure(f"p5 has {p5_count} roots in ({k_lo}, {k_hi})")
    meet = k0.intersect(p4_root.as_interval())
    if meet is None:
        raise ChainFailure("k0 enclosure misses the root of p4")
    every = [refine_root(p2, iv, width) for iv in isolate_real_roots(p2)]
    return IsoscelesResult(roots, t1, t2, t2_cert, (c_lo, c_hi), meet, p4_root, p5_count, every)


# -- equality cases ----------------------------------------------------------------

def triangle_quantities(a, b, c, prec: PrecisionBudget = DEFAULT_BUDGET):
    """(s, R, r) of the triangle with the given (interval) side lengths."""
    a, b, c = (RationalInterval.coerce(v) for v in (a, b, c))
    s = (a + b + c) / 2
    heron = s * (s - a) * (s - b) * (s - c)
    from .numeric import interval_sqrt

    area = interval_sqrt(heron, prec)
    return s, a * b * c / (area * 4), area / s


def _relative_gap(lhs: RationalInterval, rhs: RationalInterval) -> Fraction:
    diff = lhs - rhs
    return max(abs(diff.lo), abs(diff.hi)) / min(abs(lhs.lo), abs(lhs.hi))


def power_equality_gap(x1: RationalInterval, lam: RationalInterval,
                       prec: PrecisionBudget = DEFAULT_BUDGET) -> Fraction:
    """Relative gap of sqrt(3) p = 10r - r(2r/R)^lam at a:b:c = 2(x1^2-3):(x1^2+3):(x1^2+3)."""
    from .numeric import interval_exp, interval_ln, interval_sqrt

    x = RationalInterval.coerce(x1)
    sq = x * x
    s, R, r = triangle_quantities((sq - 3) * 2, sq + 3, sq + 3, prec)
    lhs = interval_sqrt(RationalInterval(3), prec) * s
    rhs = r * 10 - r * interval_exp(lam * interval_ln(r * 2 / R, prec), prec)
    return _relative_gap(lhs, rhs)


def linear_equality_gap(t1: RationalInterval, k0: RationalInterval,
                        prec: PrecisionBudget = DEFAULT_BUDGET) -> Fraction:
    """Relative gap of p = 3 sqrt(3) r + k (1 - (2r/R)^5) r at a:b:c = 2t1:1:1."""
    from .numeric import interval_sqrt

    t = RationalInterval.coerce(t1)
    s, R, r = triangle_quantities(t * 2, 1, 1, prec)
    lhs = s
    rhs = interval_sqrt(RationalInterval(27), prec) * r + k0 * (1 - (r * 2 / R) ** 5) * r
    return _relative_gap(lhs, rhs)
