from fractions import Fraction

import mpmath
import pytest

from certipoly import expr as E
from certipoly.bestconstant import (
    boundary_cubic,
    certify_isoceles_constant,
    certify_ratio_chain,
    critical_derivatives,
    fourth_derivative_factor,
    linear_equality_gap,
    power_equality_gap,
    ratio_function,
    recheck_power_pieces,
    verify_power_inequality,
)
from certipoly.certify import (
    ChainFailure,
    PolySignFact,
    SignCertificate,
    certify_sign,
    poly_sign_on,
    recheck_step,
    refine_sign_change,
)
from certipoly.errors import InvalidInputError
from certipoly.numeric import PrecisionBudget, RationalInterval
from certipoly.polynomial import Poly

X = Poly.x()
W = Fraction(1, 10**10)


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


@pytest.fixture(scope="module")
def chain(data):
    return certify_ratio_chain(data["p"], data.const("ratio_constant"), W)


@pytest.fixture(scope="module")
def isoceles(data):
    return certify_isoceles_constant(data["p2"], data["p4"], data["p5"], data["critical"],
                                     data.const("isoceles_constant"), W)


def test_sign_certificate_examples():
    g3 = critical_derivatives(3)[3].to_expr()
    at3 = certify_sign(g3, 3)
    assert at3.sign == "positive" and at3.enclosure == RationalInterval(3)
    assert certify_sign(g3, 4).sign == "negative"
    assert certify_sign(critical_derivatives(0)[0].to_expr(), 3).sign == "zero"
    c = certify_sign(E.sqrt(E.const(2)) - E.const(Fraction(141421, 100000)), 1)
    assert c.sign == "positive" and c.recheck()


def test_indeterminate_when_budget_exhausted():
    tiny = PrecisionBudget(8, 16, 2)
    e = E.sqrt(E.const(2)) - E.const(Fraction(14142135623731, 10**13))
    assert certify_sign(e, 1, tiny).sign == "indeterminate"
    assert certify_sign(e, 1).sign == "negative"


def test_certificate_json_round_trip():
    c = certify_sign(E.ln(E.var()) - E.const(1), Fraction(5, 2))
    back = SignCertificate.from_json(c.to_json())
    assert back == c and back.recheck()


def test_refine_sign_change():
    r = refine_sign_change(E.var() * E.var() - E.const(2), 1, 2, Fraction(1, 10**12))
    assert r.reached_width and r.interval.lo ** 2 < 2 < r.interval.hi ** 2
    with pytest.raises(InvalidInputError):
        refine_sign_change(E.var(), 1, 2, Fraction(1, 10))


def test_poly_sign_facts():
    f = poly_sign_on(X * X + 1)
    assert f.sign == 1 and f.recheck()
    assert PolySignFact.from_json(f.to_json()) == f
    assert poly_sign_on(X * X - 2) is None
    assert poly_sign_on(X - 2, 3, None).sign == 1


def test_fourth_derivative_rederives_p(data):
    chk = fourth_derivative_factor(data["p"])
    assert chk.holds and chk.derived_p == data["p"]
    assert not fourth_derivative_factor(data["p"] + 1).holds


def test_ratio_chain(chain, data):
    assert [s.level for s in chain.steps] == [3, 2, 1, 0]
    ref = data.const("decimals")
    x0 = mpmath.findroot(lambda x: x ** 3 - 5 * x ** 2 + 15, 4.1)
    assert mp(chain.x0.lo) <= x0 <= mp(chain.x0.hi)
    assert abs(mp(chain.root(3).mid) - mpmath.mpf(ref["x4"]["value"])) < 1e-8
    assert abs(mp(chain.x1.mid) - mpmath.mpf(ref["x1"]["value"])) < 1e-9
    assert chain.x1.width <= W and chain.minimum_shape
    for s in chain.steps:
        assert recheck_step(s)
    assert chain.root(3).hi < chain.root(2).lo < chain.root(2).hi < chain.root(1).lo
    assert chain.root(1).hi < chain.root(0).lo


def test_lambda_max_against_oracle(chain):
    """Independent oracle: mpmath minimisation of f on (3, x0)."""
    f = lambda x: mpmath.log(-2 * (x ** 3 - 5 * x ** 2 + 15) / (x ** 2 - 3)) / \
        mpmath.log(24 * (x ** 2 - 3) / (x ** 2 + 3) ** 2)
    xm = mpmath.findroot(lambda x: mpmath.diff(f, x), 3.07)
    assert mp(chain.x1.lo) <= xm <= mp(chain.x1.hi)
    lam = chain.lambda_max
    assert mp(lam.lo) <= f(xm) <= mp(lam.hi)
    assert lam.width < Fraction(1, 10**15)
    assert abs(f(xm) - mpmath.mpf("5.97792901528")) < 1e-10


def test_ratio_function_formula_matches_oracle():
    f = ratio_function()
    for q in (Fraction(31, 10), Fraction(7, 2), Fraction(4)):
        iv = E.evaluate(f, q)
        with mpmath.workdps(80):
            x = mp(q)
            want = mpmath.log(-2 * (x ** 3 - 5 * x ** 2 + 15) / (x ** 2 - 3)) / \
                mpmath.log(24 * (x ** 2 - 3) / (x ** 2 + 3) ** 2)
            assert mp(iv.lo) <= want <= mp(iv.hi)


def test_chain_rejects_wrong_p(data):
    with pytest.raises(ChainFailure):
        certify_ratio_chain(data["p"] + X ** 17, data.const("ratio_constant"), W)


def test_power_inequality(chain):
    for lam in (5, 0, Fraction(59, 10)):
        v = verify_power_inequality(lam, chain.x0, chain.lambda_max)
        assert v.verdict == "certified", (lam, v.note)
        assert recheck_power_pieces(v)
        assert v.pieces[0][0] == 3 and v.pieces[-1][1] == chain.x0.hi


def test_power_inequality_out_of_range_and_falsified(chain):
    assert verify_power_inequality(6, chain.x0, chain.lambda_max).verdict == "out-of-range"
    v = verify_power_inequality(6, chain.x0)
    assert v.verdict == "falsified"
    assert v.witness.sign == "negative" and v.witness.recheck()


def test_power_inequality_pointwise_oracle():
    """Direct float check of base^5 >= rhs on a grid beyond the certified proof."""
    for i in range(1, 400):
        x = mpmath.mpf(3) + mpmath.mpf(i) / 100
        base = 24 * (x ** 2 - 3) / (x ** 2 + 3) ** 2
        rhs = -2 * (x ** 3 - 5 * x ** 2 + 15) / (x ** 2 - 3)
        assert base ** 5 >= rhs


def test_isoceles_constant(isoceles, data):
    r = isoceles
    assert abs(mp(r.t1.lo) - mpmath.mpf("0.5194285605")) < 1e-9
    assert abs(mp(r.t2.lo) - mpmath.mpf("0.8281776966")) < 1e-9
    assert r.t2_certificate.sign == "positive" and r.t2_certificate.recheck()
    assert [c.sign for c in r.t1_certificates] == ["negative", "positive"]
    assert r.p5_count == 0 and len(r.all_p2_roots) == 4
    assert abs(mp(r.k0.mid) - mpmath.mpf("0.689836970665")) < 1e-11
    assert r.k0.width <= W


def test_k0_against_oracle(isoceles):
    h = lambda t: ((1 + t) * mpmath.sqrt(1 - t * t) - 3 * mpmath.sqrt(3) * t * (1 - t)) / \
        (t * (1 - t) * (1 - (4 * t * (1 - t)) ** 5))
    tm = mpmath.findroot(lambda t: mpmath.diff(h, t), 0.52)
    assert mp(isoceles.t1.lo) <= tm <= mp(isoceles.t1.hi)
    assert mp(isoceles.k0.lo) - 1e-20 <= h(tm) <= mp(isoceles.k0.hi) + 1e-20


def test_equality_gaps(chain, isoceles):
    assert power_equality_gap(chain.x1, chain.lambda_max) < Fraction(1, 10**8)
    assert linear_equality_gap(isoceles.t1.as_interval(), isoceles.k0) < Fraction(1, 10**8)


def test_boundary_cubic():
    assert boundary_cubic() == X ** 3 - 5 * X ** 2 + 15
