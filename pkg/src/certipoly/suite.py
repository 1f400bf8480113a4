"""Certification suites and their reports.

A suite is an ordered list of steps.  Each step produces a verdict
(certified / falsified / indeterminate), a JSON-able certificate that
:func:`recheck_report` can verify without the data files, and decimal
previews next to the reference decimals they are compared against.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import expr as E
from .bestconstant import (
    boundary_cubic,
    certify_isoceles_constant,
    certify_ratio_chain,
    critical_derivation,
    critical_derivatives,
    fourth_derivative_factor,
    isoceles_h,
    linear_equality_gap,
    mean_value_enclosure,
    power_equality_gap,
    ratio_derivative,
    ratio_derivative_identity,
    ratio_function,
    recheck_power_pieces,
    verify_power_inequality,
    InequalityVerdict,
)
from .certify import (
    ChainFailure,
    ChainIndeterminate,
    PolySignFact,
    SignCertificate,
    certify_sign,
    eval_expr,
    poly_sign_on,
    recheck_step,
)
from .data import DataSet, load_polynomial
from .discrimination import count_roots, revised_sign_list
from .errors import CertipolyError, DomainError
from .isolation import SturmChain, count_roots_in, isolate_real_roots, refine_root
from .numeric import DEFAULT_BUDGET, PrecisionBudget, RationalInterval, format_rational, interval_sqrt, parse_rational
from .polynomial import Poly
from .resultant import (
    radical_elimination,
    rationalize_critical_equation,
    resultant_in_t,
    resultant_univariate,
    verify_factorization,
)

SUITES = ("theorem1", "theorem2", "conjecture", "all")
EXIT_CODES = {"certified": 0, "falsified": 1, "indeterminate": 2}
EXIT_USAGE = 3

__all__ = ["SuiteConfig", "Report", "StepRecord", "run_suite", "emit_report", "recheck_report",
           "load_polynomial", "SUITES", "EXIT_CODES", "EXIT_USAGE"]


@dataclass
class SuiteConfig:
    suite: str = "all"
    target_root_width: Fraction = Fraction(1, 10**10)
    precision: PrecisionBudget = DEFAULT_BUDGET
    data_dir: object = None
    report_path: object = None
    emit_json: bool = False

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        self.target_root_width = Fraction(self.target_root_width)
        if self.target_root_width <= 0:
            raise ValueError("target root width must be positive")


@dataclass
class StepRecord:
    id: str
    anchor: str
    verdict: str
    certificate: dict = field(default_factory=dict)
    decimals: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    ms: int = 0
    text: list = field(default_factory=list)

    def to_json(self):
        return {"id": self.id, "anchor": self.anchor, "verdict": self.verdict,
                "inputs": self.inputs, "certificate": self.certificate,
                "decimals": self.decimals, "ms": self.ms}


@dataclass
class Report:
    suite: str
    steps: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        verdicts = {s.verdict for s in self.steps}
        if "falsified" in verdicts:
            return "falsified"
        if "indeterminate" in verdicts or not self.steps:
            return "indeterminate"
        return "certified"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def step(self, step_id: str) -> StepRecord:
        for s in self.steps:
            if s.id == step_id:
                return s
        raise KeyError(step_id)

    def failing_steps(self):
        return [s for s in self.steps if s.verdict != "certified"]

    def to_json(self, timings: bool = True):
        steps = [s.to_json() for s in self.steps]
        if not timings:
            for s in steps:
                s.pop("ms")
        return {"suite": self.suite, "verdict": self.verdict, "steps": steps}


# -- helpers -------------------------------------------------------------------------

def _dec(iv, digits: int = 10) -> str:
    if isinstance(iv, RationalInterval):
        return iv.decimal(digits)
    return f"{float(iv):.{digits}g}"


def _compare_decimal(ds: DataSet, name: str, enclosure: RationalInterval) -> dict:
    """Widen the enclosure by the reference tolerance and test containment."""
    ref = ds.const("decimals", name)
    value, tol = Fraction(ref["value"]), parse_rational(ref["tolerance"])
    widened = RationalInterval(enclosure.lo - tol, enclosure.hi + tol)
    return {"computed": _dec(enclosure), "reference": ref["value"],
            "enclosure": enclosure.to_json(), "tolerance": ref["tolerance"],
            "within_tolerance": value in widened}



class _Runner:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.ds = DataSet(config.data_dir)
        self.prec = config.precision
        self.width = config.target_root_width
        self.report = Report(config.suite)
        self._memo = {}

    def digest(self, *names):
        out = {}
        for n in names:
            self.ds[n]
            out[n] = self.ds.digests[n]
        return out

    def step(self, step_id, anchor, fn, inputs=()):
        start = time.perf_counter()
        rec = StepRecord(step_id, anchor, "indeterminate")
        try:
            rec.inputs = self.digest(*inputs)
            fn(rec)
        except ChainFailure as exc:
            rec.verdict = "falsified"
            rec.certificate = {"error": str(exc)}
            if exc.certificate is not None:
                rec.certificate["witness"] = exc.certificate.to_json()
        except ChainIndeterminate as exc:
            rec.verdict = "indeterminate"
            rec.certificate = {"error": str(exc)}
        except DomainError as exc:
            rec.verdict = "indeterminate"
            rec.certificate = {"error": f"evaluation left the domain: {exc}"}
        rec.ms = int((time.perf_counter() - start) * 1000)
        self.report.steps.append(rec)
        return rec

    def _shared(self, key, compute):
        if key not in self._memo:
            try:
                self._memo[key] = compute()
            except (ChainFailure, ChainIndeterminate, DomainError) as exc:
                self._memo[key] = exc
        value = self._memo[key]
        if isinstance(value, Exception):
            raise value
        return value

    # -- shared computations --------------------------------------------------------
    def chain(self):
        return self._shared("chain", lambda: certify_ratio_chain(
            self.ds["p"], self.ds.const("ratio_constant"), self.width, self.prec))

    def isoceles(self):
        return self._shared("isoceles", lambda: certify_isoceles_constant(
            self.ds["p2"], self.ds["p4"], self.ds["p5"], self.ds["critical"],
            self.ds.const("isoceles_constant"), self.width, self.prec))

    # -- generic step bodies -------------------------------------------------------
    def sign_list_step(self, name):
        def body(rec):
            f = self.ds[name]
            sl = revised_sign_list(f)
            rc = count_roots(f)
            expected = self.ds.const("sign_lists", name)
            expected_count = self.ds.const("root_counts", name)
            ok = list(sl.signs) == expected and rc.distinct_real == expected_count
            rec.verdict = "certified" if ok else "falsified"
            rec.certificate = {"kind": "sign_list", "poly": f.to_json(), "sign_list": list(sl.signs),
                               "sign_changes": sl.sign_changes(), "nonvanishing": sl.nonvanishing(),
                               "distinct_real": rc.distinct_real,
                               "imaginary_pairs": rc.imaginary_pairs, "expected": expected}
            rec.text.append(f"revised sign list {sl}")
            rec.text.append(f"sign changes {sl.sign_changes()}, nonvanishing {sl.nonvanishing()}, "
                            f"distinct real roots {rc.distinct_real}")
        return body

    # -- power form ---------------------------------------------------------------------
    def theorem1(self):
        ds = self.ds

        def rederive_p(rec):
            chk = fourth_derivative_factor(ds["p"])
            ident = ratio_derivative_identity()
            rec.verdict = "certified" if chk.holds and ident else "falsified"
            rec.certificate = {"kind": "identity", "derived": chk.derived_p.to_json(),
                               "transcribed": ds["p"].to_json(), "derivative_identity": ident}
            rec.text.append("fourth derivative of g = 4x p(x) / (c^3 (x^2+3)^3 (x^2-3)^3): "
                            + ("matches" if chk.holds else "MISMATCH"))

        self.step("p-rederivation", "fourth derivative of g factors as 4x p(x) over the cubic denominators",
                  rederive_p, ["p"])
        self.step("signlist-p", "revised sign list of the discriminant sequence of p(x)",
                  self.sign_list_step("p"), ["p"])

        def p_positive(rec):
            p = ds["p"]
            fact = poly_sign_on(p)
            ok = fact is not None and fact.sign == 1 and p.sign_at(0) == 1
            rec.verdict = "certified" if ok else "falsified"
            rec.certificate = {"kind": "poly_facts", "facts": [fact.to_json()] if fact else []}
            rec.text.append(f"p(0) = {p.eval(Fraction(0))} > 0 and no real roots: p > 0 on R")

        self.step("p-positive", "p(x) > 0 for all real x", p_positive, ["p"])

        def x0_step(rec):
            c = boundary_cubic()
            roots = isolate_real_roots(c)
            x0 = refine_root(c, roots[-1], self.width)
            rec.verdict = "certified"
            rec.certificate = {"kind": "isolated", "poly": c.to_json(), "intervals": [x0.to_json()],
                               "root_count": len(roots)}
            rec.decimals = {"x0": _compare_decimal(ds, "x0", x0.as_interval())}
            rec.text.append(f"x0 in {x0.to_json()} ~ {x0.decimal()}")

        self.step("x0-isolation", "largest real root x0 of x^3 - 5x^2 + 15", x0_step)

        def third_signs(rec):
            g3 = critical_derivatives(3)[3].to_expr()
            pts = ds.const("ratio_constant")
            at3 = certify_sign(g3, parse_rational(pts["left_end"]), self.prec)
            at4 = certify_sign(g3, parse_rational(pts["check_point"]), self.prec)
            exact3 = at3.enclosure is not None and at3.enclosure == RationalInterval(3)
            if not (at3.certified and at4.certified):
                rec.verdict = "indeterminate"
            else:
                rec.verdict = "certified" if exact3 and at4.value == -1 else "falsified"
            rec.certificate = {"kind": "sign_certificates", "certificates": [at3.to_json(), at4.to_json()]}
            rec.text.append(f"g'''(3) = {at3.enclosure} ({at3.sign}); g'''(4) {at4.sign}")

        self.step("third-derivative-signs", "g'''(3) = 3 > 0 and g'''(4) < 0", third_signs)

        def chain_step(rec):
            ch = self.chain()
            subjects = {str(s.level): E.to_text(ch.derivatives[s.level].to_expr()) for s in ch.steps}
            rec.verdict = "certified"
            rec.certificate = {"kind": "chain", "x0": ch.x0.to_json(),
                               "facts": [f.to_json() for f in ch.facts],
                               "subjects": subjects,
                               "steps": [s.to_json() for s in ch.steps]}
            names = {3: "x4", 2: "x3", 1: "x2", 0: "x1"}
            for s in ch.steps:
                key = names[s.level]
                rec.text.append(f"level {s.level}: one root {key} ~ {s.root.decimal()}, "
                                f"sign pattern {[p[2] for p in s.sign_pattern]}")
                if key in ds.const("decimals"):
                    rec.decimals[key] = _compare_decimal(ds, key, s.root)
                else:
                    rec.decimals[key] = {"computed": s.root.decimal(), "enclosure": s.root.to_json()}

        self.step("monotone-chain", "g'''' < 0 on (3, x0) and each of g''', g'', g', g has one root there",
                  chain_step, ["p"])

        def lam_step(rec):
            ch = self.chain()
            ends = ch.lambda_at_ends
            union = ends[0].hull(ends[1]).hull(ch.lambda_max)
            rec.verdict = "certified"
            rec.certificate = {"kind": "enclosure", "x1": ch.x1.to_json(),
                               "lambda_max": ch.lambda_max.to_json(),
                               "endpoint_values": [e.to_json() for e in ends],
                               "width": format_rational(ch.lambda_max.width)}
            rec.decimals = {"lambda_max": _compare_decimal(ds, "lambda_max", union)}
            rec.text.append(f"lambda_max = f(x1) in {ch.lambda_max.decimal(12)} "
                            f"(width {float(ch.lambda_max.width):.3g})")

        self.step("lambda-max", "best constant lambda_max = f(x1) = min of f on (3, x0)",
                  lam_step, ["p"])

        lam = parse_rational(ds.const("conjecture", "lambda"))
        self.step(f"power-inequality-{format_rational(lam)}",
                  f"power form holds for all x >= 3 at lambda = {format_rational(lam)}",
                  self.power_step(lam))

        def equality(rec):
            ch = self.chain()
            gap = power_equality_gap(ch.x1, ch.lambda_max, self.prec)
            tol = parse_rational(ds.const("equality_tolerance"))
            rec.verdict = "certified" if gap <= tol else "falsified"
            rec.certificate = {"kind": "equality", "x1": ch.x1.to_json(),
                               "lambda": ch.lambda_max.to_json(), "relative_gap": f"{float(gap):.3e}",
                               "tolerance": format_rational(tol)}
            rec.text.append(f"triangle 2(x1^2-3):(x1^2+3):(x1^2+3), relative gap {float(gap):.3e}")

        self.step("equality-triangle-power", "equality at a:b:c = 2(x1^2-3):(x1^2+3):(x1^2+3), lambda = f(x1)",
                  equality)

    def power_step(self, lam):
        def body(rec):
            ch = self.chain()
            limit = self.ds.const("ratio_constant", "subdivision_limit")
            v = verify_power_inequality(lam, ch.x0, ch.lambda_max, limit, prec=self.prec)
            rec.verdict = {"certified": "certified", "falsified": "falsified"}.get(v.verdict, "indeterminate")
            rec.certificate = {"kind": "pieces", **v.to_json()}
            rec.text.append(f"lambda = {format_rational(lam)}: {v.verdict}, {len(v.pieces)} pieces {v.note}".rstrip())
        return body

    # -- linear form ----------------------------------------------------------------
    def theorem2(self):
        ds = self.ds
        self.step("signlist-p2", "revised sign list of the discriminant sequence of p2(t)",
                  self.sign_list_step("p2"), ["p2"])

        def roots_step(rec):
            r = self.isoceles()
            rec.verdict = "certified"
            rec.certificate = {"kind": "isolated", "poly": ds["p2"].to_json(),
                               "intervals": [iv.to_json() for iv in r.p2_roots],
                               "all_roots": [iv.to_json() for iv in r.all_p2_roots]}
            rec.decimals = {"t1": _compare_decimal(ds, "t1", r.t1.as_interval()),
                            "t2": _compare_decimal(ds, "t2", r.t2.as_interval()),
                            "all_real_roots": [iv.decimal() for iv in r.all_p2_roots]}
            rec.text.append(f"p2 roots in (1/2, 1): t1 ~ {r.t1.decimal()}, t2 ~ {r.t2.decimal()}")
            rec.text.append("all real roots: " + ", ".join(iv.decimal() for iv in r.all_p2_roots))

        self.step("p2-roots", "p2 has exactly two roots t1 < t2 in (1/2, 1)", roots_step, ["p2"])

        def rationalize(rec):
            coef = ds.const("isoceles_constant", "radical_coefficient")
            chk = rationalize_critical_equation(ds["critical"], parse_rational(coef), ds["p2"])
            derived = critical_derivation(ds["critical"], coef)
            rec.verdict = "certified" if chk.holds and derived else "falsified"
            rec.certificate = {"kind": "identity", "lhs": chk.lhs.to_json(), "rhs": chk.rhs.to_json(),
                               "derivative_identity": derived, "degree": chk.degree}
            rec.text.append("A^2 - 3 c^2 (1-t^2)(1-t)^10 t^12 = p2 (t+1)(2t-1)^3: "
                            + ("holds" if chk.holds else "FAILS"))

        self.step("rationalize", "squaring the critical equation of h gives p2(t)(t+1)(2t-1)^3",
                  rationalize, ["p2", "critical"])

        def extraneous(rec):
            r = self.isoceles()
            rec.verdict = "certified"
            rec.certificate = {"kind": "sign_certificates",
                               "certificates": [r.t2_certificate.to_json()] + [c.to_json() for c in r.t1_certificates]}
            rec.text.append(f"critical equation at t2: {r.t2_certificate.sign} (extraneous); "
                            f"across t1: {r.t1_certificates[0].sign} -> {r.t1_certificates[1].sign}")

        self.step("extraneous-root", "t2 does not satisfy the critical equation; t1 does",
                  extraneous, ["p2", "critical"])

        elim = {}

        def p3_step(rec):
            e = radical_elimination()
            elim["e"] = e
            ok = e.reduced == ds["p3"]
            rec.verdict = "certified" if ok else "falsified"
            rec.certificate = {"kind": "elimination", "cofactor": e.cofactor.to_json(),
                               "normalization": format_rational(e.normalization),
                               "matches_transcription": ok}
            rec.text.append(f"eliminant = {format_rational(e.normalization)} * ({e.cofactor.to_string('t')}) * p3: "
                            + ("matches" if ok else "MISMATCH"))

        self.step("p3-rederivation", "p3(t,k) re-derived by eliminating both radicals", p3_step, ["p3"])

        res = {}

        def resultant_step(rec):
            R = resultant_in_t(ds["p2"], ds["p3"])
            res["R"] = R
            rec.verdict = "certified" if R.degree == ds["p4"].degree + ds["p5"].degree else "falsified"
            rec.certificate = {"kind": "resultant", "degree": R.degree, "digest": R.digest()}
            rec.text.append(f"Res_t(p2, p3) has degree {R.degree} in k")

        self.step("resultant", "Res_t(p2, p3) by evaluation and interpolation", resultant_step, ["p2", "p3"])

        def factor_step(rec):
            if "R" not in res or "e" not in elim:
                rec.certificate = {"note": "resultant or elimination missing"}
                return
            R, e = res["R"], elim["e"]
            m = Fraction(ds["m"])
            cof_res = resultant_univariate(ds["p2"], e.cofactor) * e.normalization ** ds["p2"].degree
            # Res_t(p2, eliminant) = Res(p2, cofactor) * Res_t(p2, p3)
            literal = verify_factorization(R, [ds["p4"], ds["p5"]], m)
            full = verify_factorization(R * cof_res, [ds["p4"], ds["p5"]], m)
            reduced = verify_factorization(R, [ds["p4"], ds["p5"]], m / cof_res)
            rec.verdict = "certified" if full and reduced else "falsified"
            rec.certificate = {"kind": "factorization", "resultant": R.to_json(),
                               "factors": [ds["p4"].to_json(), ds["p5"].to_json()],
                               "constant_eliminant": format_rational(m),
                               "cofactor_resultant": format_rational(cof_res),
                               "constant_reduced": format_rational(m / cof_res),
                               "reduced_constant_is_m": literal}
            rec.text.append("Res_t(p2, eliminant) = m p4 p5: " + ("exact" if full else "FAILS"))
            rec.text.append(f"Res_t(p2, p3) = m / {format_rational(cof_res)} * p4 p5: "
                            + ("exact" if reduced else "FAILS"))

        self.step("verify_factorization", "resultant factors as m p4(k) p5(k)", factor_step,
                  ["p2", "p3", "p4", "p5", "m"])
        self.step("signlist-p5", "revised sign list of the discriminant sequence of p5(k)",
                  self.sign_list_step("p5"), ["p5"])

        def placement(rec):
            p5 = ds["p5"]
            ivs = isolate_real_roots(p5)
            ref = [[parse_rational(a), parse_rational(b)] for a, b in
                   ds.const("isoceles_constant", "p5_root_intervals")]
            placed = []
            for iv in ivs:
                w = Fraction(1, 1000)
                iv = refine_root(p5, iv, w)
                placed.append(iv)
            inside = len(placed) == len(ref) and all(
                lo <= iv.lo and iv.hi <= hi for iv, (lo, hi) in zip(placed, ref))
            k_lo, k_hi = (parse_rational(v) for v in ds.const("isoceles_constant", "k_range"))
            gap = count_roots_in(p5, k_lo, k_hi)
            rec.verdict = "certified" if inside and gap == 0 else "falsified"
            rec.certificate = {"kind": "isolated", "poly": p5.to_json(),
                               "intervals": [iv.to_json() for iv in placed],
                               "reference": ds.const("isoceles_constant", "p5_root_intervals"),
                               "count_in_k_range": gap}
            rec.decimals = {"roots": [iv.decimal() for iv in placed]}
            rec.text.append(f"{len(placed)} roots, each inside its reference interval: {inside}; "
                            f"roots in ({k_lo}, {k_hi}): {gap}")

        self.step("p5-placement", "p5 roots lie in the listed intervals and none in (1/2, 9/13)",
                  placement, ["p5"])

        def p4_step(rec):
            r = self.isoceles()
            rec.verdict = "certified"
            rec.certificate = {"kind": "isolated", "poly": ds["p4"].to_json(),
                               "intervals": [r.p4_root.to_json()]}
            rec.text.append(f"p4 has one root in (1/2, 9/13) ~ {r.p4_root.decimal()}")

        self.step("p4-root", "p4 has exactly one root in (1/2, 9/13)", p4_step, ["p4"])

        def k0_step(rec):
            r = self.isoceles()
            rec.verdict = "certified"
            rec.certificate = {"kind": "enclosure", "t1": r.t1.to_json(), "k0": r.k0.to_json(),
                               "p5_count": r.p5_count}
            rec.decimals = {"k0": _compare_decimal(ds, "k0", r.k0)}
            rec.text.append(f"k0 = h(t1) in {r.k0.decimal(12)}, the root of p4 there")

        self.step("k0", "k0 = h(t1) is the minimum of h and the root of p4 in (1/2, 9/13)",
                  k0_step, ["p2", "p4", "p5"])

        def equality(rec):
            r = self.isoceles()
            gap = linear_equality_gap(r.t1.as_interval(), r.k0, self.prec)
            tol = parse_rational(ds.const("equality_tolerance"))
            rec.verdict = "certified" if gap <= tol else "falsified"
            rec.certificate = {"kind": "equality", "t1": r.t1.to_json(), "k0": r.k0.to_json(),
                               "relative_gap": f"{float(gap):.3e}", "tolerance": format_rational(tol)}
            rec.text.append(f"triangle 2t1:1:1, relative gap {float(gap):.3e}")

        self.step("equality-triangle-linear", "equality at a:b:c = 2t1:1:1 with k = k0", equality)

    # -- conjecture ----------------------------------------------------------------
    def conjecture(self):
        ds = self.ds
        lam = parse_rational(ds.const("conjecture", "lambda"))
        k_sq = parse_rational(ds.const("conjecture", "k_squared"))

        def lam_cmp(rec):
            ch = self.chain()
            ok = lam < ch.lambda_max.lo
            rec.verdict = "certified" if ok else "falsified"
            rec.certificate = {"kind": "comparison", "value": format_rational(lam),
                               "bound": ch.lambda_max.to_json()}
            rec.text.append(f"{format_rational(lam)} < {ch.lambda_max.decimal()} = lambda_max")

        self.step("lambda-comparison", "lambda = 5 is below the best power constant", lam_cmp,
                  ["p"])

        def k_cmp(rec):
            r = self.isoceles()
            k = interval_sqrt(RationalInterval(k_sq), self.prec)
            ok = k.hi < r.k0.lo
            rec.verdict = "certified" if ok else "falsified"
            rec.certificate = {"kind": "comparison", "value": k.to_json(), "bound": r.k0.to_json()}
            rec.text.append(f"sqrt(3)/3 ~ {k.decimal()} < {r.k0.decimal()} = k0")

        self.step("k-comparison", "k = sqrt(3)/3 is below the best linear constant", k_cmp,
                  ["p2", "p4", "p5"])

        if not any(s.id == f"power-inequality-{format_rational(lam)}" for s in self.report.steps):
            self.step(f"power-inequality-{format_rational(lam)}",
                      f"power form holds for all x >= 3 at lambda = {format_rational(lam)}",
                      self.power_step(lam))

    def run(self) -> Report:
        suite = self.config.suite
        if suite in ("theorem1", "all"):
            self.theorem1()
        if suite in ("theorem2", "all"):
            self.theorem2()
        if suite in ("conjecture", "all"):
            self.conjecture()
        return self.report


def run_suite(config: SuiteConfig) -> Report:
    """Run a suite; data problems raise, mathematical outcomes become verdicts."""
    return _Runner(config).run()


def format_text(report: Report) -> str:
    lines = [f"suite {report.suite}: {report.verdict}"]
    for s in report.steps:
        lines.append(f"[{s.verdict}] {s.id}: {s.anchor} ({s.ms} ms)")
        lines.extend("    " + t for t in s.text)
        if s.verdict != "certified" and "error" in s.certificate:
            lines.append("    error: " + s.certificate["error"])
        for name, d in s.decimals.items():
            if isinstance(d, dict) and "reference" in d:
                mark = "ok" if d["within_tolerance"] else "DIFFERS"
                lines.append(f"    {name} = {d['computed']} (reference {d['reference']}, {mark})")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, config: SuiteConfig) -> str:
    """Write the text report (and JSON if asked); return the text."""
    text = format_text(report)
    if config.report_path:
        path = Path(config.report_path)
        path.write_text(text)
        if config.emit_json:
            path.with_suffix(".json").write_text(report_json(report))
    return text


def report_json(report: Report, timings: bool = True) -> str:
    return json.dumps(report.to_json(timings), indent=1, sort_keys=True) + "\n"


# -- re-checking ---------------------------------------------------------------------

def _recheck_certificate(cert: dict, prec: PrecisionBudget) -> bool:
    kind = cert.get("kind")
    if kind == "sign_list":
        f = Poly.from_json(cert["poly"])
        sl = revised_sign_list(f)
        return list(sl.signs) == cert["sign_list"] and count_roots(f).distinct_real == cert["distinct_real"]
    if kind == "poly_facts":
        return all(PolySignFact.from_json(f).recheck() for f in cert["facts"]) and bool(cert["facts"])
    if kind == "isolated":
        f = Poly.from_json(cert["poly"])
        chain = SturmChain.of(f)
        for lo, hi in cert["intervals"]:
            lo, hi = parse_rational(lo), parse_rational(hi)
            if f.sign_at(lo) == 0 or f.sign_at(hi) == 0 or chain.count(lo, hi) != 1:
                return False
        return True
    if kind == "sign_certificates":
        return all(SignCertificate.from_json(c).recheck() for c in cert["certificates"])
    if kind == "chain":
        if not all(PolySignFact.from_json(f).recheck() for f in cert["facts"]):
            return False
        from .certify import ChainStep, Piece

        for st in cert["steps"]:
            subject = E.from_text(cert["subjects"][str(st["level"])])
            certs = [SignCertificate.from_json(c, subject) for c in st["endpoint_certificates"]]
            pieces = [Piece(None, None, p["direction"]) for p in st["pieces"]]
            step = ChainStep(st["level"], pieces, certs, root_piece=st["root_piece"])
            if not recheck_step(step):
                return False
            brackets = [SignCertificate.from_json(c, subject) for c in st["refinement_brackets"]]
            if not all(b.recheck() for b in brackets):
                return False
        return True
    if kind == "pieces":
        v = InequalityVerdict(parse_rational(cert["lambda"]), cert["verdict"],
                              [(parse_rational(a), parse_rational(b), how, bits)
                               for a, b, how, bits in cert["pieces"]])
        return v.verdict != "certified" or recheck_power_pieces(v, prec)
    if kind == "factorization":
        R = Poly.from_json(cert["resultant"])
        factors = [Poly.from_json(f) for f in cert["factors"]]
        return verify_factorization(R, factors, parse_rational(cert["constant_reduced"]))
    if kind == "enclosure" and "lambda_max" in cert:
        x1 = RationalInterval.from_json(cert["x1"])
        enc = mean_value_enclosure(ratio_function(), ratio_derivative(), x1, prec)
        return RationalInterval.from_json(cert["lambda_max"]).contains(enc)
    if kind == "enclosure" and "k0" in cert:
        t1 = RationalInterval.from_json(cert["t1"])
        k0 = RationalInterval.from_json(cert["k0"])
        return eval_expr(isoceles_h(), t1, prec).intersect(k0) is not None
    if kind == "equality":
        tol = parse_rational(cert["tolerance"])
        if "x1" in cert:
            gap = power_equality_gap(RationalInterval.from_json(cert["x1"]),
                                     RationalInterval.from_json(cert["lambda"]), prec)
        else:
            gap = linear_equality_gap(RationalInterval.from_json(cert["t1"]),
                                      RationalInterval.from_json(cert["k0"]), prec)
        return gap <= tol
    if kind == "comparison":
        v = cert["value"]
        value = RationalInterval.from_json(v).hi if isinstance(v, list) else parse_rational(v)
        return value < RationalInterval.from_json(cert["bound"]).lo
    if kind == "identity" and "lhs" in cert:
        return Poly.from_json(cert["lhs"]) == Poly.from_json(cert["rhs"])
    if kind == "identity":
        return Poly.from_json(cert["derived"]) == Poly.from_json(cert["transcribed"])
    return True


def recheck_report(report_obj, prec: PrecisionBudget = DEFAULT_BUDGET) -> dict:
    """Re-verify every certified step of a JSON report from its own contents.

    Returns {step id: bool}.  Steps whose certificate kind carries nothing
    independently checkable count as passing.
    """
    if isinstance(report_obj, (str, bytes)):
        report_obj = json.loads(report_obj)
    out = {}
    for st in report_obj["steps"]:
        if st["verdict"] != "certified":
            out[st["id"]] = False
            continue
        try:
            out[st["id"]] = bool(_recheck_certificate(st["certificate"], prec))
        except (CertipolyError, KeyError, ValueError):
            out[st["id"]] = False
    return out
