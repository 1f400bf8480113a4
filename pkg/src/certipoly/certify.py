"""Sign certificates, adaptive evaluation and monotone-chain root arguments.

A sign is only ever reported from an enclosure that excludes zero, or as
``zero`` when exact rational evaluation (ln of exactly 1, sqrt of an
exact square) produces the point interval [0, 0].  Running out of
precision yields ``indeterminate``, never a sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import expr as E
from .errors import InvalidInputError
from .isolation import SturmChain
from .logsqrt import LogSqrtExpression
from .numeric import (
    DEFAULT_BUDGET,
    PrecisionBudget,
    RationalInterval,
    as_rational,
    format_rational,
    parse_rational,
)
from .polynomial import Poly

SIGN_NAMES = {1: "positive", -1: "negative", 0: "zero", None: "indeterminate"}
SIGN_VALUES = {v: k for k, v in SIGN_NAMES.items()}


def as_expr(e) -> E.ExprNode:
    if isinstance(e, LogSqrtExpression):
        return e.to_expr()
    if isinstance(e, E.ExprNode):
        return e
    raise InvalidInputError(f"cannot certify a {type(e).__name__}")


def _where_to_json(where):
    if isinstance(where, RationalInterval):
        return where.to_json()
    return format_rational(where)


def _where_from_json(obj):
    if isinstance(obj, list):
        return RationalInterval.from_json(obj)
    return parse_rational(obj)


@dataclass(frozen=True)
class SignCertificate:
    subject: E.ExprNode
    point_or_interval: object
    sign: str
    bits_used: int
    enclosure: RationalInterval = None

    @property
    def value(self):
        return SIGN_VALUES[self.sign]

    @property
    def certified(self) -> bool:
        return self.sign != "indeterminate"

    def recheck(self) -> bool:
        """Re-evaluate at the recorded precision and confirm the recorded sign."""
        if not self.certified:
            return False
        enc = E.evaluate(self.subject, self.point_or_interval, self.bits_used)
        return enc.sign() == self.value

    def to_json(self, include_subject: bool = True):
        out = {
            "at": _where_to_json(self.point_or_interval),
            "sign": self.sign,
            "bits": self.bits_used,
            "enclosure": self.enclosure.to_json() if self.enclosure else None,
        }
        if include_subject:
            out["subject"] = E.to_text(self.subject)
        return out

    @classmethod
    def from_json(cls, obj, subject=None):
        subject = subject if subject is not None else E.from_text(obj["subject"])
        enc = RationalInterval.from_json(obj["enclosure"]) if obj.get("enclosure") else None
        return cls(subject, _where_from_json(obj["at"]), obj["sign"], obj["bits"], enc)


def eval_expr(e, at, prec: PrecisionBudget = DEFAULT_BUDGET, need_sign: bool = False):
    """Enclosure of e over ``at``; with ``need_sign`` precision grows until 0 is excluded."""
    node = as_expr(e)
    enc = None
    for bits in prec.schedule():
        enc = E.evaluate(node, at, bits)
        if not need_sign or enc.sign() is not None:
            return enc
    return enc


def certify_sign(e, at, prec: PrecisionBudget = DEFAULT_BUDGET) -> SignCertificate:
    """Certified sign of e at a rational point (or over an interval)."""
    node = as_expr(e)
    if not isinstance(at, RationalInterval):
        at = as_rational(at)
    enc, bits = None, prec.working_bits
    for bits in prec.schedule():
        enc = E.evaluate(node, at, bits)
        s = enc.sign()
        if s is not None:
            return SignCertificate(node, at, SIGN_NAMES[s], bits, enc)
    return SignCertificate(node, at, "indeterminate", bits, enc)


@dataclass
class Refinement:
    interval: RationalInterval
    reached_width: bool
    certificates: list = field(default_factory=list)


def refine_sign_change(e, lo, hi, width, prec: PrecisionBudget = DEFAULT_BUDGET) -> Refinement:
    """Bisect [lo, hi], whose endpoint signs differ, down to ``width``.

    Midpoints whose sign cannot be certified are nudged; if every nudge
    fails the current bracket is returned with ``reached_width=False``.
    """
    node = as_expr(e)
    lo, hi, width = as_rational(lo), as_rational(hi), as_rational(width)
    c_lo, c_hi = certify_sign(node, lo, prec), certify_sign(node, hi, prec)
    certs = [c_lo, c_hi]
    if not (c_lo.certified and c_hi.certified) or c_lo.value * c_hi.value >= 0:
        raise InvalidInputError("bracket endpoints do not carry certified opposite signs")
    s_lo = c_lo.value
    a, b = lo, hi
    while b - a > width:
        for frac in (Fraction(1, 2), Fraction(3, 8), Fraction(5, 8), Fraction(1, 4), Fraction(3, 4)):
            m = a + (b - a) * frac
            cert = certify_sign(node, m, prec)
            if cert.certified:
                break
        else:
            return Refinement(RationalInterval(a, b), False, certs)
        certs.append(cert)
        if cert.value == 0:
            return Refinement(RationalInterval(m, m), True, certs)
        if cert.value == s_lo:
            a = m
        else:
            b = m
    return Refinement(RationalInterval(a, b), True, certs)


# -- polynomial sign facts -------------------------------------------------------

@dataclass(frozen=True)
class PolySignFact:
    """``poly`` has constant sign ``sign`` on the open interval (lo, hi).

    Established by a Sturm count of zero roots on (lo, hi] plus one exact
    sample; ``lo``/``hi`` of ``None`` stand for -inf/+inf.
    """

    poly: Poly
    lo: object
    hi: object
    sign: int
    sample: Fraction

    def recheck(self) -> bool:
        return self == poly_sign_on(self.poly, self.lo, self.hi)

    def to_json(self):
        return {
            "poly": self.poly.to_json(),
            "lo": None if self.lo is None else format_rational(self.lo),
            "hi": None if self.hi is None else format_rational(self.hi),
            "sign": self.sign,
            "sample": format_rational(self.sample),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(Poly.from_json(obj["poly"]),
                   None if obj["lo"] is None else parse_rational(obj["lo"]),
                   None if obj["hi"] is None else parse_rational(obj["hi"]),
                   obj["sign"], parse_rational(obj["sample"]))


def poly_sign_on(p: Poly, lo=None, hi=None):
    """Certified constant sign of p on (lo, hi), or None if p vanishes there."""
    chain = SturmChain.of(p)
    v_lo = chain.variations_at_infinity(False) if lo is None else chain.variations_at(lo)
    v_hi = chain.variations_at_infinity(True) if hi is None else chain.variations_at(hi)
    if v_lo - v_hi != 0:
        return None
    if hi is not None and p.sign_at(hi) == 0:
        return None
    if lo is None and hi is None:
        sample = Fraction(0)
    elif lo is None:
        sample = as_rational(hi) - 1
    elif hi is None:
        sample = as_rational(lo) + 1
    else:
        sample = (as_rational(lo) + as_rational(hi)) / 2
    s = p.sign_at(sample)
    if s == 0:
        return None
    return PolySignFact(p, None if lo is None else as_rational(lo),
                        None if hi is None else as_rational(hi), s, sample)


# -- monotone chains --------------------------------------------------------------

@dataclass
class Piece:
    """Open piece (lo, hi) of the domain; ends are exact points or root intervals."""

    lo: object
    hi: object
    direction: int  # +1 increasing, -1 decreasing

    def to_json(self):
        return {"lo": _where_to_json(self.lo), "hi": _where_to_json(self.hi),
                "direction": self.direction}


@dataclass
class ChainStep:
    level: int
    pieces: list
    endpoint_certificates: list
    root: RationalInterval = None
    root_piece: int = None
    sign_pattern: list = field(default_factory=list)
    refinement_certificates: list = field(default_factory=list)
    reached_width: bool = True
    facts: list = field(default_factory=list)
    note: str = ""

    def to_json(self):
        return {
            "level": self.level,
            "pieces": [p.to_json() for p in self.pieces],
            "endpoint_certificates": [c.to_json(False) for c in self.endpoint_certificates],
            "root": self.root.to_json() if self.root else None,
            "root_piece": self.root_piece,
            "sign_pattern": [[_where_to_json(a), _where_to_json(b), s] for a, b, s in self.sign_pattern],
            "refinement_brackets": [c.to_json(False) for c in self.refinement_certificates[:3]],
            "reached_width": self.reached_width,
            "facts": [f.to_json() for f in self.facts],
            "note": self.note,
        }


class ChainFailure(Exception):
    """A sign came out other than the argument requires (falsification)."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ChainIndeterminate(Exception):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


def _piece_end_sign(fn, end, prec):
    cert = certify_sign(fn, end, prec)
    if not cert.certified:
        raise ChainIndeterminate(f"sign at {end!r} not certified", cert)
    return cert


def analyze_level(fn, level: int, pattern: list, right_probes, prec, width) -> ChainStep:
    """One link of a monotone chain on (left, x0).

    ``pattern`` is the sign pattern of fn' as [(lo, hi, sign)], where lo is
    an exact left end, interior ends are root intervals and the last hi is
    the (irrational) right end of the domain, represented by its isolating
    interval.  ``right_probes`` are rational points to the left of it,
    tried in order.  fn must have exactly one root on the domain.
    """
    pieces = [Piece(lo, hi, s) for lo, hi, s in pattern]
    certs = []
    ends = []
    for i, piece in enumerate(pieces):
        left = _piece_end_sign(fn, piece.lo, prec)
        certs.append(left)
        if i == len(pieces) - 1:
            right = None
            for probe in right_probes:
                if isinstance(piece.lo, RationalInterval) and probe <= piece.lo.hi:
                    continue
                if not isinstance(piece.lo, RationalInterval) and probe <= piece.lo:
                    continue
                cert = certify_sign(fn, probe, prec)
                if cert.certified and cert.value == piece.direction:
                    right = cert
                    break
                # sign opposite to the direction still leaves (probe, x0) open
                if cert.certified and cert.value != 0:
                    right = right or cert
            if right is None:
                raise ChainIndeterminate(f"no right probe certified at level {level}")
            if right.value != piece.direction:
                raise ChainFailure(
                    f"level {level}: sign beyond last probe not implied by monotonicity", right)
        else:
            right = _piece_end_sign(fn, piece.hi, prec)
        certs.append(right)
        ends.append((left, right))

    roots = [i for i, (l, r) in enumerate(ends) if l.value * r.value < 0]
    if len(roots) != 1:
        raise ChainFailure(f"level {level}: expected exactly one sign change, found {len(roots)}")
    i = roots[0]
    piece = pieces[i]
    left_pt = piece.lo.hi if isinstance(piece.lo, RationalInterval) else piece.lo
    right_pt = ends[i][1].point_or_interval
    if isinstance(right_pt, RationalInterval):
        right_pt = right_pt.lo
    ref = refine_sign_change(fn, left_pt, right_pt, width, prec)

    def interior_sign(j):
        l, r = ends[j]
        return l.value if l.value != 0 else r.value

    pattern_out = []
    for j, pc in enumerate(pieces):
        lo_end = pc.lo
        hi_end = pieces[-1].hi if j == len(pieces) - 1 else pc.hi
        if j == i:
            pattern_out.append((lo_end, ref.interval, ends[j][0].value or -ends[j][1].value))
            pattern_out.append((ref.interval, hi_end, ends[j][1].value))
        else:
            pattern_out.append((lo_end, hi_end, interior_sign(j)))
    # merge neighbours with equal sign
    merged = [pattern_out[0]]
    for lo_end, hi_end, s in pattern_out[1:]:
        if s == merged[-1][2]:
            merged[-1] = (merged[-1][0], hi_end, s)
        else:
            merged.append((lo_end, hi_end, s))
    return ChainStep(level, pieces, certs, ref.interval, i, merged, ref.certificates,
                     ref.reached_width)


def recheck_step(step: ChainStep) -> bool:
    """Re-derive a step's root conclusion from its own certificates."""
    if not all(c.recheck() for c in step.endpoint_certificates):
        return False
    pairs = list(zip(step.endpoint_certificates[::2], step.endpoint_certificates[1::2]))
    changes = [i for i, (l, r) in enumerate(pairs) if l.value * r.value < 0]
    if changes != [step.root_piece]:
        return False
    last_right = pairs[-1][1]
    if last_right.value != step.pieces[-1].direction:
        return False
    return True
