"""Expression trees over Q with ln, sqrt and exp, and their interval evaluation.

Trees are immutable.  Besides the elementary node kinds there is a
``poly`` leaf holding a whole :class:`Poly` in the variable, evaluated by
a Taylor-shifted Horner scheme, which keeps large rational functions both
fast and tight.

Text form is prefix notation, e.g. ``(div (ln (poly 1 0 1)) (const 3/2))``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvalidInputError, ParseError
from .numeric import (
    DEFAULT_BUDGET,
    PrecisionBudget,
    RationalInterval,
    as_rational,
    format_rational,
    interval_exp,
    interval_ln,
    interval_sqrt,
    parse_rational,
)
from .polynomial import Poly

KINDS = ("const", "var", "poly", "add", "sub", "mul", "div", "pow", "sqrt", "ln", "exp")


@dataclass(frozen=True)
class ExprNode:
    kind: str
    args: tuple = ()
    value: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown node kind {self.kind!r}")
        if self.kind == "pow" and not isinstance(self.value, int):
            raise InvalidInputError("pow exponent must be an integer")

    # -- construction helpers -------------------------------------------
    def __add__(self, other):
        return ExprNode("add", (self, wrap(other)))

    def __radd__(self, other):
        return ExprNode("add", (wrap(other), self))

    def __sub__(self, other):
        return ExprNode("sub", (self, wrap(other)))

    def __rsub__(self, other):
        return ExprNode("sub", (wrap(other), self))

    def __mul__(self, other):
        return ExprNode("mul", (self, wrap(other)))

    def __rmul__(self, other):
        return ExprNode("mul", (wrap(other), self))

    def __truediv__(self, other):
        return ExprNode("div", (self, wrap(other)))

    def __rtruediv__(self, other):
        return ExprNode("div", (wrap(other), self))

    def __neg__(self):
        return ExprNode("sub", (const(0), self))

    def __pow__(self, n: int):
        return ExprNode("pow", (self,), n)

    def __str__(self):
        return to_text(self)


def const(q) -> ExprNode:
    return ExprNode("const", (), as_rational(q))


def var() -> ExprNode:
    return ExprNode("var")


def poly(p: Poly) -> ExprNode:
    return ExprNode("poly", (), p)


def ln(e) -> ExprNode:
    return ExprNode("ln", (wrap(e),))


def sqrt(e) -> ExprNode:
    return ExprNode("sqrt", (wrap(e),))


def exp(e) -> ExprNode:
    return ExprNode("exp", (wrap(e),))


def wrap(x) -> ExprNode:
    if isinstance(x, ExprNode):
        return x
    if isinstance(x, Poly):
        return poly(x)
    return const(x)


# -- evaluation ----------------------------------------------------------------

def evaluate(e: ExprNode, at, bits: int = DEFAULT_BUDGET.working_bits) -> RationalInterval:
    """Enclosure of e over ``at`` (a rational or an interval).

    Intermediate non-degenerate intervals are rounded outward to about
    ``bits`` significant bits; point intervals stay exact.
    """
    at = RationalInterval.coerce(at if not isinstance(at, (int, str)) else as_rational(at))
    prec = PrecisionBudget(bits, max(bits, DEFAULT_BUDGET.max_bits))
    cache = {}

    def ev(node: ExprNode) -> RationalInterval:
        key = id(node)
        if key in cache:
            return cache[key][1]
        out = _eval_node(node, ev, at, prec)
        out = out.round_out(bits)
        cache[key] = (node, out)
        return out

    return ev(e)


def _eval_node(node, ev, at, prec):
    k = node.kind
    if k == "const":
        return RationalInterval.point(node.value)
    if k == "var":
        return at
    if k == "poly":
        return node.value.eval(at)
    if k == "add":
        return ev(node.args[0]) + ev(node.args[1])
    if k == "sub":
        return ev(node.args[0]) - ev(node.args[1])
    if k == "mul":
        return ev(node.args[0]) * ev(node.args[1])
    if k == "div":
        den = ev(node.args[1])
        if not den.excludes_zero():
            raise DomainError(f"denominator encloses zero: {den}", node.args[1])
        return ev(node.args[0]) / den
    if k == "pow":
        base = ev(node.args[0])
        if node.value < 0 and not base.excludes_zero():
            raise DomainError("negative power of interval enclosing zero", node.args[0])
        return base ** node.value
    if k == "ln":
        arg = ev(node.args[0])
        if arg.lo <= 0:
            raise DomainError(f"ln argument not positive: {arg}", node.args[0])
        return interval_ln(arg, prec)
    if k == "sqrt":
        arg = ev(node.args[0])
        if arg.lo < 0:
            raise DomainError(f"sqrt argument negative: {arg}", node.args[0])
        return interval_sqrt(arg, prec)
    if k == "exp":
        return interval_exp(ev(node.args[0]), prec)
    raise InvalidInputError(f"cannot evaluate node kind {k!r}")


def substitute(e: ExprNode, inner: ExprNode) -> ExprNode:
    """Replace the variable by ``inner`` (poly leaves become compositions)."""
    if e.kind == "var":
        return inner
    if e.kind == "poly":
        out = const(0)
        for c in reversed(e.value.coeffs):
            out = out * inner + const(c)
        return out
    if not e.args:
        return e
    return ExprNode(e.kind, tuple(substitute(a, inner) for a in e.args), e.value)


# -- text form -------------------------------------------------------------------

def to_text(e: ExprNode) -> str:
    if e.kind == "const":
        return f"(const {format_rational(e.value)})"
    if e.kind == "var":
        return "(var)"
    if e.kind == "poly":
        return "(poly " + " ".join(format_rational(c) for c in e.value.coeffs) + ")"
    if e.kind == "pow":
        return f"(pow {to_text(e.args[0])} {e.value})"
    return "(" + e.kind + " " + " ".join(to_text(a) for a in e.args) + ")"


def _tokenize(text: str):
    out, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch in "()":
            out.append(ch)
            i += 1
        elif ch.isspace():
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append(text[i:j])
            i = j
    return out


def from_text(text: str) -> ExprNode:
    tokens = _tokenize(text)
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ParseError(f"expected '(' at token {pos}")
        pos += 1
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression")
        kind = tokens[pos]
        pos += 1
        if kind == "const":
            node = const(parse_rational(tokens[pos]))
            pos += 1
        elif kind == "var":
            node = var()
        elif kind == "poly":
            coeffs = []
            while pos < len(tokens) and tokens[pos] != ")":
                coeffs.append(parse_rational(tokens[pos]))
                pos += 1
            node = poly(Poly(coeffs))
        elif kind == "pow":
            base = parse()
            node = ExprNode("pow", (base,), int(tokens[pos]))
            pos += 1
        elif kind in ("add", "sub", "mul", "div"):
            a = parse()
            b = parse()
            node = ExprNode(kind, (a, b))
        elif kind in ("ln", "sqrt", "exp"):
            node = ExprNode(kind, (parse(),))
        else:
            raise ParseError(f"unknown node kind {kind!r}")
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ParseError(f"expected ')' at token {pos}")
        pos += 1
        return node

    node = parse()
    if pos != len(tokens):
        raise ParseError("trailing tokens after expression")
    return node
