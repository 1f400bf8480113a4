"""Complete discrimination system: discriminant sequences and root counts.

The discrimination matrix of ``f = a0 x^n + ... + an`` is the 2n x 2n
matrix whose rows alternate the coefficient rows of ``f`` and ``f'`` (the
latter padded with a leading zero), each pair shifted one column to the
right.  ``D_k`` is its leading principal minor of order 2k.  Removing the
first row and column of that minor leaves a Sylvester subresultant matrix
of (f, f'), which gives

    D_k = (-1)**(k(k-1)/2) * a0 * psc_{n-k}(f, f')

and lets the whole sequence come out of one subresultant PRS.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .polynomial import Poly, subresultant_prs


@dataclass(frozen=True)
class DiscriminantSequence:
    values: tuple

    @property
    def degree(self) -> int:
        return len(self.values)

    def sign_list(self) -> "SignList":
        return SignList(tuple((v > 0) - (v < 0) for v in self.values), revised=False)


@dataclass(frozen=True)
class SignList:
    signs: tuple
    revised: bool = False

    def sign_changes(self) -> int:
        nonzero = [s for s in self.signs if s]
        return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)

    def nonvanishing(self) -> int:
        return sum(1 for s in self.signs if s)

    def __str__(self):
        return "[" + ", ".join(str(s) for s in self.signs) + "]"


@dataclass(frozen=True)
class RootCount:
    distinct_real: int
    imaginary_pairs: int


def discrimination_matrix(f: Poly) -> list:
    """The 2n x 2n discrimination matrix, rows as lists of Fractions."""
    n = f.degree
    a = list(reversed(f.coeffs))
    da = [Fraction(0)] + list(reversed(f.derivative().coeffs))
    rows = []
    for i in range(n):
        for src in (a, da):
            row = [Fraction(0)] * (2 * n)
            for j, c in enumerate(src):
                if i + j < 2 * n:
                    row[i + j] = c
            rows.append(row)
    return rows


def discriminant_sequence(f: Poly) -> DiscriminantSequence:
    if f.degree < 1:
        raise InvalidInputError("discriminant sequence needs degree >= 1")
    f = f.primitive()
    n = f.degree
    seq = subresultant_prs(f, f.derivative())
    a0 = f.lc
    values = []
    for k in range(1, n + 1):
        sgn = -1 if (k * (k - 1) // 2) % 2 else 1
        values.append(sgn * a0 * seq.principal(n - k))
    return DiscriminantSequence(tuple(values))


def revise_sign_list(s: SignList) -> SignList:
    """Replace each internal zero run after s_i by -s_i, -s_i, s_i, s_i, ...

    Trailing zeros are kept; lists without internal zeros come back unchanged.
    """
    if s.revised:
        raise InvalidInputError("sign list is already revised")
    signs = list(s.signs)
    last_nonzero = max((i for i, v in enumerate(signs) if v), default=-1)
    out = list(signs)
    i = 0
    while i < last_nonzero:
        if signs[i] and not signs[i + 1]:
            base = signs[i]
            r = 1
            j = i + 1
            while not signs[j]:
                out[j] = -base if (r - 1) % 4 < 2 else base
                r += 1
                j += 1
            i = j
        else:
            i += 1
    return SignList(tuple(out), revised=True)


def revised_sign_list(f: Poly) -> SignList:
    return revise_sign_list(discriminant_sequence(f).sign_list())


def count_roots(f: Poly) -> RootCount:
    revised = revised_sign_list(f)
    v = revised.sign_changes()
    l = revised.nonvanishing()
    return RootCount(distinct_real=l - 2 * v, imaginary_pairs=v)
