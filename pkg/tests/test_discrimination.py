import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from certipoly.discrimination import (
    SignList,
    count_roots,
    discriminant_sequence,
    discrimination_matrix,
    revise_sign_list,
    revised_sign_list,
)
from certipoly.errors import InvalidInputError
from certipoly.isolation import cauchy_bound, isolate_real_roots, SturmChain
from certipoly.polynomial import Poly, squarefree_part
from certipoly.resultant import determinant

X = Poly.x()


def planted(rng):
    """Random polynomial with known distinct real roots and conjugate pairs."""
    n_real = rng.randint(0, 4)
    reals = rng.sample(range(-6, 7), n_real)
    pairs = set()
    while len(pairs) < rng.randint(0, (6 - n_real) // 2):
        pairs.add((rng.randint(-3, 3), rng.randint(1, 3)))
    f = Poly([rng.choice([1, 2, 3, Fraction(1, 2)])])
    for r in reals:
        f = f * (X - r) ** rng.choice([1, 1, 2])
    for a, b in pairs:
        f = f * ((X - a) ** 2 + b * b)
    return f, len(reals), len(pairs)


def test_small_examples():
    assert list(revised_sign_list(X * X + 1).signs) == [1, -1]
    assert list(revised_sign_list(X * X - 1).signs) == [1, 1]
    assert count_roots(X * X + 1).imaginary_pairs == 1
    assert count_roots(X * X - 1).distinct_real == 2
    with pytest.raises(InvalidInputError):
        discriminant_sequence(Poly([3]))


@pytest.mark.parametrize("before,after", [
    ([1, 0, 0, 1], [1, -1, -1, 1]),
    ([1, -1, 1], [1, -1, 1]),
    ([1, 0, 0, 0, -1], [1, -1, -1, 1, -1]),
    ([-1, 0, 1, 0, 0], [-1, 1, 1, 0, 0]),
    ([1, 0, 0, 0, 0, 0, 1], [1, -1, -1, 1, 1, -1, 1]),
])
def test_revision_rule(before, after):
    out = revise_sign_list(SignList(tuple(before)))
    assert list(out.signs) == after and out.revised


def test_revision_requires_unrevised():
    with pytest.raises(InvalidInputError):
        revise_sign_list(SignList((1, 1), revised=True))


def test_sequence_equals_matrix_minors():
    """D_k against leading principal minors of the discrimination matrix."""
    rng = random.Random(3)
    for _ in range(60):
        f = Poly([rng.randint(-6, 6) for _ in range(rng.randint(2, 7))])
        if f.degree < 1:
            continue
        f = f.primitive()
        M = discrimination_matrix(f)
        seq = discriminant_sequence(f).values
        for k in range(1, f.degree + 1):
            minor = [row[:2 * k] for row in M[:2 * k]]
            assert determinant(minor) == seq[k - 1]


def test_planted_factorizations():
    """10^3 polynomials of degree <= 6 with known root structure."""
    rng = random.Random(11)
    for _ in range(1000):
        f, n_real, n_pairs = planted(rng)
        if f.degree < 1:
            continue
        rc = count_roots(f)
        assert (rc.distinct_real, rc.imaginary_pairs) == (n_real, n_pairs), f
        assert len(isolate_real_roots(squarefree_part(f))) == n_real


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=8),
       st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_positive_scaling_invariance(coeffs, c):
    f = Poly(coeffs)
    if f.degree < 1:
        return
    assert revised_sign_list(f * c).signs == revised_sign_list(f).signs


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=8))
def test_count_agrees_with_sympy_and_sturm(coeffs):
    f = Poly(coeffs)
    if f.degree < 1:
        return
    rc = count_roots(f)
    x = sympy.Symbol("x")
    oracle = len(set(sympy.real_roots(sympy.Poly(list(reversed(coeffs)), x))))
    assert rc.distinct_real == oracle
    b = cauchy_bound(f)
    assert SturmChain.of(f).count(-b, b) == oracle
    assert rc.distinct_real + 2 * rc.imaginary_pairs <= f.degree


@pytest.mark.parametrize("name,changes,real", [("p", 9, 0), ("p2", 8, 4), ("p5", 16, 8)])
def test_reference_sign_lists(data, name, changes, real):
    sl = revised_sign_list(data[name])
    assert list(sl.signs) == data.const("sign_lists", name)
    assert sl.sign_changes() == changes
    rc = count_roots(data[name])
    assert rc.distinct_real == real
    assert len(isolate_real_roots(data[name])) == real


def test_sign_list_format(data):
    assert str(revised_sign_list(data["p"])) == \
        "[1, 1, -1, 1, 1, -1, -1, -1, 1, 1, -1, -1, -1, 1, 1, -1, 1, -1]"
