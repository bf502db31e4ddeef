from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import circle, concentric
from hyperpot.poly import (
    MultiPoly,
    PolyError,
    UniPoly,
    eta_factor_count,
    evaluate,
    principal_part,
    real_root_count,
    restrict_to_line,
    sturm_sequence,
)

x1, x2 = MultiPoly.variables(2)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_evaluate_examples():
    assert evaluate(circle(), (0, 0)) == -1
    assert evaluate(circle(), (1, 0)) == 0
    assert evaluate(concentric(), (3, 0)) == 40


def test_evaluate_float_and_array():
    assert circle()((0.5, 0.5)) == pytest.approx(-0.5)
    xs = np.linspace(-1, 1, 5)
    np.testing.assert_allclose(circle()((xs, np.zeros(5))), xs**2 - 1)


def test_gradient_examples():
    assert (x1**2 + x2**2).gradient() == (2 * x1, 2 * x2)
    assert all(g.is_zero() for g in MultiPoly.constant(5, 2).gradient())
    assert (x1 * x2).gradient() == (x2, x1)


def test_principal_part_examples():
    assert principal_part(circle()) == x1**2 + x2**2
    h = x1**3 - 2 * x1 * x2**2
    assert principal_part(h) == h
    assert principal_part(concentric()) == (x1**2 + x2**2) ** 2
    with pytest.raises(PolyError):
        principal_part(MultiPoly.constant(0, 2))


def test_restrict_examples():
    assert restrict_to_line(circle(), (0, 0), (1, 0)) == UniPoly([-1, 0, 1])
    u = restrict_to_line(x1**2 - 1, (0, 0), (0, 1))
    assert u.degree() == 0 and u.coeffs == (Fraction(-1),)
    assert restrict_to_line(concentric(), (0, 0), (1, 0)) == UniPoly.from_roots([1, -1, 2, -2])
    with pytest.raises(PolyError):
        restrict_to_line(circle(), (0, 0), (0, 0))


def test_root_count_examples():
    assert real_root_count(UniPoly([-1, 0, 1])) == 2
    assert real_root_count(UniPoly([1, 0, 1])) == 0
    assert real_root_count(UniPoly.from_roots([1, -1, 2, -2]), 0) == 2
    with pytest.raises(PolyError):
        real_root_count(UniPoly([0]))


def test_root_count_multiplicity_and_interval_ends():
    u = UniPoly.from_roots([1, 2, 2, Fraction(1, 3)])
    assert real_root_count(u) == 3
    assert real_root_count(u, distinct=False) == 4
    # half-open (lo, hi]
    assert real_root_count(u, 1, 2) == 1
    assert real_root_count(u, Fraction(1, 3), 1) == 1
    assert real_root_count(u, 0, Fraction(1, 3)) == 1


def test_sturm_sequence_is_integral():
    seq = sturm_sequence(UniPoly([Fraction(1, 2), 0, Fraction(-3, 4), 1]))
    assert all(isinstance(c, int) for row in seq for c in row)


def test_eta_examples():
    assert eta_factor_count(circle()) == 1
    assert eta_factor_count(x1**2 + 2 * x2**2 - 1) == 0
    assert eta_factor_count(concentric()) == 2
    with pytest.raises(PolyError):
        eta_factor_count(MultiPoly.variables(3)[0])


def test_json_round_trip():
    p = concentric() / 3 + x1 * Fraction(2, 7)
    assert MultiPoly.from_json(p.to_json()) == p
    q = MultiPoly.from_json({"nvars": 2, "terms": [{"exp": [1, 0], "coeff": "0.25"}]})
    assert q == x1 / 4


def test_shift_matches_evaluation():
    p = concentric() + x1**3
    c = (Fraction(1, 2), Fraction(-2, 3))
    s = p.shift(c)
    for y in [(0, 0), (1, 2), (Fraction(1, 5), -3)]:
        assert evaluate(s, y) == evaluate(p, (c[0] + y[0], c[1] + y[1]))


# --- oracle: floating roots of products of integer linear factors ----------------


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.integers(0, 3))
def test_root_count_matches_numpy(roots, complex_pairs):
    u = UniPoly.from_roots(roots)
    for j in range(complex_pairs):
        u = u * UniPoly([j + 1, 0, 1])  # no real roots
    assert real_root_count(u) == len(set(roots))
    assert real_root_count(u, distinct=False) == len(roots)
    assert real_root_count(u, -2, 3) == len({r for r in roots if -2 < r <= 3})
    # float oracle on the squarefree part, where np.roots is well conditioned
    sq = u.squarefree()
    numeric = np.roots([float(c) for c in reversed(sq.coeffs)])
    assert real_root_count(sq, distinct=False) == int(np.sum(np.abs(numeric.imag) < 1e-6))


# --- properties ---------------------------------------------------------------


def _random_poly(coeffs):
    exps = [(i, j) for i in range(4) for j in range(4 - i)]
    return MultiPoly(2, {e: c for e, c in zip(exps, coeffs)})


poly_st = st.lists(fracs, min_size=10, max_size=10).map(_random_poly)


@settings(max_examples=60, deadline=None)
@given(poly_st, fracs, fracs, fracs, fracs, fracs)
def test_restriction_commutes_with_evaluation(p, a1, a2, v1, v2, t):
    if v1 == 0 and v2 == 0:
        v1 = Fraction(1)
    u = restrict_to_line(p, (a1, a2), (v1, v2))
    assert u(t) == evaluate(p, (a1 + t * v1, a2 + t * v2))
    assert u.degree() <= max(p.degree(), 0)


@settings(max_examples=40, deadline=None)
@given(poly_st, poly_st)
def test_leibniz(p, q):
    for i in range(2):
        assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


@settings(max_examples=40, deadline=None)
@given(st.lists(fracs, min_size=4, max_size=4), st.integers(0, 2))
def test_eta_increments(cs, m):
    # random cubic binary form; a real linear factor keeps it off the x1^2+x2^2 ideal
    h = MultiPoly(2, {(3 - i, i): c for i, c in enumerate(cs)})
    if h.is_zero():
        return
    base = eta_factor_count(h + 1)
    s = x1**2 + x2**2
    assert eta_factor_count(h * s**m + 1) == base + m
    assert eta_factor_count((h + 1) * s) == base + 1
