import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperpot.milnor import MilnorError, mu_codim2, mu_hypersurface, rank_H


def test_mu_hypersurface_examples():
    assert mu_hypersurface(2, 7) == 1
    assert mu_hypersurface(3, 3) == 8
    assert mu_hypersurface(1, 4) == 0


def test_mu_codim2_examples():
    assert mu_codim2(2, 2, 3) == 5
    assert mu_codim2(3, 2, 3) == 13
    assert mu_codim2(1, 1, 3) == 0


def test_rank_examples():
    r = rank_H(2, 3)
    assert (r.rank_H, r.mu_tilde, r.mu, r.nu) == (6, 1, 5, 6)
    assert rank_H(3, 3).rank_H == 21
    assert rank_H(4, 2).rank_H == 16
    with pytest.raises(MilnorError):
        rank_H(1, 3)


def test_big_values_are_exact():
    assert mu_hypersurface(12, 12) == 11**12
    assert rank_H(12, 12).rank_H == rank_H(12, 12).nu


def test_cross_identity_grid():
    for d in range(2, 13):
        for n in range(2, 13):
            r = rank_H(d, n)
            assert r.rank_H == mu_hypersurface(d, n) + mu_codim2(d, 2, n) == r.nu


@given(st.integers(1, 9), st.integers(1, 9), st.integers(2, 9))
def test_codim2_symmetric(a, b, n):
    assert mu_codim2(a, b, n) == mu_codim2(b, a, n) >= 0


def test_monotone():
    for d in range(2, 12):
        for n in range(2, 12):
            r = rank_H(d, n).rank_H
            assert r <= rank_H(d + 1, n).rank_H
            assert r <= rank_H(d, n + 1).rank_H


def test_report_json():
    assert rank_H(3, 3).to_json() == {"d": 3, "n": 3, "mu_tilde": 8, "mu": 13, "nu": 21, "rank_H": 21}
