import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpot.lattice import (
    GeneratorSet,
    Lattice,
    LatticeError,
    LinearForm,
    build_D_tilde,
    build_model_hyperbolic,
    build_plane_curve_model,
    cartan_D,
    dtilde_rank_check,
    fixed_vectors,
    form_kernel,
    imaginary_root,
    inner,
    orbit,
    pl_reflect,
    pl_transvect,
    probe_completely_infinite,
    quotient_lattice,
    short_vectors,
    value_spectrum,
)

A2 = Lattice([[2, -1], [-1, 2]])
SKEW = Lattice([[0, 1], [-1, 0]], "skew")
ONE = Lattice([[2]])


def all_basis(L, **kw):
    return GeneratorSet(L, tuple(L.basis(i) for i in range(L.rank)), **kw)


# --- examples -----------------------------------------------------------------


def test_inner_examples():
    assert inner(ONE, (1,), (1,)) == 2
    assert inner(SKEW, (1, 0), (0, 1)) == 1
    D4 = cartan_D(4)
    adjacent = [(i, j) for i in range(4) for j in range(i + 1, 4) if D4.gram[i][j]]
    assert adjacent and all(D4.gram[i][j] == -1 for i, j in adjacent)
    with pytest.raises(LatticeError):
        inner(ONE, (1, 0), (1,))


def test_lattice_validation():
    with pytest.raises(LatticeError):
        Lattice([[1]])
    with pytest.raises(LatticeError):
        Lattice([[2, 1], [0, 2]])
    with pytest.raises(LatticeError):
        Lattice([[0, 1], [1, 0]], "skew")
    assert Lattice.from_json(A2.to_json()) == A2


def test_reflect_examples():
    assert pl_reflect(ONE, (1,), (1,)) == (-1,)
    L = Lattice([[2, 0], [0, 2]])
    assert pl_reflect(L, (0, 3), (1, 0)) == (0, 3)
    assert pl_reflect(A2, (0, 1), (1, 0)) == (1, 1)
    with pytest.raises(LatticeError):
        pl_reflect(L, (1, 0), (1, 1))
    with pytest.raises(LatticeError) as exc:
        pl_reflect(SKEW, (1, 0), (0, 1))
    assert exc.value.code == "needs_symmetric"


def test_transvect_examples():
    assert pl_transvect(SKEW, (0, 1), (0, 1)) == (0, 1)
    once = pl_transvect(SKEW, (1, 0), (0, 1))
    assert once == (1, 1)
    assert pl_transvect(SKEW, once, (0, 1)) == (1, 2)
    with pytest.raises(LatticeError):
        pl_transvect(A2, (1, 0), (0, 1))


def test_orbit_examples():
    rep = orbit(all_basis(ONE), (1,))
    assert set(rep.vectors) == {(1,), (-1,)} and rep.closed
    D4 = cartan_D(4)
    rep = orbit(all_basis(D4), D4.basis(1))
    assert len(rep) == 24 and rep.closed
    assert set(rep.vectors) == set(short_vectors(D4, 2))
    rep = orbit(GeneratorSet(SKEW, ((0, 1),), action="transvect"), (1, 0), max_depth=6)
    assert rep.status == "truncated"
    assert set(rep.vectors) == {(1, m) for m in range(7)}
    assert rep.depth_profile == list(range(1, 8))
    with pytest.raises(LatticeError):
        orbit(all_basis(ONE), (1,), max_size=0)


def test_depth_profile_is_deterministic():
    D4 = cartan_D(4)
    a = orbit(all_basis(D4), D4.basis(0))
    b = orbit(all_basis(D4), D4.basis(0))
    assert a.vectors == b.vectors and a.depth_profile == b.depth_profile == [1, 3, 7, 13, 20, 24]


def test_spectrum_examples():
    rep = orbit(all_basis(ONE), (1,))
    assert value_spectrum(LinearForm([0]), rep) == {0}
    assert value_spectrum(LinearForm.dual(0, 1), rep) == {1, -1}
    m = build_plane_curve_model(2, 0, 1)
    assert len(m.spectrum) == 4
    trunc = orbit(GeneratorSet(SKEW, ((0, 1),), action="transvect"), (1, 0), max_depth=3)
    with pytest.raises(LatticeError):
        value_spectrum(LinearForm([0, 1]), trunc)
    assert value_spectrum(LinearForm([0, 1]), trunc, allow_truncated=True) == {0, 1, 2, 3}


def test_kernel_examples():
    assert form_kernel(A2) == []
    assert form_kernel(Lattice([[2, 0], [0, 0]])) == [(0, 1)]
    assert form_kernel(build_D_tilde(4).lattice) == [imaginary_root(4)]


def test_kernel_is_saturated():
    # gram*v = 0 has solution (2, -1) only up to saturation of (4, -2)
    L = Lattice([[2, 4], [4, 8]])
    (k,) = form_kernel(L)
    assert abs(math.gcd(*k)) == 1 and L.gram_times(k) == (0, 0)


def test_quotient_examples():
    q = quotient_lattice(A2)
    assert q.target == A2 and q.project((3, -4)) == (3, -4)
    q = quotient_lattice(build_D_tilde(4).lattice)
    assert q.target.rank == 4 and q.target.determinant() == 4
    assert len(short_vectors(q.target, 2)) == 24
    assert quotient_lattice(Lattice([[0, 0], [0, 0]])).target.rank == 0
    with pytest.raises(LatticeError):
        quotient_lattice(Lattice([[2, 0], [0, 0]]), [(1, 0)])
    with pytest.raises(LatticeError):
        quotient_lattice(Lattice([[2, 0], [0, 0]]), [(0, 2)])


def test_quotient_project_lift():
    q = quotient_lattice(build_D_tilde(5).lattice)
    for c in itertools.product(range(-1, 2), repeat=q.target.rank):
        assert q.project(q.lift(c)) == c


def test_fixed_vector_examples():
    assert fixed_vectors(all_basis(A2)) == []
    assert fixed_vectors(GeneratorSet(Lattice([[2, 0], [0, 2]]), ((1, 0),))) == [(0, 1)]
    G, A = build_model_hyperbolic(2, 5)
    fixed = fixed_vectors(G.subset("second"))
    M = np.array(fixed, dtype=float)
    assert np.linalg.matrix_rank(np.vstack([M, A])) == np.linalg.matrix_rank(M)


def test_dtilde_examples():
    G = build_D_tilde(4)
    assert G.lattice.rank == 5 and len(form_kernel(G.lattice)) == 1
    assert len(form_kernel(build_D_tilde(4, zero_rank=2).lattice)) == 3
    assert build_D_tilde(4, parity_sign=-1).lattice.gram[0][0] == -2
    # m = 3 closes the affine diagram into a 4-cycle
    assert form_kernel(build_D_tilde(3).lattice) == [imaginary_root(3)]
    with pytest.raises(LatticeError):
        build_D_tilde(2)


def test_dtilde_rank_report():
    # the quadric model and the homology rank differ by one for odd n; reported, not asserted
    for n in (2, 3, 4, 5):
        rep = dtilde_rank_check(n)
        assert rep["quotient_plus_kernel"] == rep["model_rank"]
        assert rep["rank_H"] == 2 * n


def test_hyperbolic_model_examples():
    G, A = build_model_hyperbolic(1, 3)
    assert abs(G.lattice.inner(A, A)) == 2
    G, A = build_model_hyperbolic(3, 4, parity_sign=1)
    assert G.lattice.inner(A, A) == 6
    G, A = build_model_hyperbolic(3, 4, parity_sign=-1)
    assert G.lattice.inner(A, A) == -6
    with pytest.raises(LatticeError):
        build_model_hyperbolic(0, 3)


def test_plane_curve_examples():
    assert build_plane_curve_model(2, 0, 1).orbit_size == 4
    assert build_plane_curve_model(4, 2, 2).orbit_size == 1
    assert build_plane_curve_model(3, 0, 1).orbit_size == 9
    with pytest.raises(LatticeError):
        build_plane_curve_model(2, 0, 3)


def test_plane_curve_big_orbit_is_multinomial():
    for d, k in [(2, 1), (3, 1), (4, 2)]:
        m = build_plane_curve_model(d, 0, k, big=True)
        expected = math.factorial(2 * d) // (math.factorial(k) ** 2 * math.factorial(2 * d - 2 * k))
        assert m.big_orbit_size == expected


def test_plane_curve_custom_weights():
    m = build_plane_curve_model(3, 0, 1, weights=([1, 1, 1], [0, 0, 5]))
    assert m.spectrum == {1, 6}
    with pytest.raises(LatticeError):
        build_plane_curve_model(3, 0, 1, weights=([1], [1]))


def test_probe_examples():
    G = build_D_tilde(4)
    D4 = quotient_lattice(G.lattice).induced_generators(G)
    rep = probe_completely_infinite(D4, D4.generators[0], LinearForm([1, 2, 0, -1]))
    assert rep.verdict == "finite"
    H = Lattice([[2, -3], [-3, 2]])
    rep = probe_completely_infinite(all_basis(H), (1, 0), LinearForm.dual(0, 2))
    assert rep.verdict == "growth-consistent-with-infinite"
    assert all(a < b for a, b in zip(rep.counts, rep.counts[1:]))
    with pytest.raises(LatticeError) as exc:
        probe_completely_infinite(GeneratorSet(Lattice([[2, 0], [0, 2]]), ((1, 0),)), (0, 1), LinearForm([1, 1]))
    assert exc.value.code == "orthogonal_start"


def test_probe_reduces_dtilde_kernel():
    G = build_D_tilde(4)
    delta = imaginary_root(4)
    form = LinearForm(G.lattice.gram_times((1, 0, 0, 0, 0)))  # vanishes on the kernel
    assert form(delta) == 0
    rep = probe_completely_infinite(G, G.generators[1], form)
    assert rep.verdict == "finite"


def test_generator_json_round_trip():
    G, _ = build_model_hyperbolic(2, 4)
    H = GeneratorSet.from_json(G.lattice, G.to_json())
    assert H.generators == G.generators and H.kinds == G.kinds


# --- properties ---------------------------------------------------------------


@st.composite
def even_lattice_with_roots(draw):
    n = draw(st.integers(2, 5))
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = draw(st.sampled_from([2, -2]))
        for j in range(i + 1, n):
            gram[i][j] = gram[j][i] = draw(st.integers(-3, 3))
    return Lattice(gram)


vecs = st.lists(st.integers(-20, 20), min_size=5, max_size=5)


@settings(max_examples=200, deadline=None)
@given(even_lattice_with_roots(), vecs, vecs, st.integers(0, 4))
def test_reflection_involutive_and_isometric(L, u, v, i):
    u, v, kappa = tuple(u[: L.rank]), tuple(v[: L.rank]), L.basis(i % L.rank)
    su, sv = pl_reflect(L, u, kappa), pl_reflect(L, v, kappa)
    assert pl_reflect(L, su, kappa) == u
    assert L.inner(su, sv) == L.inner(u, v)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.data())
def test_transvection_isometric(h, data):
    n = 2 * h
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = data.draw(st.integers(-3, 3))
            gram[i][j], gram[j][i] = a, -a
    L = Lattice(gram, "skew")
    u, v, k = (tuple(data.draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))) for _ in range(3))
    sign = data.draw(st.sampled_from([1, -1]))
    assert L.inner(pl_transvect(L, u, k, sign), pl_transvect(L, v, k, sign)) == L.inner(u, v)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 6), st.lists(st.integers(-2, 2), min_size=7, max_size=7))
def test_evenness_and_affine_hyperplane(m, coords):
    G = build_D_tilde(m)
    v = tuple(coords[: m + 1])
    # all generators but one span the sublattice M
    rep = orbit(GeneratorSet(G.lattice, G.generators[1:]), v, max_size=400, max_depth=6)
    M = np.array(G.generators[1:], dtype=float)
    r = np.linalg.matrix_rank(M)
    for w in rep.vectors:
        assert G.lattice.inner(w, w) % 2 == 0
        diff = np.subtract(w, v)
        assert np.linalg.matrix_rank(np.vstack([M, diff])) == r


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 5), st.lists(st.integers(-2, 2), min_size=6, max_size=6), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_kernel_invariance(m, coords, wcoefs):
    G = build_D_tilde(m)
    L = G.lattice
    (delta,) = form_kernel(L)
    for g in G.generators:
        assert pl_reflect(L, delta, g) == delta
    v = tuple(coords[: m + 1])
    if not any(L.inner(v, g) for g in G.generators):
        return
    form = LinearForm(L.gram_times(tuple(wcoefs[: m + 1])))
    q = quotient_lattice(L)
    qG = q.induced_generators(G)
    qform = q.induced_form(form)
    qrep = orbit(qG, q.project(v), max_size=50_000)
    assert qrep.closed
    rep = orbit(G, v, max_depth=len(qrep.depth_profile), max_size=200_000)
    for w in rep.vectors:
        assert qform(q.project(w)) == form(w)
    assert value_spectrum(form, rep, allow_truncated=True) == value_spectrum(qform, qrep)


@settings(max_examples=100, deadline=None)
@given(even_lattice_with_roots(), st.lists(st.integers(-4, 4), min_size=5, max_size=5), st.data())
def test_fixed_vectors_definition(L, v, data):
    idx = data.draw(st.lists(st.integers(0, L.rank - 1), min_size=1, max_size=3, unique=True))
    G = GeneratorSet(L, tuple(L.basis(i) for i in idx))
    fixed = fixed_vectors(G)
    for f in fixed:
        assert all(pl_reflect(L, f, g) == f for g in G.generators)
    v = tuple(v[: L.rank])
    is_fixed = all(pl_reflect(L, v, g) == v for g in G.generators)
    in_span = bool(fixed) and np.linalg.matrix_rank(np.vstack([fixed, v])) == len(fixed)
    if not fixed:
        in_span = not any(v)
    assert is_fixed == in_span
