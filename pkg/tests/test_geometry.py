from collections import Counter, deque
from fractions import Fraction

import numpy as np
import pytest

from conftest import circle, concentric, unit_sphere
from hyperpot.geometry import (
    GeometryError,
    component_seeds,
    grid_points,
    is_strictly_hyperbolic,
    sample_directions,
    sample_hyperbolicity_domain,
    zone_index,
)
from hyperpot.poly import MultiPoly, evaluate

x1, x2 = MultiPoly.variables(2)


def test_hyperbolic_examples():
    assert is_strictly_hyperbolic(circle(), (0, 0)).is_hyperbolic
    rep = is_strictly_hyperbolic(circle(), (3, 0))
    assert not rep.is_hyperbolic
    w = np.asarray(rep.witness_direction)
    assert abs(w @ (0, 1)) > 0.99
    assert is_strictly_hyperbolic(concentric(), (0, 0), ndirs=1000).is_hyperbolic


def test_report_invariants():
    good = is_strictly_hyperbolic(circle(), (0, 0), ndirs=50)
    assert good.witness_direction is None and good.tested_directions == 50
    bad = is_strictly_hyperbolic(concentric(), (Fraction(3, 2), 0), ndirs=50)
    assert bad.witness_direction is not None
    assert np.linalg.norm(bad.witness_direction) == pytest.approx(1)


def test_projective_roots_at_infinity():
    # hyperbola: lines in asymptotic directions meet the closure at infinity
    h = x1 * x2 - 1
    assert not is_strictly_hyperbolic(h, (0, 0), ndirs=16).is_hyperbolic
    # two parallel lines share their point at infinity: a double root there
    rep = is_strictly_hyperbolic((x1 - 1) * (x1 + 1), (0, 0), ndirs=64)
    assert not rep.is_hyperbolic and abs(rep.witness_direction[1]) == pytest.approx(1)


def test_directions_deterministic():
    assert sample_directions(3, 40, seed=5) == sample_directions(3, 40, seed=5)
    assert sample_directions(2, 4)[:2] == [(1, 0), (0, 1)]


def test_zone_examples():
    F = concentric()
    assert zone_index(F, (Fraction(3, 2), 0), [(0, 0)]).k == 1
    assert zone_index(F, (3, 0), [(0, 0)]).k == 2
    assert zone_index(F, (Fraction(1, 2), 0), [(0, 0)]).k == 0
    assert zone_index(F, (0, 0), [(0, 0)]).k == 0


def test_zone_errors():
    with pytest.raises(GeometryError):
        zone_index(circle(), (1, 0), [(0, 0)])
    with pytest.raises(GeometryError):
        zone_index(circle(), (2, 0), [])


def test_tangential_segment_is_retried():
    # circle of radius 1 centred at (1, 1) touches the segment (-1,0)--(3,0) at (1, 0)
    G = (x1 - 1) ** 2 + (x2 - 1) ** 2 - 1
    lab = zone_index(G, (3, 0), [(-1, 0)])
    assert lab.k in (0, 2)
    assert tuple(lab.reference_point) != (-1, 0)
    # transversal segments keep the original ref
    lab = zone_index(G, (1, 3), [(1, -1)])
    assert lab.k == 2 and tuple(lab.reference_point) == (1, -1)


def test_zone_symmetry_circle_family():
    F = concentric()
    for p in [(Fraction(3, 2), Fraction(1, 3)), (Fraction(5, 2), Fraction(-1, 2))]:
        ks = {zone_index(F, q, [(0, 0)]).k for q in [p, (-p[0], p[1]), (p[1], p[0]), (-p[0], -p[1])]}
        assert len(ks) == 1


def test_scan_examples():
    rows = sample_hyperbolicity_domain(circle(), (-2, 2, -2, 2), 21)
    for p, lab in rows:
        assert lab.k == (0 if p[0] ** 2 + p[1] ** 2 < 1 else 1)
    rows = sample_hyperbolicity_domain(concentric(), (-3, 3, -3, 3), 21)
    counts = Counter(lab.k for _, lab in rows)
    assert set(counts) == {0, 1, 2}
    for p, lab in rows:
        r2 = p[0] ** 2 + p[1] ** 2
        assert lab.k == (0 if r2 < 1 else 1 if r2 < 4 else 2)


def test_scan_threads_identical():
    a = sample_hyperbolicity_domain(concentric(), (-3, 3, -3, 3), 9, threads=1)
    b = sample_hyperbolicity_domain(concentric(), (-3, 3, -3, 3), 9, threads=4)
    assert [(p, lab.k) for p, lab in a] == [(p, lab.k) for p, lab in b]


def test_scan_no_hyperbolic_point():
    with pytest.raises(GeometryError) as exc:
        sample_hyperbolicity_domain(x1**3 - x2**2 + 1, (-2, 2, -2, 2), 9)
    assert "no hyperbolic point found" in str(exc.value)


def test_seeds_examples():
    (s,) = component_seeds(circle(), (-2, 2, -2, 2), 21)
    assert np.allclose(s, (1, 0), atol=1e-9)
    seeds = component_seeds(concentric(), (-3, 3, -3, 3), 25)
    assert len(seeds) == 2
    assert np.linalg.norm(seeds[0]) == pytest.approx(1) and np.linalg.norm(seeds[1]) == pytest.approx(2)
    assert len(component_seeds(x1**2 / 4 + x2**2 - 1, (-3, 3, -3, 3), 21)) == 1


def test_seeds_sphere():
    (s,) = component_seeds(unit_sphere(), (-2, 2, -2, 2, -2, 2), 9)
    assert np.linalg.norm(s) == pytest.approx(1)


def test_max_zone_is_half_degree():
    x, y = MultiPoly.variables(2)
    s = x * x + y * y
    F = (s - 1) * (s - 4) * (s - 9)
    rows = sample_hyperbolicity_domain(F, (-4, 4, -4, 4), 17, ndirs=32)
    assert max(lab.k for _, lab in rows) == 3


def _grid_components(F, box, grid):
    """Flood fill of grid points joined along edges without a sign change of F."""
    pts = grid_points(box, grid, 2)
    idx = {p: i for i, p in enumerate(pts)}
    sign = [evaluate(F, p) > 0 for p in pts]
    xs = sorted({p[0] for p in pts})
    comp = [-1] * len(pts)
    c = 0
    for i0 in range(len(pts)):
        if comp[i0] >= 0:
            continue
        comp[i0] = c
        q = deque([i0])
        while q:
            i = q.popleft()
            a, b = xs.index(pts[i][0]), xs.index(pts[i][1])
            for da, db in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                if 0 <= a + da < grid and 0 <= b + db < grid:
                    j = idx[(xs[a + da], xs[b + db])]
                    if comp[j] < 0 and sign[j] == sign[i]:
                        comp[j] = c
                        q.append(j)
        c += 1
    return pts, comp


def test_hyperbolicity_constant_on_grid_components():
    F = concentric()
    pts, comp = _grid_components(F, (-3, 3, -3, 3), 13)
    verdict = {}
    zones = {p: lab.k for p, lab in sample_hyperbolicity_domain(F, (-3, 3, -3, 3), 13)}
    for p, c in zip(pts, comp):
        if evaluate(F, p) == 0:
            continue
        h = is_strictly_hyperbolic(F, p, ndirs=24).is_hyperbolic
        assert verdict.setdefault(c, (h, zones[p])) == (h, zones[p])
