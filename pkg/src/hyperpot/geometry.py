"""Strict hyperbolicity, zones and surface components of real hypersurfaces.

Every per-line question is answered exactly: the polynomial is restricted to
a rational line and its real roots are counted with Sturm sequences.  Only
the choice of lines is sampled.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import MultiPoly, PolyError, UniPoly, as_fraction, evaluate, real_root_count, restrict_to_line

__all__ = [
    "GeometryError",
    "HyperbolicityReport",
    "ZoneLabel",
    "sample_directions",
    "is_strictly_hyperbolic",
    "zone_index",
    "grid_points",
    "sample_hyperbolicity_domain",
    "component_seeds",
]

JITTER = Fraction(1, 2**20)
MAX_RETRIES = 8


class GeometryError(ValueError):
    def __init__(self, message: str, code: str = "geometry_error"):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class HyperbolicityReport:
    is_hyperbolic: bool
    witness_direction: tuple[float, ...] | None
    tested_directions: int
    mode: str = "exact-on-rational-lines"

    def to_json(self) -> dict:
        return {
            "is_hyperbolic": self.is_hyperbolic,
            "witness_direction": list(self.witness_direction) if self.witness_direction else None,
            "tested_directions": self.tested_directions,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class ZoneLabel:
    k: int
    crossings_found: int
    reference_point: tuple[Fraction, ...]
    per_ref: tuple[int, ...] = field(default=())


def _rational_point(x: Sequence) -> tuple[Fraction, ...]:
    return tuple(as_fraction(c) for c in x)


def sample_directions(n: int, ndirs: int, seed: int = 0) -> list[tuple[int, ...]]:
    """Integer directions: axes, then diagonals, then seeded random ones.

    Axes and diagonals are always present, so the list may exceed ``ndirs``.
    """
    dirs: list[tuple[int, ...]] = []
    for i in range(n):
        dirs.append(tuple(int(i == j) for j in range(n)))
    for signs in itertools.product((1, -1), repeat=n - 1):
        dirs.append((1,) + signs)
    rng = np.random.default_rng(seed)
    seen = set(dirs)
    while len(dirs) < ndirs:
        v = rng.standard_normal(n)
        iv = tuple(int(c) for c in np.rint(v / np.linalg.norm(v) * 4096))
        if any(iv) and iv not in seen:
            seen.add(iv)
            dirs.append(iv)
    return dirs


def _unit(v: Sequence[int]) -> tuple[float, ...]:
    a = np.asarray(v, dtype=float)
    return tuple(float(c) for c in a / np.linalg.norm(a))


def _line_is_hyperbolic(u: UniPoly, d: int) -> bool:
    # binary form of degree d: a root at infinity of multiplicity d - deg u
    drop = d - u.degree()
    if drop > 1:
        return False
    if u.degree() <= 0:
        return drop == d  # only possible for d <= 1
    return real_root_count(u) == u.degree()


def is_strictly_hyperbolic(F: MultiPoly, x: Sequence, ndirs: int = 256, seed: int = 0) -> HyperbolicityReport:
    """Test that every sampled line through ``x`` meets the projective surface in ``deg F`` distinct real points."""
    if F.is_zero():
        raise PolyError("zero polynomial")
    x = _rational_point(x)
    if evaluate(F, x) == 0:
        raise GeometryError("point lies on the surface", "on_surface")
    d = F.degree()
    dirs = sample_directions(F.nvars, ndirs, seed)
    for count, v in enumerate(dirs, 1):
        if not _line_is_hyperbolic(restrict_to_line(F, x, v), d):
            return HyperbolicityReport(False, _unit(v), count)
    return HyperbolicityReport(True, None, len(dirs))


def _jitter(n: int, attempt: int) -> tuple[Fraction, ...]:
    rng = np.random.default_rng(attempt)
    v = rng.standard_normal(n)
    return tuple(Fraction(int(c)) / 1024 for c in np.rint(v / np.linalg.norm(v) * 1024))


def _segment_crossings(F: MultiPoly, r, x) -> int | None:
    """Distinct crossings of the segment (r, x]; ``None`` if some crossing is tangential."""
    u = restrict_to_line(F, r, [a - b for a, b in zip(x, r)])
    if u.degree() <= 0:
        return 0
    g = u.gcd(u.derivative())
    if g.degree() > 0 and real_root_count(g, 0, 1) > 0:
        return None
    return real_root_count(u, 0, 1)


def zone_index(
    F: MultiPoly,
    x: Sequence,
    refs: Sequence[Sequence],
    jitter_scale=None,
) -> ZoneLabel:
    """Minimal number of surface crossings on segments from hyperbolic ``refs`` to ``x``.

    A segment touching the surface tangentially is retried from a reference
    moved by ``2^-20 * jitter_scale`` in a seeded direction (at most 8 times).
    ``jitter_scale`` defaults to the segment length in the max norm.
    """
    if not refs:
        raise GeometryError("empty reference list", "no_refs")
    x = _rational_point(x)
    if evaluate(F, x) == 0:
        raise GeometryError("point lies on the surface", "on_surface")
    per_ref = []
    best = None
    best_ref = None
    for ref in refs:
        r0 = _rational_point(ref)
        if r0 == x:
            per_ref.append(0)
            if best is None or best > 0:
                best, best_ref = 0, r0
            continue
        scale = as_fraction(jitter_scale) if jitter_scale is not None else max(abs(a - b) for a, b in zip(x, r0))
        r = r0
        k = _segment_crossings(F, r, x)
        attempt = 0
        while k is None and attempt < MAX_RETRIES:
            attempt += 1
            r = tuple(a + JITTER * scale * j for a, j in zip(r0, _jitter(F.nvars, attempt)))
            k = _segment_crossings(F, r, x)
        if k is None:
            continue
        per_ref.append(k)
        if best is None or k < best:
            best, best_ref = k, r
    if best is None:
        raise GeometryError("all segments tangential after retries", "tangential")
    return ZoneLabel(k=best, crossings_found=best, reference_point=best_ref, per_ref=tuple(per_ref))


# ---------------------------------------------------------------------------
# Grid scans
# ---------------------------------------------------------------------------


def _parse_box(box, n: int) -> list[tuple[Fraction, Fraction]]:
    vals = [as_fraction(v) for v in box]
    if len(vals) != 2 * n:
        raise GeometryError(f"box needs {2 * n} numbers", "bad_box")
    pairs = [(vals[2 * i], vals[2 * i + 1]) for i in range(n)]
    if any(lo >= hi for lo, hi in pairs):
        raise GeometryError("degenerate box", "bad_box")
    return pairs


def grid_points(box, grid: int, n: int) -> list[tuple[Fraction, ...]]:
    """Rational grid with ``grid`` points per axis, C order (last axis fastest)."""
    if grid < 2:
        raise GeometryError("grid needs at least 2 points per axis", "bad_box")
    pairs = _parse_box(box, n)
    axes = [[lo + (hi - lo) * i / (grid - 1) for i in range(grid)] for lo, hi in pairs]
    return [tuple(p) for p in itertools.product(*axes)]


def sample_hyperbolicity_domain(
    F: MultiPoly,
    box,
    grid: int,
    ndirs: int = 64,
    seed: int = 0,
    threads: int = 1,
) -> list[tuple[tuple[Fraction, ...], ZoneLabel]]:
    """Zone label of every off-surface grid point.

    References are the first grid points that pass the hyperbolicity test;
    a further passing point becomes a reference only if the existing ones
    see it in a nonzero zone, which catches a second domain component.
    """
    n = F.nvars
    pts = [p for p in grid_points(box, grid, n) if evaluate(F, p) != 0]
    widths = [hi - lo for lo, hi in _parse_box(box, n)]
    scale = max(widths)
    refs: list[tuple[Fraction, ...]] = []
    labels: dict[tuple, ZoneLabel] = {}
    for p in pts:
        if refs:
            lab = zone_index(F, p, refs, scale)
            if lab.k == 0:
                labels[p] = lab
                continue
        if is_strictly_hyperbolic(F, p, ndirs, seed).is_hyperbolic:
            refs.append(p)
    if not refs:
        raise GeometryError("no hyperbolic point found", "no_hyperbolic_point")
    if len(refs) == 1:
        # nothing changed after discovery for the points already labelled
        todo = [p for p in pts if p not in labels]
    else:
        labels, todo = {}, pts

    def label(p):
        return p, zone_index(F, p, refs, scale)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            labels.update(ex.map(label, todo))
    else:
        labels.update(label(p) for p in todo)
    return [(p, labels[p]) for p in pts]


def _bisect_edge(f, a: np.ndarray, b: np.ndarray, fa: float, iters: int = 60) -> np.ndarray:
    lo, hi = a, b
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (fa > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def component_seeds(F: MultiPoly, box, grid: int, ndirs: int = 64, seed: int = 0) -> list[tuple[float, ...]]:
    """One surface point per component of ``M_F`` in the box, innermost first.

    Sign changes of ``F`` along grid edges are located by bisection.  Edges
    sharing a grid cell are merged into one component; component ``j`` is the
    one whose crossing edges join zone ``j - 1`` to zone ``j``.  The seed is
    the crossing with the largest first coordinate.
    """
    n = F.nvars
    pairs = _parse_box(box, n)
    labels = dict(sample_hyperbolicity_domain(F, box, grid, ndirs, seed))
    axes = [[lo + (hi - lo) * i / (grid - 1) for i in range(grid)] for lo, hi in pairs]

    def point(idx):
        return tuple(axes[a][i] for a, i in enumerate(idx))

    def sign(idx):
        v = evaluate(F, point(idx))
        return (v > 0) - (v < 0)

    signs = {idx: sign(idx) for idx in itertools.product(range(grid), repeat=n)}
    edges = []
    for idx, s in signs.items():
        for a in range(n):
            if idx[a] + 1 < grid:
                nb = idx[:a] + (idx[a] + 1,) + idx[a + 1 :]
                t = signs[nb]
                if s * t < 0 or (s == 0) != (t == 0):
                    edges.append((idx, nb))
    if not edges:
        raise GeometryError("surface does not meet the box", "no_components")

    # union-find over edges that share a cell
    parent = list(range(len(edges)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    cell_of: dict[tuple, int] = {}
    for e, (a, b) in enumerate(edges):
        axis = next(i for i in range(n) if a[i] != b[i])
        others = [i for i in range(n) if i != axis]
        for offs in itertools.product((-1, 0), repeat=n - 1):
            cell = list(a)
            for i, o in zip(others, offs):
                cell[i] += o
            if any(c < 0 or c >= grid - 1 for c in cell):
                continue
            cell = tuple(cell)
            if cell in cell_of:
                ra, rb = find(e), find(cell_of[cell])
                parent[ra] = rb
            else:
                cell_of[cell] = e

    groups: dict[int, list[int]] = {}
    for e in range(len(edges)):
        groups.setdefault(find(e), []).append(e)

    def f(p):
        return float(evaluate(F, tuple(float(c) for c in p)))

    layered = []
    for members in groups.values():
        zones = set()
        crossings = []
        for e in members:
            a, b = edges[e]
            for idx in (a, b):
                lab = labels.get(point(idx))
                if lab is not None:
                    zones.add(lab.k)
            pa = np.array([float(c) for c in point(a)])
            pb = np.array([float(c) for c in point(b)])
            fa, fb = f(pa), f(pb)
            # grid points on the surface are their own crossings
            crossings.append(pa if fa == 0 else pb if fb == 0 else _bisect_edge(f, pa, pb, fa))
        layer = max(zones) if zones else 0
        best = max(crossings, key=lambda z: (z[0], -float(np.abs(z[1:]).sum())))
        layered.append((layer, tuple(float(c) for c in best)))
    layered.sort()
    layers = [j for j, _ in layered]
    if layers != list(range(1, len(layers) + 1)):
        raise GeometryError(
            f"components do not layer as zones 1..m (found {layers})", "bad_layering"
        )
    return [s for _, s in layered]
