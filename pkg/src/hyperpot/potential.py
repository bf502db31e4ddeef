"""Potentials and attraction forces of standard charges on real hypersurfaces.

A charge is a list of parametrized patches, each carrying the weight of the
standard charge ``dV/dF`` with respect to its parameters, a density
polynomial and an orientation sign per surface component.  Integrals are
computed by adaptive tensor Gauss-Legendre cubature on the parameter box.

Two kinds of patches exist:

* :class:`EllipsoidPatch` -- explicit ellipse/ellipsoid parametrization.
* :class:`RadialPatch` -- the ``j``-th intersection of rays from a point of
  the hyperbolicity domain with the surface.  Every such ray meets each
  oval exactly once, so this parametrizes each compact component of a
  hyperbolic surface by the unit sphere of directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .poly import MultiPoly, as_fraction, evaluate

__all__ = [
    "PotentialError",
    "QuadConfig",
    "QuadratureResult",
    "sphere_area",
    "kernel_G",
    "kernel_grad",
    "charge_weight",
    "EllipsoidPatch",
    "RadialPatch",
    "SurfaceChargeSpec",
    "ellipsoid_polynomial",
    "ellipsoid_charge",
    "arnold_charge",
    "adaptive_cubature",
    "potential",
    "attraction_force",
    "confocal_ellipsoid",
    "polynomial_fit_check",
    "ray_scan",
]


class PotentialError(ValueError):
    def __init__(self, message: str, code: str = "potential_error"):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class QuadConfig:
    tol: float = 1e-8
    order: int = 8
    max_nodes: int = 4_000_000
    standoff: float = 1e-3  # minimum distance to a component, relative to its diameter

    def __post_init__(self):
        if self.tol <= 0 or self.order < 2 or self.max_nodes < 1 or self.standoff < 0:
            raise PotentialError("invalid quadrature configuration", "bad_config")


@dataclass
class QuadratureResult:
    value: float | np.ndarray
    error_estimate: float
    nodes_used: int
    converged: bool = True


# ---------------------------------------------------------------------------
# Kernel and charge density
# ---------------------------------------------------------------------------


def sphere_area(n: int) -> float:
    """Area ``C_n`` of the unit sphere in R^n."""
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


def kernel_G(n: int, r):
    """Fundamental solution of the Laplacian in R^n as a function of distance."""
    if n < 2:
        raise PotentialError("dimension must be at least 2", "bad_dimension")
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise PotentialError("kernel needs r > 0", "bad_radius")
    if n == 2:
        out = np.log(r) / (2 * math.pi)
    else:
        out = -(r ** (2 - n)) / ((n - 2) * sphere_area(n))
    return float(out) if out.ndim == 0 else out


def kernel_grad(n: int, diff: np.ndarray) -> np.ndarray:
    """Gradient of ``G`` at ``diff`` (rows are vectors): ``diff / (C_n |diff|^n)``."""
    r = np.linalg.norm(diff, axis=-1, keepdims=True)
    return diff / (sphere_area(n) * r**n)


def _grad_norm(F: MultiPoly, z: np.ndarray) -> np.ndarray:
    cols = tuple(z[..., i] for i in range(F.nvars))
    return np.sqrt(sum(np.asarray(evaluate(g, cols), dtype=float) ** 2 for g in F.gradient()))


def charge_weight(F: MultiPoly, z, tol: float = 1e-6):
    """Density ``1/|grad F|`` of the standard charge against surface measure.

    ``z`` is a point or an array of points (last axis = coordinates).
    """
    z = np.asarray(z, dtype=float)
    cols = tuple(z[..., i] for i in range(F.nvars))
    fv = np.abs(np.asarray(evaluate(F, cols), dtype=float))
    g = _grad_norm(F, z)
    if np.any(g == 0):
        raise PotentialError("critical point on the surface", "critical_point")
    if np.any(fv > tol * np.maximum(1.0, g)):
        raise PotentialError("point is not on the surface", "off_surface")
    out = 1.0 / g
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Patches
# ---------------------------------------------------------------------------


def _directions(n: int, params: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit directions and the solid-angle density of the chart.

    n=2: angle on ``[0, 2pi)``; n=3: (polar, azimuth) on ``[0, pi] x [0, 2pi)``,
    with density ``sin(polar)``.  Both charts are smooth up to the poles.
    """
    if n == 2:
        th = params[:, 0]
        return np.stack([np.cos(th), np.sin(th)], axis=1), np.ones(len(th))
    th, ph = params[:, 0], params[:, 1]
    s = np.sin(th)
    return np.stack([s * np.cos(ph), s * np.sin(ph), np.cos(th)], axis=1), s


def _param_box(n: int):
    if n == 2:
        return np.array([0.0]), np.array([2 * math.pi])
    if n == 3:
        return np.array([0.0, 0.0]), np.array([math.pi, 2 * math.pi])
    raise PotentialError("surface patches exist only in R^2 and R^3", "bad_dimension")


def ellipsoid_polynomial(semiaxes: Sequence[float], center: Sequence[float] | None = None) -> MultiPoly:
    """Canonical equation ``sum (x_i - c_i)^2 / a_i^2 - 1``."""
    n = len(semiaxes)
    center = [0.0] * n if center is None else list(center)
    xs = MultiPoly.variables(n)
    F = MultiPoly.constant(-1, n)
    for xi, a, c in zip(xs, semiaxes, center):
        F = F + (xi - as_fraction(c)) ** 2 * Fraction(1.0 / (float(a) * float(a)))
    return F


class EllipsoidPatch:
    """Ellipse (n=2) or ellipsoid (n=3) ``c + (a_1 w_1, ..., a_n w_n)``."""

    def __init__(self, semiaxes: Sequence[float], center: Sequence[float] | None = None, component: int = 1):
        self.semiaxes = np.array(semiaxes, dtype=float)
        self.n = len(self.semiaxes)
        if np.any(self.semiaxes <= 0):
            raise PotentialError("semiaxes must be positive", "bad_parameter")
        self.center = np.zeros(self.n) if center is None else np.array(center, dtype=float)
        self.component = component
        self.F = ellipsoid_polynomial(semiaxes, self.center)
        self.lo, self.hi = _param_box(self.n)

    def evaluate(self, params: np.ndarray):
        a = self.semiaxes
        w, _ = _directions(self.n, params)
        z = self.center + w * a
        th = params[:, 0]
        if self.n == 2:
            jac = np.hypot(a[0] * np.sin(th), a[1] * np.cos(th))
        else:
            # |dz/dtheta x dz/dphi|
            s, ph = np.sin(th), params[:, 1]
            jac = s * np.sqrt(
                (a[1] * a[2] * s * np.cos(ph)) ** 2
                + (a[0] * a[2] * s * np.sin(ph)) ** 2
                + (a[0] * a[1] * np.cos(th)) ** 2
            )
        # analytic |grad F| of the canonical equation
        g = 2 * np.linalg.norm((z - self.center) / a**2, axis=1)
        return z, jac / g


class RadialPatch:
    """The ``component``-th surface point along rays from ``center``."""

    def __init__(self, F: MultiPoly, center: Sequence, component: int, n_components: int | None = None):
        self.F = F
        self.n = F.nvars
        self.center_exact = tuple(as_fraction(c) for c in center)
        self.center = np.array([float(c) for c in self.center_exact])
        self.component = component
        self.d = F.degree()
        shifted = F.shift(self.center_exact)
        self._parts = [shifted.homogeneous_part(k) for k in range(self.d + 1)]
        self.lo, self.hi = _param_box(self.n)
        probe = self._positive_roots(np.array([[0.0]] if self.n == 2 else [[0.0, 0.0]]))
        self.n_components = probe.shape[1] if n_components is None else n_components
        if not 1 <= component <= self.n_components:
            raise PotentialError("component index out of range", "bad_parameter")

    def _coeffs(self, omega: np.ndarray) -> np.ndarray:
        cols = tuple(omega[:, i] for i in range(self.n))
        return np.stack(
            [np.broadcast_to(np.asarray(evaluate(p, cols), dtype=float), omega.shape[:1]) for p in self._parts],
            axis=1,
        )

    def _positive_roots(self, params: np.ndarray, omega: np.ndarray | None = None) -> np.ndarray:
        omega = _directions(self.n, params)[0] if omega is None else omega
        c = self._coeffs(omega)
        lead = c[:, -1]
        if np.any(np.abs(lead) < 1e-14):
            raise PotentialError("asymptotic direction: surface is not compact", "noncompact")
        d = self.d
        comp = np.zeros((len(c), d, d))
        comp[:, 0, :] = -c[:, -2::-1] / lead[:, None]
        if d > 1:
            comp[:, np.arange(1, d), np.arange(d - 1)] = 1.0
        ev = np.linalg.eigvals(comp)
        # complex pairs never count as surface points
        real = np.abs(ev.imag) <= 1e-9 * (1 + np.abs(ev))
        roots = np.sort(np.where(real, ev.real, -np.inf), axis=1)
        pos = roots > 0
        counts = pos.sum(axis=1)
        if not np.all(counts == counts[0]):
            raise PotentialError("rays meet the surface a varying number of times", "not_star_shaped")
        out = roots[:, d - counts[0] :]
        for _ in range(3):
            val = np.zeros_like(out)
            der = np.zeros_like(out)
            for k in range(d, -1, -1):
                der = der * out + val
                val = val * out + c[:, k : k + 1]
            out = out - val / der
        return out

    def evaluate(self, params: np.ndarray):
        omega, dens = _directions(self.n, params)
        r = self._positive_roots(params, omega)[:, self.component - 1]
        c = self._coeffs(omega)
        der = np.zeros_like(r)
        for k in range(self.d, 0, -1):
            der = der * r + k * c[:, k]
        z = self.center + r[:, None] * omega
        # dV/dF restricted to the ray: solid angle * r^(n-1) / |dF/dr|
        return z, dens * r ** (self.n - 1) / np.abs(der)


@dataclass
class SurfaceChargeSpec:
    F: MultiPoly
    patches: list
    density: MultiPoly | None = None
    signs: tuple[int, ...] = ()
    reference: tuple | None = None  # a point of the hyperbolicity domain, if known

    def __post_init__(self):
        if not self.signs:
            self.signs = tuple(1 if p.component % 2 else -1 for p in self.patches)
        if len(self.signs) != len(self.patches):
            raise PotentialError("one sign per patch", "bad_parameter")
        if self.density is not None and self.density.nvars != self.F.nvars:
            raise PotentialError("density has the wrong number of variables", "bad_parameter")

    @property
    def n(self) -> int:
        return self.F.nvars

    def arnold_signs_ok(self) -> bool:
        return all(s == (1 if p.component % 2 else -1) for s, p in zip(self.signs, self.patches))

    def check_on_surface(self, samples: int = 64, tol: float = 1e-9) -> float:
        """Max ``|F(z)| / |grad F(z)|`` over a sample of patch points."""
        worst = 0.0
        for p in self.patches:
            grids = [np.linspace(lo, hi, samples, endpoint=False) + (hi - lo) / (2 * samples) for lo, hi in zip(p.lo, p.hi)]
            params = np.stack([g.ravel() for g in np.meshgrid(*grids, indexing="ij")], axis=1)
            z, _ = p.evaluate(params)
            cols = tuple(z[:, i] for i in range(self.n))
            fv = np.abs(np.asarray(evaluate(self.F, cols), dtype=float)) / _grad_norm(self.F, z)
            worst = max(worst, float(fv.max()))
        if worst > tol:
            raise PotentialError(f"patch points leave the surface (|F|/|grad F| = {worst:.3g})", "off_surface")
        return worst

    def density_at(self, z: np.ndarray) -> np.ndarray:
        if self.density is None:
            return np.ones(len(z))
        cols = tuple(z[:, i] for i in range(self.n))
        return np.broadcast_to(np.asarray(evaluate(self.density, cols), dtype=float), (len(z),))


def ellipsoid_charge(
    semiaxes: Sequence[float],
    density: MultiPoly | None = None,
    center: Sequence[float] | None = None,
) -> SurfaceChargeSpec:
    """Standard charge on one ellipse/ellipsoid, natural orientation."""
    patch = EllipsoidPatch(semiaxes, center)
    ref = tuple(patch.center)
    return SurfaceChargeSpec(patch.F, [patch], density, (1,), reference=ref)


def arnold_charge(F: MultiPoly, center: Sequence, density: MultiPoly | None = None, check: bool = True) -> SurfaceChargeSpec:
    """Standard charge on every compact component, with alternating orientations.

    ``center`` must be a point of the hyperbolicity domain; components are
    numbered outward from it.
    """
    if check:
        from .geometry import is_strictly_hyperbolic

        if not is_strictly_hyperbolic(F, center, ndirs=64).is_hyperbolic:
            raise PotentialError("center is not in the hyperbolicity domain", "not_hyperbolic")
    first = RadialPatch(F, center, 1)
    patches = [first] + [RadialPatch(F, center, j, first.n_components) for j in range(2, first.n_components + 1)]
    return SurfaceChargeSpec(F, patches, density, reference=tuple(as_fraction(c) for c in center))


# ---------------------------------------------------------------------------
# Adaptive cubature
# ---------------------------------------------------------------------------


def adaptive_cubature(
    func: Callable[[np.ndarray], np.ndarray],
    lo: Sequence[float],
    hi: Sequence[float],
    tol: float,
    order: int = 8,
    max_nodes: int = 4_000_000,
    initial: Sequence[int] | None = None,
) -> QuadratureResult:
    """Integrate a vector-valued ``func`` over a box.

    Each panel is integrated by an ``order``-point tensor Gauss-Legendre
    rule on the panel and on its ``2^dim`` halves; the difference is the
    panel error.  Panels whose error exceeds ``tol / #panels`` are split
    until the summed error is below ``tol`` or the node budget is spent.
    The budget is checked between refinement rounds, so the initial pass
    and the last round always complete.  ``func`` maps an ``(N, dim)`` array to ``(N, m)``.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    dim = len(lo)
    xg, wg = np.polynomial.legendre.leggauss(order)
    ref_nodes = np.stack([g.ravel() for g in np.meshgrid(*([xg] * dim), indexing="ij")], axis=1)
    ref_w = np.prod(np.stack([g.ravel() for g in np.meshgrid(*([wg] * dim), indexing="ij")], axis=1), axis=1)
    offsets = np.stack([g.ravel() for g in np.meshgrid(*([np.array([-0.5, 0.5])] * dim), indexing="ij")], axis=1)
    nsub = len(offsets)

    if initial is None:
        initial = [4] * dim if dim == 1 else [4, 8]
    edges = [np.linspace(lo[i], hi[i], initial[i] + 1) for i in range(dim)]
    mids = [0.5 * (e[1:] + e[:-1]) for e in edges]
    halves = [0.5 * (e[1:] - e[:-1]) for e in edges]
    centers = np.stack([g.ravel() for g in np.meshgrid(*mids, indexing="ij")], axis=1)
    halfw = np.stack([g.ravel() for g in np.meshgrid(*halves, indexing="ij")], axis=1)

    def rule(c, h):
        nodes = c[:, None, :] + h[:, None, :] * ref_nodes[None]
        vals = np.asarray(func(nodes.reshape(-1, dim)), dtype=float)
        vals = vals.reshape(len(c), len(ref_w), -1)
        return np.einsum("pqm,q->pm", vals, ref_w) * np.prod(h, axis=1)[:, None]

    def estimate(c, h):
        coarse = rule(c, h)
        cc = (c[:, None, :] + h[:, None, :] * offsets[None]).reshape(-1, dim)
        ch = np.repeat(h / 2, nsub, axis=0)
        fine = rule(cc, ch).reshape(len(c), nsub, -1).sum(axis=1)
        return fine, np.abs(fine - coarse).max(axis=1), len(c) * len(ref_w) * (1 + nsub)

    fine, err, nodes = estimate(centers, halfw)
    converged = True
    while err.sum() > tol:
        if nodes >= max_nodes:
            converged = False
            break
        split = err > tol / len(err)
        if not split.any():
            split = err >= err.max()
        c_new = (centers[split][:, None, :] + halfw[split][:, None, :] * offsets[None]).reshape(-1, dim)
        h_new = np.repeat(halfw[split] / 2, nsub, axis=0)
        f_new, e_new, used = estimate(c_new, h_new)
        nodes += used
        keep = ~split
        centers = np.concatenate([centers[keep], c_new])
        halfw = np.concatenate([halfw[keep], h_new])
        fine = np.concatenate([fine[keep], f_new])
        err = np.concatenate([err[keep], e_new])
    value = fine.sum(axis=0)
    return QuadratureResult(value=value, error_estimate=float(err.sum()), nodes_used=int(nodes), converged=converged)


# ---------------------------------------------------------------------------
# Potentials and forces
# ---------------------------------------------------------------------------


def _coarse_nodes(patch, m: int = 24) -> np.ndarray:
    grids = [np.linspace(lo, hi, m) for lo, hi in zip(patch.lo, patch.hi)]
    params = np.stack([g.ravel() for g in np.meshgrid(*grids, indexing="ij")], axis=1)
    return patch.evaluate(params)[0]


def _diameter(patch) -> float:
    if not hasattr(patch, "_diam"):
        z = _coarse_nodes(patch)
        patch._diam = float(np.ptp(z, axis=0).max())
    return patch._diam


def _check_standoff(patch, x: np.ndarray, standoff: float) -> None:
    # coarse pre-check; the cubature nodes give a sharper estimate afterwards
    z = _coarse_nodes(patch)
    dist = float(np.linalg.norm(z - x, axis=1).min())
    if dist < standoff * _diameter(patch):
        raise PotentialError(f"point is within {dist:.3g} of the surface", "too_close")


def _integrate(spec: SurfaceChargeSpec, x, quad: QuadConfig, kind: str) -> QuadratureResult:
    x = np.asarray([float(c) for c in x])
    n = spec.n
    if len(x) != n:
        raise PotentialError("point has the wrong dimension", "bad_dimension")
    if evaluate(spec.F, tuple(as_fraction(c) for c in x)) == 0:
        raise PotentialError("point lies on the surface", "too_close")
    for patch in spec.patches:
        _check_standoff(patch, x, quad.standoff)
    mind = [np.inf]
    total = np.zeros(1 if kind == "potential" else n)
    err = 0.0
    nodes = 0
    ok = True
    for patch, sign in zip(spec.patches, spec.signs):

        def integrand(params, patch=patch):
            z, w = patch.evaluate(params)
            diff = x - z
            r = np.linalg.norm(diff, axis=1)
            mind[0] = min(mind[0], float(r.min()))
            weight = w * spec.density_at(z)
            if kind == "potential":
                return (kernel_G(n, r) * weight)[:, None]
            return -kernel_grad(n, diff) * weight[:, None]

        res = adaptive_cubature(
            integrand, patch.lo, patch.hi, quad.tol / len(spec.patches), quad.order, quad.max_nodes
        )
        total += sign * np.asarray(res.value)
        err += res.error_estimate
        nodes += res.nodes_used
        ok = ok and res.converged
    if mind[0] <= quad.standoff * min(_diameter(p) for p in spec.patches):
        raise PotentialError(f"point is within {mind[0]:.3g} of the surface", "too_close")
    value = float(total[0]) if kind == "potential" else total
    return QuadratureResult(value=value, error_estimate=err, nodes_used=nodes, converged=ok)


def potential(spec: SurfaceChargeSpec, x, quad: QuadConfig = QuadConfig()) -> QuadratureResult:
    """Potential of the signed standard charge (times density) at ``x``."""
    return _integrate(spec, x, quad, "potential")


def attraction_force(spec: SurfaceChargeSpec, x, quad: QuadConfig = QuadConfig()) -> QuadratureResult:
    """Attraction force ``-grad potential`` at ``x``, integrated directly."""
    return _integrate(spec, x, quad, "force")


def confocal_ellipsoid(semiaxes: Sequence[float], lam: float) -> tuple[float, ...]:
    """Semiaxes ``sqrt(a_i^2 + lam)`` of the confocal ellipsoid."""
    a = [float(v) for v in semiaxes]
    if lam <= -min(v * v for v in a):
        raise PotentialError("lambda out of range for a confocal ellipsoid", "bad_parameter")
    return tuple(math.sqrt(v * v + lam) for v in a)


def polynomial_fit_check(
    spec: SurfaceChargeSpec,
    segment: tuple[Sequence[float], Sequence[float]],
    degree: int,
    samples: int = 12,
    quad: QuadConfig = QuadConfig(),
) -> float:
    """Max residual of a least-squares polynomial fit to the potential along a segment.

    ``degree = -1`` fits by the zero polynomial.
    """
    a = np.asarray(segment[0], dtype=float)
    b = np.asarray(segment[1], dtype=float)
    s = np.linspace(0.0, 1.0, samples)
    vals = np.array([potential(spec, a + t * (b - a), quad).value for t in s])
    if degree < 0:
        return float(np.abs(vals).max())
    fit = np.polynomial.Polynomial.fit(s, vals, degree)
    return float(np.abs(fit(s) - vals).max())


@dataclass
class RayRow:
    t: float
    potential: float
    force_norm: float
    zone: int | None = field(default=None)


def ray_scan(
    spec: SurfaceChargeSpec,
    origin: Sequence[float],
    direction: Sequence[float],
    t0: float,
    t1: float,
    nsamples: int,
    quad: QuadConfig = QuadConfig(),
) -> list[RayRow]:
    """Potential, force norm and zone at ``nsamples`` points of a ray, ordered by ``t``.

    Points on (or too close to) the surface are skipped.
    """
    from .geometry import zone_index

    o = np.asarray(origin, dtype=float)
    v = np.asarray(direction, dtype=float)
    rows = []
    for t in np.linspace(t0, t1, nsamples) if nsamples > 0 else []:
        p = o + t * v
        try:
            u = potential(spec, p, quad).value
            f = attraction_force(spec, p, quad).value
        except PotentialError as exc:
            if exc.code == "too_close":
                continue
            raise
        zone = None
        if spec.reference is not None:
            zone = zone_index(spec.F, [Fraction(float(c)) for c in p], [spec.reference]).k
        rows.append(RayRow(float(t), float(u), float(np.linalg.norm(f)), zone))
    return rows
