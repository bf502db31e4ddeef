"""Self-check suites runnable from the command line (``hyperpot verify SUITE``)."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass
class Check:
    name: str
    measured: float | int | str
    tolerance: float | int | str
    passed: bool

    def to_json(self) -> dict:
        return asdict(self)


def _newton(seed: int = 0) -> list[Check]:
    from .potential import QuadConfig, ellipsoid_charge, potential

    quad = QuadConfig(tol=1e-8)
    S = ellipsoid_charge((1.0, 1.0, 1.0))
    rng = np.random.default_rng(seed)
    checks = []
    worst = 0.0
    for _ in range(10):
        v = rng.standard_normal(3)
        p = v / np.linalg.norm(v) * 0.9 * rng.random() ** (1 / 3)
        worst = max(worst, abs(potential(S, p, quad).value + 0.5))
    checks.append(Check("interior potential = -1/2", worst, 1e-6, worst < 1e-6))
    worst = 0.0
    for R in (1.5, 2.0, 3.0, 5.0):
        worst = max(worst, abs(potential(S, (0.0, 0.0, R), quad).value * R + 0.5))
    checks.append(Check("exterior potential * R = -1/2", worst, 1e-6, worst < 1e-6))
    return checks


def _ivory() -> list[Check]:
    from .potential import QuadConfig, confocal_ellipsoid, ellipsoid_charge, potential

    quad = QuadConfig(tol=1e-8)
    big = ellipsoid_charge((2.0, 1.0, 1.0))
    small = ellipsoid_charge(confocal_ellipsoid((2.0, 1.0, 1.0), -0.5))
    pts = [(3.0, 0.0, 0.0), (0.0, 2.0, 0.0), (0.0, 0.0, 2.5), (2.0, 1.5, 1.0), (-3.0, 1.0, -1.0)]
    ratios = np.array([potential(big, p, quad).value / potential(small, p, quad).value for p in pts])
    spread = float(np.ptp(ratios) / abs(ratios.mean()))
    return [Check("confocal exterior potential ratio constant", spread, 1e-4, spread < 1e-4)]


def _arnold(seed: int = 0) -> list[Check]:
    from .poly import MultiPoly
    from .potential import QuadConfig, arnold_charge, attraction_force

    quad = QuadConfig(tol=1e-8)
    x1, x2 = MultiPoly.variables(2)
    rng = np.random.default_rng(seed)
    out = []
    models = {
        "concentric circles 1,2": (x1**2 + x2**2 - 1) * (x1**2 + x2**2 - 4),
        "nested ellipses": (x1**2 + x2**2 - 1) * (x1**2 / 9 + x2**2 / 4 - 1),
    }
    for name, F in models.items():
        spec = arnold_charge(F, (0, 0))
        worst = 0.0
        for _ in range(10):
            r, th = 0.9 * math.sqrt(rng.random()), 2 * math.pi * rng.random()
            p = (r * math.cos(th), r * math.sin(th))
            worst = max(worst, float(np.linalg.norm(attraction_force(spec, p, quad).value)))
        out.append(Check(f"{name}: force inside hyperbolicity domain", worst, 1e-5, worst < 1e-5))
    return out


def _lattice() -> list[Check]:
    from .lattice import GeneratorSet, build_D_tilde, cartan_D, form_kernel, orbit, quotient_lattice, short_vectors

    D4 = cartan_D(4)
    rep = orbit(GeneratorSet(D4, tuple(D4.basis(i) for i in range(4))), D4.basis(0))
    G = build_D_tilde(4)
    q = quotient_lattice(G.lattice)
    nroots = len(short_vectors(q.target, 2))
    return [
        Check("D4 root orbit size", len(rep), 24, len(rep) == 24 and rep.closed),
        Check("D~4 kernel rank", len(form_kernel(G.lattice)), 1, len(form_kernel(G.lattice)) == 1),
        Check("D~4 quotient determinant", q.target.determinant(), 4, q.target.determinant() == 4),
        Check("D~4 quotient root count", nroots, 24, nroots == 24),
    ]


def _milnor() -> list[Check]:
    from .milnor import mu_codim2, mu_hypersurface, rank_H

    bad = [
        (d, n)
        for d in range(2, 13)
        for n in range(2, 13)
        if rank_H(d, n).rank_H != mu_hypersurface(d, n) + mu_codim2(d, 2, n)
    ]
    quad = [n for n in range(2, 13) if rank_H(2, n).rank_H != 2 * n]
    return [
        Check("rank_H = mu + mu_tilde on 2..12", len(bad), 0, not bad),
        Check("rank_H(2, n) = 2n", len(quad), 0, not quad),
    ]


def _plane_curve_orbits() -> list[Check]:
    from .lattice import build_plane_curve_model

    mismatches = 0
    cases = 0
    for d in range(2, 7):
        for eta in range(0, d // 2 + 1):
            for k in range(1, d - eta + 1):
                m = build_plane_curve_model(d, eta, k)
                cases += 1
                if m.orbit_size != math.comb(d - eta, k) ** 2:
                    mismatches += 1
    ex = build_plane_curve_model(2, 0, 1)
    cor = build_plane_curve_model(4, 2, 2)
    return [
        Check(f"orbit size = C(d-eta,k)^2 over {cases} cases", mismatches, 0, mismatches == 0),
        Check("d=2, eta=0, k=1 orbit and spectrum", len(ex.spectrum), 4, ex.orbit_size == 4 and len(ex.spectrum) == 4),
        Check("d=4, eta=2, k=2 single-valued", cor.orbit_size, 1, cor.orbit_size == 1),
    ]


SUITES = {
    "newton": _newton,
    "ivory": _ivory,
    "arnold": _arnold,
    "lattice": _lattice,
    "milnor": _milnor,
    "theorem4": _plane_curve_orbits,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name]()
