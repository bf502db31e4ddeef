"""Alternating charges on nested ovals cancel their attraction inside.

Two concentric circles (and then two nested ellipses) carry the standard
charge, the outer one with reversed orientation.  Inside the inner oval the
force vanishes; dropping the outer component breaks this for the ellipse.
"""

import numpy as np

from hyperpot import MultiPoly, QuadConfig, arnold_charge, attraction_force
from hyperpot.potential import SurfaceChargeSpec

quad = QuadConfig(tol=1e-8)
x1, x2 = MultiPoly.variables(2)
s = x1**2 + x2**2
rng = np.random.default_rng(1)
points = [rng.uniform(-0.6, 0.6, 2) for _ in range(5)]

models = {
    "circles r=1, r=2": (s - 1) * (s - 4),
    "circle r=1 inside ellipse 3x2": (s - 1) * (x1**2 / 9 + x2**2 / 4 - 1),
}
for name, F in models.items():
    spec = arnold_charge(F, (0, 0))
    print(f"{name}: signs {spec.signs}")
    for p in points:
        f = attraction_force(spec, p, quad).value
        print(f"  x = {np.round(p, 3)}  |F| = {np.linalg.norm(f):.2e}")
    inner_only = SurfaceChargeSpec(F, spec.patches[:1], signs=(1,))
    f = attraction_force(inner_only, points[0], quad).value
    print(f"  inner component alone at x = {np.round(points[0], 3)}: |F| = {np.linalg.norm(f):.2e}")
