"""Confocal ellipsoids attract exterior points proportionally.

The ellipsoid with semiaxes (2, 1, 1) and its confocal neighbour
(sqrt(a_i^2 - 1/2)) produce exterior potentials whose ratio is the same at
every exterior point.
"""

import numpy as np

from hyperpot import QuadConfig, ellipsoid_charge, potential
from hyperpot.potential import confocal_ellipsoid

quad = QuadConfig(tol=1e-8)
axes = (2.0, 1.0, 1.0)
small_axes = confocal_ellipsoid(axes, -0.5)
big, small = ellipsoid_charge(axes), ellipsoid_charge(small_axes)
print("semiaxes", axes, "->", tuple(round(a, 6) for a in small_axes))

ratios = []
for p in [(3, 0, 0), (0, 2, 0), (0, 0, 2.5), (2, 1.5, 1), (-3, 1, -1), (0.5, -2, 2)]:
    ub, us = potential(big, p, quad).value, potential(small, p, quad).value
    ratios.append(ub / us)
    print(f"  x = {p}  U_big = {ub:+.10f}  U_small = {us:+.10f}  ratio = {ub / us:.12f}")
print(f"relative spread of the ratio: {np.ptp(ratios) / np.mean(ratios):.1e}")
