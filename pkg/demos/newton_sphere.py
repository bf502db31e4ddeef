"""A uniformly charged sphere: constant potential inside, point mass outside.

The standard charge on the unit sphere has density 1/|grad F| = 1/2, so the
total charge is 2*pi and the exterior potential is -2*pi / (4*pi*r) = -1/(2r).
"""

import numpy as np

from hyperpot import QuadConfig, attraction_force, ellipsoid_charge, potential
from hyperpot.potential import ray_scan

quad = QuadConfig(tol=1e-8)
sphere = ellipsoid_charge((1.0, 1.0, 1.0))

print("interior points")
rng = np.random.default_rng(0)
for _ in range(4):
    p = rng.uniform(-0.5, 0.5, 3)
    u = potential(sphere, p, quad)
    f = attraction_force(sphere, p, quad).value
    print(f"  x = {np.round(p, 3)}  U = {u.value:+.12f}  |F| = {np.linalg.norm(f):.1e}  nodes = {u.nodes_used}")

print("exterior radii: U * r should stay at -1/2")
for r in (1.5, 2.0, 3.0, 5.0):
    u = potential(sphere, (0.0, 0.0, r), quad).value
    print(f"  r = {r:3.1f}  U = {u:+.12f}  U*r = {u * r:+.12f}")

print("ray from the centre: plateau, then 1/r decay (the sample on the sphere is skipped)")
for row in ray_scan(sphere, (0, 0, 0), (1, 0, 0), 0.0, 3.0, 7, quad):
    print(f"  t = {row.t:4.2f}  U = {row.potential:+.6f}  |F| = {row.force_norm:.6f}  zone = {row.zone}")
