"""Combinatorial orbits for plane curves through a point of zone k.

The reduced class is a choice of k small circles on each of the two
isotropic lines through the point; monodromy permutes the d - eta affine
intersection points on each line.  The orbit size is C(d - eta, k)^2, and a
generic weight form sees every orbit element as a different value.
"""

import math

from hyperpot.lattice import build_plane_curve_model
from hyperpot.poly import MultiPoly, eta_factor_count

x1, x2 = MultiPoly.variables(2)
s = x1**2 + x2**2
for name, F in [("circle", s - 1), ("two circles", (s - 1) * (s - 4)), ("ellipse", x1**2 + 2 * x2**2 - 1)]:
    print(f"eta({name}) = {eta_factor_count(F)}")

print("\n  d eta k  orbit  C(d-eta,k)^2  values")
for d in range(2, 6):
    for eta in range(0, d // 2 + 1):
        for k in range(1, d - eta + 1):
            m = build_plane_curve_model(d, eta, k)
            print(f"  {d} {eta:>3} {k}  {m.orbit_size:>5}  {math.comb(d - eta, k) ** 2:>12}  {len(m.spectrum):>6}")

print("\nfull permutations of all 2d points:")
for d, k in [(2, 1), (3, 1), (3, 2), (4, 2)]:
    print(f"  d = {d}, k = {k}: {build_plane_curve_model(d, 0, k, big=True).big_orbit_size}")
