"""Polynomial densities: the interior potential is a polynomial of low degree.

On the sphere (d = 2) with density P, the potential inside is a polynomial of
degree at most deg P.  A least-squares fit along an interior segment shows
the residual collapsing exactly at that degree.
"""

from hyperpot import MultiPoly, QuadConfig, ellipsoid_charge
from hyperpot.potential import polynomial_fit_check

quad = QuadConfig(tol=1e-9)
x, y, z = MultiPoly.variables(3)
segment = ((-0.5, 0.1, -0.3), (0.4, -0.2, 0.5))
for name, P in [("1", None), ("z", z), ("x*y + z^2", x * y + z**2), ("z^3", z**3)]:
    spec = ellipsoid_charge((1.0, 1.0, 1.0), density=P)
    res = [polynomial_fit_check(spec, segment, deg, samples=12, quad=quad) for deg in range(-1, 4)]
    print(f"P = {name:<10}" + "".join(f"  deg {d:>2}: {r:.1e}" for d, r in zip(range(-1, 4), res)))
