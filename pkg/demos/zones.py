"""Hyperbolicity domain and zones of a sextic made of three circles.

Every line through a point near the origin meets the three circles in six
real points.  Farther out a segment from the domain must cross 1, 2, 3
circles; the map below shows the zone index on a grid.
"""

from hyperpot import MultiPoly, component_seeds, is_strictly_hyperbolic, sample_hyperbolicity_domain

x1, x2 = MultiPoly.variables(2)
s = x1**2 + x2**2
F = (s - 1) * (s - 4) * ((x1 - 0.25) ** 2 + x2**2 - 9)

for p in [(0, 0), (0.5, 0.2), (1.5, 0), (4, 0)]:
    rep = is_strictly_hyperbolic(F, p, ndirs=200)
    print(f"strictly hyperbolic at {p}: {rep.is_hyperbolic}", "" if rep.is_hyperbolic else f"(witness {rep.witness_direction})")

grid = 25
rows = sample_hyperbolicity_domain(F, (-4, 4, -4, 4), grid, ndirs=32)
zone = {p: lab.k for p, lab in rows}
xs = sorted({p[0] for p, _ in rows})
print("\nzone map (. = on the surface)")
for b in reversed(xs):
    print("  " + " ".join(str(zone[(a, b)]) if (a, b) in zone else "." for a in xs))

print("\ncomponent seeds, innermost first")
for j, seed in enumerate(component_seeds(F, (-4, 4, -4, 4), 33), 1):
    print(f"  component {j}: {tuple(round(c, 6) for c in seed)}")
