"""Ranks of vanishing homology for homogeneous complete intersections.

rank_H(d, n) is the sum of the Milnor number of the degree-d hypersurface and
that of the (d, 2) complete intersection; for quadrics it is 2n.
"""

from hyperpot.milnor import mu_codim2, mu_hypersurface, rank_H

ns = range(2, 8)
print("rank_H(d, n)")
print("  d\\n " + "".join(f"{n:>10}" for n in ns))
for d in range(2, 8):
    print(f"  {d:>3} " + "".join(f"{rank_H(d, n).rank_H:>10}" for n in ns))

print("\nsplit into the two Milnor numbers at d = 3:")
for n in ns:
    r = rank_H(3, n)
    print(f"  n = {n}: {mu_hypersurface(3, n)} + {mu_codim2(3, 2, n)} = {r.nu}")
