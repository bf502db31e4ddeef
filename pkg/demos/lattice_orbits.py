"""Reflection orbits in a few monodromy-type lattices.

* the D4 root lattice: the orbit of a simple root is the 24 roots;
* the affine D4 lattice: degenerate, with the imaginary root as kernel, and
  a quotient isometric to D4;
* a rank-2 lattice of hyperbolic signature: orbits grow without bound and a
  linear form takes more and more values.
"""

from hyperpot.lattice import (
    GeneratorSet,
    Lattice,
    LinearForm,
    build_D_tilde,
    cartan_D,
    form_kernel,
    orbit,
    probe_completely_infinite,
    quotient_lattice,
    short_vectors,
    value_spectrum,
)

D4 = cartan_D(4)
rep = orbit(GeneratorSet(D4, tuple(D4.basis(i) for i in range(4))), D4.basis(0))
print(f"D4: orbit of a simple root has {len(rep)} vectors ({rep.status}), depth profile {rep.depth_profile}")

G = build_D_tilde(4)
ker = form_kernel(G.lattice)
q = quotient_lattice(G.lattice)
print(f"affine D4: kernel {ker}, quotient det {q.target.determinant()}, {len(short_vectors(q.target, 2))} roots")
form = LinearForm(G.lattice.gram_times((0, 1, 0, 0, 1)))
qrep = orbit(q.induced_generators(G), q.project(G.generators[1]))
print(f"  a form vanishing on the kernel takes {[str(v) for v in sorted(value_spectrum(q.induced_form(form), qrep))]} on the quotient orbit")
print(f"  probe verdict: {probe_completely_infinite(G, G.generators[1], form).verdict}")

H = Lattice([[2, -3], [-3, 2]])
probe = probe_completely_infinite(GeneratorSet(H, ((1, 0), (0, 1))), (1, 0), LinearForm([1, 0]))
print(f"hyperbolic rank 2: orbit sizes {probe.orbit_sizes}, distinct values {probe.counts} -> {probe.verdict}")

skew = Lattice([[0, 1], [-1, 0]], "skew")
t = orbit(GeneratorSet(skew, ((0, 1),), action="transvect"), (1, 0), max_depth=5)
print(f"skew transvection: {t.vectors} ({t.status})")
