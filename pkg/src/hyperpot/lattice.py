"""Integer lattices with even bilinear forms and Picard-Lefschetz monodromy.

Vectors are plain tuples of Python ints (arbitrary precision); that is what
``CycleVector`` means throughout.  Linear forms carry Fraction coefficients.
Reflections use the normalization ``v - 2<v,k>/<k,k> k``, so they are
involutions for either sign of ``<k,k> = +-2``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import as_fraction

__all__ = [
    "LatticeError",
    "Lattice",
    "LinearForm",
    "GeneratorSet",
    "OrbitReport",
    "QuotientMap",
    "ProbeReport",
    "PlaneCurveModel",
    "inner",
    "pl_reflect",
    "pl_transvect",
    "orbit",
    "value_spectrum",
    "integer_kernel",
    "form_kernel",
    "quotient_lattice",
    "fixed_vectors",
    "short_vectors",
    "cartan_D",
    "build_D_tilde",
    "build_model_hyperbolic",
    "build_plane_curve_model",
    "probe_completely_infinite",
    "dtilde_rank_check",
]

CycleVector = tuple[int, ...]


class LatticeError(ValueError):
    """Domain errors of the lattice engine; ``code`` is machine readable."""

    def __init__(self, message: str, code: str = "lattice_error"):
        super().__init__(message)
        self.code = code


def vec(coords: Iterable) -> CycleVector:
    out = []
    for c in coords:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise LatticeError(f"non-integer coordinate {c}", "bad_vector")
            c = c.numerator
        out.append(int(c))
    return tuple(out)


def _add(u, v, scale=1):
    return tuple(a + scale * b for a, b in zip(u, v))


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    symmetry: str = "symmetric"

    def __init__(self, gram: Sequence[Sequence[int]], symmetry: str = "symmetric"):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("gram must be square", "bad_gram")
        if symmetry == "symmetric":
            for i in range(n):
                if g[i][i] % 2:
                    raise LatticeError("symmetric lattices must be even", "bad_gram")
                for j in range(i):
                    if g[i][j] != g[j][i]:
                        raise LatticeError("gram is not symmetric", "bad_gram")
        elif symmetry == "skew":
            for i in range(n):
                for j in range(i + 1):
                    if g[i][j] != -g[j][i]:
                        raise LatticeError("gram is not skew-symmetric", "bad_gram")
        else:
            raise LatticeError(f"unknown symmetry {symmetry!r}", "bad_gram")
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "symmetry", symmetry)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def basis(self, i: int) -> CycleVector:
        return tuple(int(j == i) for j in range(self.rank))

    def inner(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != self.rank or len(v) != self.rank:
            raise LatticeError("arity mismatch", "arity")
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.gram[i]
                total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
        return total

    def gram_times(self, v: Sequence[int]) -> CycleVector:
        return tuple(sum(r * x for r, x in zip(row, v)) for row in self.gram)

    def direct_sum(self, other: "Lattice") -> "Lattice":
        if other.symmetry != self.symmetry:
            raise LatticeError("cannot sum lattices of different symmetry")
        n, m = self.rank, other.rank
        g = [list(row) + [0] * m for row in self.gram]
        g += [[0] * n + list(row) for row in other.gram]
        return Lattice(g, self.symmetry)

    def determinant(self) -> int:
        return _det([list(r) for r in self.gram])

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram], "symmetry": self.symmetry}

    @classmethod
    def from_json(cls, data) -> "Lattice":
        try:
            return cls(data["gram"], data.get("symmetry", "symmetric"))
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed lattice JSON: {exc}", "bad_json") from exc


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        cs = tuple(as_fraction(c) for c in coeffs)
        den = math.lcm(*(c.denominator for c in cs)) if cs else 1
        object.__setattr__(self, "coeffs", cs)
        # integer numerators over a common denominator: one Fraction per evaluation
        object.__setattr__(self, "_num", tuple(int(c * den) for c in cs))
        object.__setattr__(self, "_den", den)

    @classmethod
    def dual(cls, i: int, rank: int) -> "LinearForm":
        return cls([int(j == i) for j in range(rank)])

    def __call__(self, v: Sequence[int]) -> Fraction:
        if len(v) != len(self.coeffs):
            raise LatticeError("arity mismatch", "arity")
        return Fraction(sum(c * x for c, x in zip(self._num, v)), self._den)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def inner(L: Lattice, u, v) -> int:
    return L.inner(u, v)


def pl_reflect(L: Lattice, v: Sequence[int], kappa: Sequence[int]) -> CycleVector:
    """Reflection of ``v`` in the hyperplane orthogonal to a (+-2)-vector ``kappa``."""
    if L.symmetry != "symmetric":
        raise LatticeError("reflection requires symmetric lattice", "needs_symmetric")
    kk = L.inner(kappa, kappa)
    if kk not in (2, -2):
        raise LatticeError(f"reflection vector has self-pairing {kk}, not +-2", "bad_root")
    c = L.inner(v, kappa) * (2 // kk)
    return _add(v, kappa, -c) if c else tuple(v)


def pl_transvect(L: Lattice, v: Sequence[int], kappa: Sequence[int], sign: int = 1) -> CycleVector:
    """Skew Picard-Lefschetz transvection ``v + sign <v,kappa> kappa``."""
    if L.symmetry != "skew":
        raise LatticeError("transvection requires skew lattice", "needs_skew")
    if sign not in (1, -1):
        raise LatticeError("sign must be +-1")
    c = sign * L.inner(v, kappa)
    return _add(v, kappa, c) if c else tuple(v)


@dataclass(frozen=True)
class GeneratorSet:
    """Monodromy generators: vanishing cycles plus how they act.

    ``kinds`` tags each generator ``"first"`` or ``"second"``; the subgroup
    generated by second-kind generators models the small monodromy group,
    all of them together the big one.
    """

    lattice: Lattice
    generators: tuple[CycleVector, ...]
    kinds: tuple[str, ...] = ()
    action: str = "reflect"
    sign: int = 1

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        kinds = tuple(self.kinds) or ("second",) * len(gens)
        if len(kinds) != len(gens) or any(k not in ("first", "second") for k in kinds):
            raise LatticeError("kinds must be 'first'/'second', one per generator")
        object.__setattr__(self, "kinds", kinds)
        if self.action not in ("reflect", "transvect"):
            raise LatticeError(f"unknown action {self.action!r}")
        for g in gens:
            if len(g) != self.lattice.rank:
                raise LatticeError("generator arity mismatch", "arity")
        if self.action == "reflect":
            if self.lattice.symmetry != "symmetric":
                raise LatticeError("reflection requires symmetric lattice", "needs_symmetric")
            for g in gens:
                if self.lattice.inner(g, g) not in (2, -2):
                    raise LatticeError(f"generator {g} does not have self-pairing +-2", "bad_root")
        elif self.lattice.symmetry != "skew":
            raise LatticeError("transvection requires skew lattice", "needs_skew")

    def apply(self, i: int, v: Sequence[int]) -> CycleVector:
        if self.action == "reflect":
            return pl_reflect(self.lattice, v, self.generators[i])
        return pl_transvect(self.lattice, v, self.generators[i], self.sign)

    def subset(self, kind: str) -> "GeneratorSet":
        idx = [i for i, k in enumerate(self.kinds) if k == kind]
        return GeneratorSet(
            self.lattice,
            tuple(self.generators[i] for i in idx),
            tuple(self.kinds[i] for i in idx),
            self.action,
            self.sign,
        )

    def to_json(self) -> dict:
        return {
            "generators": [list(g) for g in self.generators],
            "kinds": list(self.kinds),
            "action": self.action,
            "sign": self.sign,
        }

    @classmethod
    def from_json(cls, lattice: Lattice, data) -> "GeneratorSet":
        try:
            return cls(
                lattice,
                tuple(tuple(g) for g in data["generators"]),
                tuple(data.get("kinds", ())),
                data.get("action", "reflect"),
                int(data.get("sign", 1)),
            )
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed generators JSON: {exc}", "bad_json") from exc


@dataclass
class OrbitReport:
    vectors: list[CycleVector]
    status: str
    depth_profile: list[int]
    spectrum: set[Fraction] | None = None

    @property
    def closed(self) -> bool:
        return self.status == "closed"

    def __len__(self):
        return len(self.vectors)

    def to_json(self) -> dict:
        out = {
            "size": len(self.vectors),
            "status": self.status,
            "depth_profile": list(self.depth_profile),
            "vectors": [list(v) for v in self.vectors],
        }
        if self.spectrum is not None:
            out["spectrum"] = [_fstr(x) for x in sorted(self.spectrum)]
        return out


def _fstr(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def orbit(
    G: GeneratorSet,
    start: Sequence[int],
    max_size: int = 100_000,
    max_depth: int = 1_000,
) -> OrbitReport:
    """Breadth-first closure of ``start`` under the generators.

    ``depth_profile[k]`` is the number of distinct vectors reachable in at
    most ``k`` steps.  The status is ``"closed"`` only when no new vector
    appears, i.e. the set is invariant under every generator.
    """
    if max_size < 1 or max_depth < 0:
        raise LatticeError("orbit limits must be positive", "bad_limits")
    start = vec(start)
    if len(start) != G.lattice.rank:
        raise LatticeError("start arity mismatch", "arity")
    seen = {start}
    order = [start]
    frontier = [start]
    profile = [1]
    depth = 0
    status = "closed"
    while frontier:
        if depth >= max_depth:
            # the last layer may still be closed under the generators
            if any(G.apply(i, v) not in seen for v in frontier for i in range(len(G.generators))):
                status = "truncated"
            break
        nxt = []
        capped = False
        for v in frontier:
            for i in range(len(G.generators)):
                w = G.apply(i, v)
                if w not in seen:
                    if len(order) >= max_size:
                        capped = True
                        break
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
            if capped:
                break
        depth += 1
        if nxt:
            profile.append(len(order))
        if capped:
            status = "truncated"
            break
        frontier = nxt
    return OrbitReport(vectors=order, status=status, depth_profile=profile)


def value_spectrum(form: LinearForm, report: OrbitReport, allow_truncated: bool = False) -> set[Fraction]:
    """Distinct values of ``form`` over the orbit vectors."""
    if not report.closed and not allow_truncated:
        raise LatticeError("orbit is truncated; pass allow_truncated to override", "truncated")
    values = {form(v) for v in report.vectors}
    report.spectrum = values
    return values


# ---------------------------------------------------------------------------
# Integer linear algebra
# ---------------------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _det(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _column_echelon(rows: list[list[int]], n: int):
    """Integer column reduction ``A U = [H | 0]`` with ``U`` unimodular.

    Returns ``(pivots, U, Uinv)``; columns ``pivots..n-1`` of ``U`` span the
    integer kernel of ``A`` and that span is saturated.
    """
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    Uinv = [[int(i == j) for j in range(n)] for i in range(n)]
    p = 0
    for row in A:
        if p >= n:
            break
        for j in range(p + 1, n):
            a, b = row[p], row[j]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            # columns (p, j) <- (x*col_p + y*col_j, -bg*col_p + ag*col_j)
            for M in (A, U):
                for r in M:
                    cp, cj = r[p], r[j]
                    r[p], r[j] = x * cp + y * cj, -bg * cp + ag * cj
            # inverse: rows (p, j) <- (ag*row_p + bg*row_j, -y*row_p + x*row_j)
            rp, rj = Uinv[p], Uinv[j]
            Uinv[p] = [ag * s + bg * t for s, t in zip(rp, rj)]
            Uinv[j] = [-y * s + x * t for s, t in zip(rp, rj)]
        if row[p] != 0:
            p += 1
    return p, U, Uinv


def _hnf_rows(basis: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (positive pivots, reduced above)."""
    B = [list(b) for b in basis]
    if not B:
        return []
    n = len(B[0])
    r = 0
    for c in range(n):
        if r >= len(B):
            break
        for i in range(r + 1, len(B)):
            a, b = B[r][c], B[i][c]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            B[r], B[i] = (
                [x * s + y * t for s, t in zip(B[r], B[i])],
                [-bg * s + ag * t for s, t in zip(B[r], B[i])],
            )
        if B[r][c] == 0:
            continue
        if B[r][c] < 0:
            B[r] = [-s for s in B[r]]
        for i in range(r):
            q = B[i][c] // B[r][c]
            if q:
                B[i] = [s - q * t for s, t in zip(B[i], B[r])]
        r += 1
    return [b for b in B if any(b)]


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[CycleVector]:
    """Saturated integer basis of ``{v in Z^n : rows . v = 0}``, in HNF."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    p, U, _ = _column_echelon([list(r) for r in rows], n)
    basis = [[U[i][j] for i in range(n)] for j in range(p, n)]
    return [tuple(b) for b in _hnf_rows(basis)]


def form_kernel(L: Lattice) -> list[CycleVector]:
    """Integer basis of the radical ``{v : gram v = 0}`` of the form."""
    return integer_kernel(L.gram, L.rank)


@dataclass(frozen=True)
class QuotientMap:
    """Projection ``L -> L / Ker`` onto a nondegenerate quotient lattice."""

    source: Lattice
    target: Lattice
    complement: tuple[CycleVector, ...]  # lifts of the quotient basis, in source coords
    kernel: tuple[CycleVector, ...]
    _inverse_rows: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    def project(self, v: Sequence[int]) -> CycleVector:
        r = self.target.rank
        return tuple(sum(a * b for a, b in zip(self._inverse_rows[i], v)) for i in range(r))

    def lift(self, q: Sequence[int]) -> CycleVector:
        out = [0] * self.source.rank
        for c, b in zip(q, self.complement):
            if c:
                for i, x in enumerate(b):
                    out[i] += c * x
        return tuple(out)

    def induced_form(self, form: LinearForm) -> LinearForm:
        for k in self.kernel:
            if form(k):
                raise LatticeError("form does not vanish on the kernel", "form_not_on_quotient")
        return LinearForm([form(b) for b in self.complement])

    def induced_generators(self, G: GeneratorSet) -> GeneratorSet:
        return GeneratorSet(
            self.target,
            tuple(self.project(g) for g in G.generators),
            G.kinds,
            G.action,
            G.sign,
        )


def quotient_lattice(L: Lattice, ker: Sequence[Sequence[int]] | None = None) -> QuotientMap:
    """Quotient of ``L`` by the radical of its form.

    ``ker`` (optional) is checked to be a saturated basis of the radical.
    """
    p, U, Uinv = _column_echelon([list(r) for r in L.gram], L.rank)
    n = L.rank
    kernel = [tuple(U[i][j] for i in range(n)) for j in range(p, n)]
    if ker is not None:
        ker = [vec(k) for k in ker]
        for k in ker:
            if any(L.gram_times(k)):
                raise LatticeError(f"{k} is not in the kernel of the form", "not_kernel")
        if _hnf_rows([list(k) for k in ker]) != _hnf_rows([list(k) for k in kernel]):
            raise LatticeError("supplied kernel basis is not the saturated kernel", "not_kernel")
    if p == n:
        # nondegenerate: the lattice itself, identity projection
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return QuotientMap(source=L, target=L, complement=eye, kernel=(), _inverse_rows=eye)
    comp = [tuple(U[i][j] for i in range(n)) for j in range(p)]
    gram = [[L.inner(a, b) for b in comp] for a in comp]
    target = Lattice(gram, L.symmetry) if comp else Lattice([], L.symmetry)
    return QuotientMap(
        source=L,
        target=target,
        complement=tuple(comp),
        kernel=tuple(tuple(k) for k in _hnf_rows([list(k) for k in kernel])),
        _inverse_rows=tuple(tuple(r) for r in Uinv[:p]),
    )


def fixed_vectors(G: GeneratorSet) -> list[CycleVector]:
    """Saturated basis of vectors fixed by every generator reflection."""
    if G.lattice.symmetry != "symmetric":
        raise LatticeError("fixed_vectors requires symmetric lattice", "needs_symmetric")
    rows = [G.lattice.gram_times(g) for g in G.generators]
    return integer_kernel(rows, G.lattice.rank)


def short_vectors(L: Lattice, norm: int) -> list[CycleVector]:
    """All ``v`` with ``<v,v> = norm`` in a positive-definite lattice (brute force)."""
    import numpy as np

    g = np.array(L.gram, dtype=float)
    if L.rank == 0:
        return []
    if np.linalg.eigvalsh(g).min() <= 0:
        raise LatticeError("short_vectors needs a positive-definite form", "not_definite")
    ginv = np.linalg.inv(g)
    bounds = [int(math.floor(math.sqrt(norm * ginv[i, i]) + 1e-9)) for i in range(L.rank)]
    out = []

    def rec(i, cur):
        if i == L.rank:
            if L.inner(cur, cur) == norm:
                out.append(tuple(cur))
            return
        for c in range(-bounds[i], bounds[i] + 1):
            cur.append(c)
            rec(i + 1, cur)
            cur.pop()

    rec(0, [])
    return out


# ---------------------------------------------------------------------------
# Named models
# ---------------------------------------------------------------------------


def _dynkin_gram(m: int, edges: Iterable[tuple[int, int]], sign: int = 1) -> list[list[int]]:
    g = [[2 * sign if i == j else 0 for j in range(m)] for i in range(m)]
    for i, j in edges:
        g[i][j] = g[j][i] = -sign
    return g


def _d_edges(m: int) -> list[tuple[int, int]]:
    # D_m: chain 0-1-...-(m-2) with node m-1 also attached to m-3
    edges = [(i, i + 1) for i in range(m - 2)]
    edges.append((m - 3, m - 1))
    return edges


def cartan_D(m: int, sign: int = 1) -> Lattice:
    """Root lattice ``D_m`` (``m >= 3``) in the simple-root basis."""
    if m < 3:
        raise LatticeError("D_m needs m >= 3", "bad_parameter")
    return Lattice(_dynkin_gram(m, _d_edges(m), sign))


def _dtilde_edges(m: int) -> list[tuple[int, int]]:
    if m == 3:
        # affine D_3 = affine A_3, a 4-cycle
        return [(0, 1), (1, 2), (2, 3), (3, 0)]
    # nodes 0..m: affine node 0 attached to node 2, D_m on nodes 1..m
    edges = [(i + 1, j + 1) for i, j in _d_edges(m)]
    edges.append((0, 2))
    return edges


def build_D_tilde(m: int, zero_rank: int = 0, parity_sign: int = 1) -> GeneratorSet:
    """Affine ``D~_m`` lattice with its ``m + 1`` simple affine roots as generators.

    ``zero_rank`` appends a summand with zero form (the odd-dimensional
    variant); ``parity_sign = -1`` flips the global sign of the form.
    """
    if m < 3:
        raise LatticeError("D~_m needs m >= 3", "bad_parameter")
    if zero_rank < 0 or parity_sign not in (1, -1):
        raise LatticeError("bad zero_rank or parity_sign", "bad_parameter")
    L = Lattice(_dynkin_gram(m + 1, _dtilde_edges(m), parity_sign))
    if zero_rank:
        L = L.direct_sum(Lattice([[0] * zero_rank for _ in range(zero_rank)]))
    gens = tuple(L.basis(i) for i in range(m + 1))
    return GeneratorSet(L, gens)


def imaginary_root(m: int) -> CycleVector:
    """Null vector of ``D~_m`` in the simple-root basis of :func:`build_D_tilde`."""
    if m == 3:
        return (1, 1, 1, 1)
    coeffs = [1, 1] + [2] * (m - 3) + [1, 1]
    return tuple(coeffs)


def build_model_hyperbolic(k: int, total: int, parity_sign: int = 1) -> tuple[GeneratorSet, CycleVector]:
    """Orthogonal model: ``total`` vanishing cycles of self-pairing ``2*parity_sign``.

    The reduced class is the sum of the first ``k`` basis vectors; those
    ``k`` cycles are tagged first-kind and the rest second-kind.
    """
    if not 1 <= k <= total:
        raise LatticeError("need 1 <= k <= total", "bad_parameter")
    if parity_sign not in (1, -1):
        raise LatticeError("parity_sign must be +-1", "bad_parameter")
    L = Lattice([[2 * parity_sign if i == j else 0 for j in range(total)] for i in range(total)])
    gens = tuple(L.basis(i) for i in range(total))
    kinds = tuple("first" if i < k else "second" for i in range(total))
    A = tuple(1 if i < k else 0 for i in range(total))
    return GeneratorSet(L, gens, kinds), A


@dataclass(frozen=True)
class PlaneCurveModel:
    """Pairs of k-subsets of the affine intersection points on the two isotropic lines."""

    d: int
    eta: int
    k: int
    orbit_size: int
    predicted_size: int
    spectrum: frozenset[Fraction] | None = None
    big_orbit_size: int | None = None

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "eta": self.eta,
            "k": self.k,
            "orbit_size": self.orbit_size,
            "predicted_size": self.predicted_size,
        }
        if self.spectrum is not None:
            out["spectrum_size"] = len(self.spectrum)
            out["spectrum"] = [_fstr(x) for x in sorted(self.spectrum)]
        if self.big_orbit_size is not None:
            out["big_orbit_size"] = self.big_orbit_size
        return out


def _swap(subset: frozenset, i: int) -> frozenset:
    return frozenset(i + 1 if x == i else i if x == i + 1 else x for x in subset)


def _subset_orbit(points: int, k: int, sides: int) -> set:
    """BFS over tuples of k-subsets under adjacent transpositions on each side."""
    start = tuple(frozenset(range(k)) for _ in range(sides))
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for s in range(sides):
            for i in range(points - 1):
                nxt = state[:s] + (_swap(state[s], i),) + state[s + 1 :]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def _big_orbit(d: int, k: int) -> int:
    """Orbit of an ordered pair of disjoint k-subsets of 2d points under S_{2d}."""
    start = (frozenset(range(k)), frozenset(range(k, 2 * k)))
    seen = {start}
    queue = deque([start])
    while queue:
        a, b = queue.popleft()
        for i in range(2 * d - 1):
            nxt = (_swap(a, i), _swap(b, i))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


def build_plane_curve_model(
    d: int,
    eta: int,
    k: int,
    weights: tuple[Sequence, Sequence] | None = None,
    big: bool = False,
) -> PlaneCurveModel:
    """Enumerate the small-monodromy orbit of the reduced class for a plane curve.

    Each of the two isotropic lines through the point meets the curve in
    ``d - eta`` affine points; the class is a choice of ``k`` small circles on
    each line, and monodromy permutes the points on each line independently.
    ``weights`` assigns a value to every circle (default: distinct powers of
    two, which separates all states).  ``big`` also enumerates the orbit
    under the full permutation group of all ``2d`` points.
    """
    if eta < 0 or k < 1 or d - eta < k:
        raise LatticeError("need eta >= 0 and 1 <= k <= d - eta", "bad_parameter")
    npts = d - eta
    states = _subset_orbit(npts, k, 2)
    if weights is None:
        w1 = [Fraction(2**i) for i in range(npts)]
        w2 = [Fraction(2 ** (npts + i)) for i in range(npts)]
    else:
        w1 = [as_fraction(x) for x in weights[0]]
        w2 = [as_fraction(x) for x in weights[1]]
        if len(w1) != npts or len(w2) != npts:
            raise LatticeError(f"need {npts} weights per line", "bad_parameter")
    spectrum = frozenset(sum((w1[i] for i in a), Fraction(0)) + sum((w2[j] for j in b), Fraction(0)) for a, b in states)
    return PlaneCurveModel(
        d=d,
        eta=eta,
        k=k,
        orbit_size=len(states),
        predicted_size=math.comb(npts, k) ** 2,
        spectrum=spectrum,
        big_orbit_size=_big_orbit(d, k) if big else None,
    )


# ---------------------------------------------------------------------------
# Growth probe
# ---------------------------------------------------------------------------


@dataclass
class ProbeReport:
    verdict: str
    counts: list[int]
    schedule: list[int]
    orbit_sizes: list[int]
    reduced_by_kernel: bool

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "schedule": self.schedule,
            "value_counts": self.counts,
            "orbit_sizes": self.orbit_sizes,
            "reduced_by_kernel": self.reduced_by_kernel,
        }


def probe_completely_infinite(
    G: GeneratorSet,
    v: Sequence[int],
    form: LinearForm,
    depth_schedule: Sequence[int] = (4, 8, 16, 32),
    max_size: int = 200_000,
    reduce_kernel: bool = True,
) -> ProbeReport:
    """Count distinct values of ``form`` on depth-truncated orbits of ``v``.

    When ``form`` vanishes on the radical of the form, the problem is first
    pushed to the quotient lattice, where the value counts are the same.
    Verdicts: ``"finite"`` (orbit closes), ``"growth-consistent-with-infinite"``
    (counts strictly increase over the schedule) or ``"inconclusive"``.
    """
    v = vec(v)
    if form.is_zero():
        raise LatticeError("form must be nonzero", "zero_form")
    if all(G.lattice.inner(v, g) == 0 for g in G.generators):
        raise LatticeError("v is orthogonal to every generator", "orthogonal_start")
    schedule = sorted(int(s) for s in depth_schedule)
    if not schedule or schedule[0] < 1:
        raise LatticeError("depth schedule must be positive", "bad_limits")
    reduced = False
    if reduce_kernel and G.lattice.symmetry == "symmetric":
        ker = form_kernel(G.lattice)
        if ker and all(form(k) == 0 for k in ker):
            q = quotient_lattice(G.lattice)
            G, v, form = q.induced_generators(G), q.project(v), q.induced_form(form)
            reduced = True
    counts, sizes = [], []
    verdict = None
    for depth in schedule:
        rep = orbit(G, v, max_size=max_size, max_depth=depth)
        counts.append(len({form(w) for w in rep.vectors}))
        sizes.append(len(rep.vectors))
        if rep.closed:
            verdict = "finite"
            break
    if verdict is None:
        increasing = all(b > a for a, b in zip(counts, counts[1:]))
        verdict = "growth-consistent-with-infinite" if increasing and len(counts) > 1 else "inconclusive"
    return ProbeReport(verdict, counts, schedule, sizes, reduced)


def dtilde_rank_check(n: int) -> dict:
    """Compare the quadric lattice model's rank with the homology rank ``2n``.

    The model is ``D~_{n+1}`` plus, for odd ``n``, an ``(n-1)``-dimensional
    zero summand.  Both numbers are reported; they are not forced equal.
    """
    from .milnor import rank_H

    G = build_D_tilde(n + 1, zero_rank=(n - 1) if n % 2 else 0)
    ker = form_kernel(G.lattice)
    q = quotient_lattice(G.lattice)
    return {
        "n": n,
        "model_rank": G.lattice.rank,
        "quotient_rank": q.target.rank,
        "kernel_rank": len(ker),
        "quotient_plus_kernel": q.target.rank + len(ker),
        "rank_H": rank_H(2, n).rank_H,
    }
