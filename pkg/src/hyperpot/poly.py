"""Exact multivariate and univariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` throughout.  Floating point only
enters when a polynomial is evaluated at floating (or numpy) arguments.
Real root counting uses Sturm sequences built from primitive pseudo-remainders,
so every count is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "MultiPoly",
    "UniPoly",
    "PolyError",
    "as_fraction",
    "evaluate",
    "gradient",
    "principal_part",
    "restrict_to_line",
    "real_root_count",
    "eta_factor_count",
]

Exponent = tuple[int, ...]


class PolyError(ValueError):
    """Raised on invalid polynomial input (zero polynomial, arity mismatch...)."""


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings, ``"p/q"`` strings or floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        if not math.isfinite(value):
            raise PolyError(f"non-finite coefficient {value!r}")
        return Fraction(value)
    # numpy scalars land here
    return as_fraction(value.item())


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients.

    Terms are kept in a dict keyed by exponent tuples, sorted in descending
    lexicographic order so iteration (and printing, JSON) is deterministic.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms", "__dict__")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 1:
            raise PolyError("nvars must be positive")
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise PolyError(f"bad exponent {exp} for nvars={nvars}")
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.nvars = nvars
        self._terms = {e: clean[e] for e in sorted(clean, reverse=True) if clean[e]}

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def variables(cls, nvars: int) -> tuple["MultiPoly", ...]:
        return tuple(cls.variable(i, nvars) for i in range(nvars))

    @classmethod
    def sum_of_squares(cls, nvars: int, count: int | None = None) -> "MultiPoly":
        """``x_1^2 + ... + x_count^2`` (all variables by default)."""
        count = nvars if count is None else count
        terms = {}
        for i in range(count):
            exp = [0] * nvars
            exp[i] = 2
            terms[tuple(exp)] = 1
        return cls(nvars, terms)

    # -- basic accessors --------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if _is_exact(other):
            return self == MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, tuple(self._terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self._terms.items():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise PolyError("nvars mismatch")
            return other
        return MultiPoly.constant(as_fraction(other), self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_fraction(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return MultiPoly(self.nvars, {e: v / c for e, v in self._terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and structure -------------------------------------------

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def gradient(self) -> tuple["MultiPoly", ...]:
        return tuple(self.diff(i) for i in range(self.nvars))

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == k})

    def principal_part(self) -> "MultiPoly":
        if self.is_zero():
            raise PolyError("principal part of the zero polynomial")
        return self.homogeneous_part(self.degree())

    def shift(self, center: Sequence) -> "MultiPoly":
        """Return ``y -> p(center + y)`` exactly."""
        center = [as_fraction(c) for c in center]
        if len(center) != self.nvars:
            raise PolyError("dimension mismatch")
        ys = MultiPoly.variables(self.nvars)
        shifted = [ys[i] + center[i] for i in range(self.nvars)]
        powers: list[dict[int, MultiPoly]] = [{} for _ in range(self.nvars)]
        out = MultiPoly(self.nvars)
        for e, c in self._terms.items():
            term = MultiPoly.constant(c, self.nvars)
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = shifted[i] ** k
                    term = term * powers[i][k]
            out = out + term
        return out

    def divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Division with remainder in descending lex order.

        With a single divisor the remainder vanishes iff the division is exact.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = next(iter(divisor._terms.items()))
        quot: dict[Exponent, Fraction] = {}
        rem: dict[Exponent, Fraction] = {}
        work = dict(self._terms)
        while work:
            e = max(work)
            c = work.pop(e)
            if all(a >= b for a, b in zip(e, lead_e)):
                qe = tuple(a - b for a, b in zip(e, lead_e))
                qc = c / lead_c
                quot[qe] = quot.get(qe, Fraction(0)) + qc
                for de, dc in divisor._terms.items():
                    if de == lead_e:
                        continue
                    te = tuple(a + b for a, b in zip(qe, de))
                    v = work.get(te, Fraction(0)) - qc * dc
                    if v:
                        work[te] = v
                    else:
                        work.pop(te, None)
            else:
                rem[e] = c
        return MultiPoly(self.nvars, quot), MultiPoly(self.nvars, rem)

    # -- evaluation -------------------------------------------------------

    @cached_property
    def _nest_exact(self):
        return _nest(list(self._terms.items()), 0, self.nvars)

    @cached_property
    def _nest_float(self):
        return _nest([(e, float(c)) for e, c in self._terms.items()], 0, self.nvars)

    def __call__(self, *x):
        if len(x) == 1 and self.nvars != 1:
            x = tuple(x[0])
        return evaluate(self, x)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(e), "coeff": fraction_str(c)} for e, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        try:
            nvars = int(data["nvars"])
            terms: dict[Exponent, Fraction] = {}
            for t in data["terms"]:
                e = tuple(int(v) for v in t["exp"])
                terms[e] = terms.get(e, Fraction(0)) + as_fraction(t["coeff"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise PolyError(f"malformed polynomial JSON: {exc}") from exc
        return cls(nvars, terms)


def fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _nest(items, var: int, nvars: int):
    """Recursive Horner layout: list of (power, sub) sorted by descending power."""
    if var == nvars:
        return sum((c for _, c in items), 0)
    groups: dict[int, list] = {}
    for e, c in items:
        groups.setdefault(e[var], []).append((e, c))
    return [(p, _nest(groups[p], var + 1, nvars)) for p in sorted(groups, reverse=True)]


def _horner(nest, x, var: int):
    if var == len(x):
        return nest
    xv = x[var]
    acc = 0
    last = None
    for p, sub in nest:
        val = _horner(sub, x, var + 1)
        if last is None:
            acc = val
        else:
            acc = acc * xv ** (last - p) + val
        last = p
    if last:
        acc = acc * xv**last
    return acc


def evaluate(p: MultiPoly, x: Sequence):
    """Evaluate ``p`` at ``x``.

    Exact when every coordinate is an int or Fraction; otherwise floating,
    which also covers numpy arrays (broadcast elementwise).
    """
    x = tuple(x)
    if len(x) != p.nvars:
        raise PolyError(f"expected {p.nvars} coordinates, got {len(x)}")
    if not p._terms:
        return Fraction(0) if all(_is_exact(v) for v in x) else 0.0 * x[0]
    if all(_is_exact(v) for v in x):
        return Fraction(_horner(p._nest_exact, x, 0))
    return _horner(p._nest_float, x, 0) + 0.0 * x[0]


def gradient(p: MultiPoly) -> tuple[MultiPoly, ...]:
    return p.gradient()


def principal_part(p: MultiPoly) -> MultiPoly:
    return p.principal_part()


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Univariate rational polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if _is_exact(other):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[fraction_str(c) for c in self.coeffs]})"

    def __add__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, t):
        acc = Fraction(0) if _is_exact(t) else 0.0
        cs = self.coeffs if _is_exact(t) else [float(c) for c in self.coeffs]
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), UniPoly(rem)
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return UniPoly(quot), UniPoly(rem[: len(other.coeffs) - 1])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(c / self.lead for c in self.coeffs)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def squarefree(self) -> "UniPoly":
        """``u / gcd(u, u')``: same roots, all simple."""
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self
        return self.divmod(g)[0]

    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficient list with the same roots and sign."""
        return _primitive_from_fractions(self.coeffs)

    def homogenized_root_at_infinity(self, degree: int) -> int:
        """Multiplicity of the root at infinity once viewed as a binary form of ``degree``."""
        return degree - self.degree()


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------


def _primitive(cs: list[int]) -> list[int]:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    if g > 1:
        cs = [c // g for c in cs]
    return cs


def _primitive_from_fractions(cs: Sequence[Fraction]) -> list[int]:
    if not cs:
        return []
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _primitive([int(c * den) for c in cs])


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of ``|lc(b)|^(deg a - deg b + 1) * a`` divided by ``b``.

    Scaling by the absolute value keeps the sign structure Sturm needs.
    """
    a = list(a)
    lb = b[-1]
    scale = abs(lb)
    sgn = 1 if lb > 0 else -1
    db = len(b) - 1
    for k in range(len(a) - 1 - db, -1, -1):
        # a <- scale * a - sgn * a[top] * x^k * b;  keeps a positive multiple
        top = a[k + db]
        a = [scale * c for c in a]
        if top:
            for j, c in enumerate(b):
                a[k + j] -= sgn * top * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def sturm_sequence(u: UniPoly) -> list[list[int]]:
    """Sturm chain of ``u`` as primitive integer coefficient lists."""
    if u.is_zero():
        raise PolyError("Sturm sequence of the zero polynomial")
    p0 = u.integer_coeffs()
    p1 = _primitive([i * c for i, c in enumerate(p0) if i])
    seq = [p0]
    if p1:
        seq.append(p1)
    while len(seq) >= 2 and len(seq[-1]) > 1:
        r = _prem(seq[-2], seq[-1])
        if not r:
            break
        r = _primitive([-c for c in r])
        seq.append(r)
    return seq


def _sign_at(cs: list[int], t) -> int:
    """Sign of the integer polynomial at a Fraction or +-inf."""
    if t == math.inf:
        return (cs[-1] > 0) - (cs[-1] < 0)
    if t == -math.inf:
        s = (cs[-1] > 0) - (cs[-1] < 0)
        return s if (len(cs) - 1) % 2 == 0 else -s
    t = as_fraction(t)
    p, q = t.numerator, t.denominator
    # q^n * u(p/q) has the sign of u(p/q); homogeneous Horner in (p, q)
    val = cs[-1]
    qpow = 1
    for c in reversed(cs[:-1]):
        qpow *= q
        val = val * p + c * qpow
    return (val > 0) - (val < 0)


def _variations(seq: list[list[int]], t) -> int:
    signs = [s for s in (_sign_at(p, t) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _distinct_in(u: UniPoly, lo, hi) -> int:
    seq = sturm_sequence(u.squarefree())
    return _variations(seq, lo) - _variations(seq, hi)


def real_root_count(u: UniPoly, lo=-math.inf, hi=math.inf, distinct: bool = True) -> int:
    """Exact number of real roots of ``u`` in the half-open interval ``(lo, hi]``.

    ``lo``/``hi`` may be rationals or +-inf.  With ``distinct=False`` roots
    are counted with multiplicity.
    """
    if u.is_zero():
        raise PolyError("root count of the zero polynomial")
    if not (lo < hi):
        raise PolyError("need lo < hi")
    if u.degree() == 0:
        return 0
    if distinct:
        return _distinct_in(u, lo, hi)
    # a root of multiplicity m survives in m successive gcd(u, u') layers
    total = 0
    g = u
    while g.degree() > 0:
        total += _distinct_in(g, lo, hi)
        g = g.gcd(g.derivative())
    return total


# ---------------------------------------------------------------------------
# Line restriction and the plane-curve factor count
# ---------------------------------------------------------------------------


def restrict_to_line(p: MultiPoly, a: Sequence, v: Sequence) -> UniPoly:
    """``t -> p(a + t v)`` as an exact univariate polynomial."""
    a = [as_fraction(c) for c in a]
    v = [as_fraction(c) for c in v]
    if len(a) != p.nvars or len(v) != p.nvars:
        raise PolyError("dimension mismatch")
    if not any(v):
        raise PolyError("zero direction")
    lines = [UniPoly([ai, vi]) for ai, vi in zip(a, v)]
    cache: dict[tuple[int, int], UniPoly] = {}
    out = UniPoly()
    for e, c in p._terms.items():
        term = UniPoly([c])
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = lines[i] ** k
                term = term * cache[key]
        out = out + term
    return out


def eta_factor_count(p: MultiPoly) -> int:
    """Largest ``m`` with ``(x1^2 + x2^2)^m`` dividing the principal part of ``p``."""
    if p.nvars != 2:
        raise PolyError("eta_factor_count needs a polynomial in two variables")
    if p.is_zero():
        raise PolyError("eta_factor_count of the zero polynomial")
    q = MultiPoly.sum_of_squares(2)
    rest = p.principal_part()
    m = 0
    while rest.degree() >= 2:
        quot, rem = rest.divmod(q)
        if not rem.is_zero():
            break
        m += 1
        rest = quot
    return m
