"""Milnor numbers of homogeneous isolated singularities and complete intersections.

All arithmetic is on Python ints, so ``(d - 1) ** n`` never overflows.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

__all__ = ["RankReport", "mu_hypersurface", "mu_codim2", "rank_H", "MilnorError"]


class MilnorError(ValueError):
    pass


@dataclass(frozen=True)
class RankReport:
    d: int
    n: int
    mu_tilde: int
    mu: int
    nu: int
    rank_H: int

    def __post_init__(self):
        if self.nu != self.mu + self.mu_tilde:
            raise MilnorError("nu must equal mu + mu_tilde")

    def to_json(self) -> dict:
        return asdict(self)


def mu_hypersurface(d: int, n: int) -> int:
    """Milnor number ``(d-1)^n`` of a homogeneous degree-``d`` function on C^n."""
    if d < 1 or n < 1:
        raise MilnorError("need d >= 1 and n >= 1")
    return (d - 1) ** n


def mu_codim2(a: int, b: int, n: int) -> int:
    """Milnor number of a homogeneous complete intersection of degrees ``a``, ``b``."""
    if a < 1 or b < 1 or n < 2:
        raise MilnorError("need a, b >= 1 and n >= 2")
    if a == b:
        return (a - 1) ** n * (a * n - a + 1)
    num = (a - 1) ** n * b - (b - 1) ** n * a
    q, r = divmod(num, a - b)
    if r:
        raise MilnorError(f"non-integral quotient {num}/{a - b}")
    return q


def rank_H(d: int, n: int) -> RankReport:
    """Rank of the vanishing homology group for degree ``d`` in C^n."""
    if d < 2:
        raise MilnorError("need d >= 2")
    if n < 2:
        raise MilnorError("need n >= 2")
    mu_t = mu_hypersurface(d, n)
    mu = mu_codim2(d, 2, n)
    if d == 2:
        rank = 2 * n
    else:
        num = 2 * (d - 1) ** n - d
        q, r = divmod(num, d - 2)
        if r:
            raise MilnorError(f"non-integral quotient {num}/{d - 2}")
        rank = (d - 1) ** n + q
    return RankReport(d=d, n=n, mu_tilde=mu_t, mu=mu, nu=mu + mu_t, rank_H=rank)
