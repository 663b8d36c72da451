"""
Small Matchings Module
Closed formulas for phi(G, m), m = 1..4, on r-regular bipartite graphs, the
4-cycle bound and a Monte Carlo check of the 4-cycle count distribution
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from modules import config
from modules.errors import ConstructionError, DomainError
from modules.expectations import configuration_biadjacency, make_rng
from modules.graph_core import count_4cycles_biadjacency


logger = logging.getLogger(__name__)

POISSON_TOLERANCE = 0.15


@dataclass(frozen=True)
class A4Max:
    """Largest 4-cycle count; exact is False when the bound was floored."""
    value: int
    exact: bool = True


def a4_max(n, r):
    """n r (r-1)^2 / 4, attained exactly by disjoint copies of K_r,r."""
    if r < 2 or n < 1:
        raise DomainError(f"need r >= 2 and n >= 1, got n={n}, r={r}")
    numerator = n * r * (r - 1) ** 2
    return A4Max(numerator // 4, numerator % 4 == 0)


@dataclass(frozen=True)
class SmallMInput:
    n: int
    r: int
    a4: int | None = None

    def __post_init__(self):
        if self.r < 2 or self.n < self.r:
            raise DomainError(f"need r >= 2 and n >= r, got n={self.n}, r={self.r}")
        if self.a4 is not None and not 0 <= self.a4 <= a4_max(self.n, self.r).value:
            raise DomainError(f"a4={self.a4} outside 0..{a4_max(self.n, self.r).value}")


def p1(n, r):
    """
    Part of phi(G, 4) common to every G in G(2n, r)

    The rational coefficients always combine to an integer.
    """
    x = Fraction(n * r)
    value = (
        x ** 4 / 24
        + x ** 3 * (1 - 2 * r) / 4
        + x ** 2 * (19 - 60 * r + 52 * r ** 2) / 24
        + x * (Fraction(5, 4) - 5 * r + 7 * r ** 2 - Fraction(7, 2) * r ** 3)
    )
    if value.denominator != 1:
        raise ConstructionError(f"p1({n}, {r}) = {value} is not an integer")
    return value.numerator


def phi_closed(params, m):
    """
    phi(G, m) for m <= 4 from n, r and (for m = 4) the 4-cycle count

    Args:
        params: SmallMInput
        m: 1, 2, 3 or 4

    Returns:
        int
    """
    n, r = params.n, params.r
    edges = n * r
    if m == 1:
        return edges
    if m == 2:
        return edges * (edges - (2 * r - 1)) // 2
    if m == 3:
        return (
            math.comb(edges, 3)
            - 2 * n * math.comb(r, 3)
            - edges * (r - 1) ** 2
            - 2 * n * math.comb(r, 2) * (edges - 2 * r - (r - 2))
        )
    if m == 4:
        if params.a4 is None:
            raise DomainError("phi(G, 4) needs the 4-cycle count a4")
        return p1(n, r) + params.a4
    raise DomainError(f"closed formulas cover m = 1..4, got {m}")


# ----------------------------------------------------------------------
# 4-cycle distribution
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoissonCheck:
    n: int
    r: int
    accepted: int
    rejected: int
    mean: float
    expected: float
    tolerance: float

    @property
    def passed(self):
        return abs(self.mean - self.expected) <= self.tolerance


def poisson_a4_check(n=200, r=3, samples=10000, seed=None, stream=0, tolerance=POISSON_TOLERANCE):
    """
    Mean 4-cycle count of simple stub-model draws against (r-1)^4 / 4

    Draws with a repeated edge are rejected until `samples` simple ones
    have been counted.

    Returns:
        PoissonCheck
    """
    if n < 2 or r < 2 or samples < 1:
        raise DomainError(f"need n, r >= 2 and samples >= 1, got n={n}, r={r}, samples={samples}")
    rng = make_rng(config.DEFAULT_SEED if seed is None else seed, stream)
    counts = np.empty(samples, dtype=np.int64)
    accepted = rejected = 0
    while accepted < samples:
        matrix = configuration_biadjacency(n, r, rng)
        if matrix.max() > 1:
            rejected += 1
            continue
        counts[accepted] = count_4cycles_biadjacency(matrix)
        accepted += 1
        if accepted % 1000 == 0:
            logger.debug(f"Poisson check: {accepted}/{samples} simple draws")
    result = PoissonCheck(n, r, accepted, rejected, float(counts.mean()), (r - 1) ** 4 / 4, tolerance)
    logger.info(f"Mean a4 {result.mean:.4f} over {accepted} simple draws ({rejected} rejected), "
                f"expected {result.expected}")
    return result
