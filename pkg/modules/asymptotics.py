"""
Asymptotics Module
Log-scale evaluation of the growth function gh_r, the finite lower matching
bound, perfect-matching bounds, the doubly stochastic partial-matching bound
and finite-n convergence diagnostics, with CSV-ready sweeps
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple

import numpy as np
import pandas as pd

from modules import config
from modules.errors import DomainError
from modules.expectations import RandomModel, expected_value


logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["r", "p", "m", "n", "quantity", "value"]


@dataclass(frozen=True)
class LogValue:
    """
    Natural logarithm of a nonnegative quantity

    zero marks an exactly-zero argument handled with 0 log 0 = 0. exact
    holds the quantity itself as a Fraction when it is rational and small
    enough to carry; proven is False where a bound is evaluated outside the
    range it is known to hold on.
    """
    value: float
    zero: bool = False
    exact: Fraction | None = None
    proven: bool = True

    def bounds_below(self, count):
        """True when the quantity is at most `count` (exactly when possible)."""
        if self.exact is not None:
            return Fraction(count) >= self.exact
        if count <= 0:
            return False
        return math.log(count) >= self.value - 1e-12 * max(1.0, abs(self.value))

    def ratio(self, count):
        """count / exp(value), evaluated in log space."""
        return math.exp(math.log(count) - self.value)


class Normalization(Enum):
    PER_VERTEX = "per-vertex"  # divide by 2n
    PER_SIDE = "per-side"  # divide by n

    def divisor(self, n):
        return 2 * n if self is Normalization.PER_VERTEX else n


def xlogx(x):
    return 0.0 if x == 0 else x * math.log(x)


def log_comb(n, m):
    return math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)


def _check_degree(r, minimum=2):
    if not isinstance(r, (int, np.integer)) or r < minimum:
        raise DomainError(f"degree must be an integer >= {minimum}, got {r}")


def _check_size(n, r, m):
    _check_degree(r, 1)
    if n < 1 or not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got n={n}, m={m}")


def _exact(n):
    return n <= config.EXACT_BOUND_LIMIT


# ----------------------------------------------------------------------
# Growth function and bounds
# ----------------------------------------------------------------------

def gh(r, p):
    """
    gh_r(p) = (p log r - p log p - 2(1-p) log(1-p) + (r-p) log(1-p/r)) / 2

    Args:
        r: Degree, integer >= 2
        p: Matching density in [0, 1]

    Returns:
        LogValue
    """
    _check_degree(r)
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    value = 0.5 * (p * math.log(r) - xlogx(p) - 2 * xlogx(1 - p) + (r - p) * math.log1p(-p / r))
    return LogValue(value, zero=p == 0)


def lmc_bound(n, r, m, exact=True):
    """
    Finite lower matching bound on phi(m, G) for G in G(2n, r)

    (1 + 1/(rn))^(rn-1) (1 - m/(rn))^(rn-m) (mr/n)^m C(n,m)^2

    Args:
        n: Side size
        r: Degree
        m: Matching size, 1..n
        exact: Also carry the exact rational when n is small enough

    Returns:
        LogValue
    """
    _check_size(n, r, m)
    total = r * n
    value = (total - 1) * math.log1p(1 / total) + m * math.log(m * r / n) + 2 * log_comb(n, m)
    if total > m:
        value += (total - m) * math.log1p(-m / total)
    exact_value = None
    if exact and _exact(n):
        exact_value = (
            Fraction(total + 1, total) ** (total - 1)
            * Fraction(total - m, total) ** (total - m)
            * Fraction(m * r, n) ** m
            * math.comb(n, m) ** 2
        )
    return LogValue(value, exact=exact_value)


class PerfectMatchingBounds(NamedTuple):
    schrijver: LogValue
    gurvits: LogValue


def perfect_matching_lower_bounds(n, r, exact=True):
    """
    Lower bounds on the number of perfect matchings of G in G(2n, r)

    Schrijver: ((r-1)^(r-1) / r^(r-2))^n. Gurvits multiplies this by
    r!/r^r (r/(r-1))^(r(r-1)) and is attained by K_r,r. Both are flagged
    unproven for r = 2.

    Returns:
        PerfectMatchingBounds
    """
    _check_degree(r)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    base = (r - 1) * math.log(r - 1) - (r - 2) * math.log(r)
    factor = math.lgamma(r + 1) - r * math.log(r) + r * (r - 1) * (math.log(r) - math.log(r - 1))
    proven = r >= 3
    schrijver_exact = gurvits_exact = None
    if exact and _exact(n):
        schrijver_exact = Fraction((r - 1) ** ((r - 1) * n), r ** ((r - 2) * n))
        gurvits_exact = (
            Fraction(math.factorial(r), r ** r)
            * Fraction(r ** (r * (r - 1)), (r - 1) ** (r * (r - 1)))
            * schrijver_exact
        )
    return PerfectMatchingBounds(
        LogValue(n * base, exact=schrijver_exact, proven=proven),
        LogValue(n * base + factor, exact=gurvits_exact, proven=proven),
    )


def fg_bound(r, s, p):
    """
    Partial-matching lower bound for doubly stochastic r-sparse limits

    (-p log p - 2(1-p) log(1-p)) / 2
      + ((r+s-1) log(1 - 1/(r+s)) - (s-1+p) log(1 - (1-p)/s)) / 2

    At s = 0 the second logarithm is only defined in its p -> 1 limit,
    where the term vanishes.

    Args:
        r: Degree, integer >= 3
        s: Integer >= 0
        p: Density in (0, 1]

    Returns:
        LogValue
    """
    _check_degree(r, 3)
    if not isinstance(s, (int, np.integer)) or s < 0:
        raise DomainError(f"s must be a nonnegative integer, got {s}")
    if not 0 < p <= 1:
        raise DomainError(f"p must lie in (0, 1], got {p}")
    first = -xlogx(p) - 2 * xlogx(1 - p)
    second = (r + s - 1) * math.log1p(-1 / (r + s))
    if s == 0:
        if p != 1:
            raise DomainError("fg bound with s = 0 is only defined at p = 1")
    else:
        second -= (s - 1 + p) * math.log1p(-(1 - p) / s)
    return LogValue(0.5 * (first + second))


def conjectured_lower_bound(n, r, m, exact=True):
    """log of C(n,m)^2 ((nr-m)/(nr))^(rn-m) (mr/n)^m."""
    _check_size(n, r, m)
    total = r * n
    value = 2 * log_comb(n, m) + m * math.log(m * r / n)
    if total > m:
        value += (total - m) * math.log1p(-m / total)
    exact_value = None
    if exact and _exact(n):
        exact_value = (
            math.comb(n, m) ** 2 * Fraction(total - m, total) ** (total - m) * Fraction(m * r, n) ** m
        )
    return LogValue(value, exact=exact_value)


# ----------------------------------------------------------------------
# Convergence diagnostics
# ----------------------------------------------------------------------

def entropy_proxy_cycle(n, m, normalization=Normalization.PER_VERTEX):
    """
    Normalized log of phi(m, C_2n) = C(2n-m, m) + C(2n-m-1, m-1)

    C_2n minimizes phi(m, .) among 2-regular bipartite graphs, so this is
    the finite-n stand-in for the r = 2 growth rate.
    """
    normalization = Normalization(normalization)
    if n < 1 or not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got n={n}, m={m}")
    count = math.comb(2 * n - m, m) + math.comb(2 * n - m - 1, m - 1)
    return LogValue(math.log(count) / normalization.divisor(n))


def expectation_growth(model, m, n, r, normalization=Normalization.PER_VERTEX):
    """log E_1 or log E_2 divided by 2n (or n)."""
    normalization = Normalization(normalization)
    value = expected_value(model, m, n, r)
    return (math.log(value.numerator) - math.log(value.denominator)) / normalization.divisor(n)


# ----------------------------------------------------------------------
# Sweeps
# ----------------------------------------------------------------------

def _matching_sizes(n, points):
    if points is None or points >= n:
        return list(range(1, n + 1))
    return sorted({int(round(x)) for x in np.linspace(1, n, points)})


def _frame(rows):
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    logger.info(f"Sweep produced {len(frame)} rows")
    return frame


def sweep_gh(r, points=101):
    rows = [(r, float(p), None, None, "gh", gh(r, float(p)).value) for p in np.linspace(0, 1, points)]
    return _frame(rows)


def sweep_lmc(r, n, points=None):
    """log lmc_bound(n, r, m) over m."""
    rows = [(r, None, m, n, "lmc", lmc_bound(n, r, m, exact=False).value) for m in _matching_sizes(n, points)]
    return _frame(rows)


def sweep_expectation(model, r, n, points=None, normalization=Normalization.PER_VERTEX):
    """Normalized log E_i over m, next to gh_r(m/n) for comparison."""
    model = RandomModel(model)
    rows = []
    for m in _matching_sizes(n, points):
        rows.append((r, None, m, n, model.value, expectation_growth(model, m, n, r, normalization)))
        rows.append((r, m / n, None, n, "gh", gh(r, m / n).value))
    return _frame(rows)


def sweep_cycle(n, points=None, normalization=Normalization.PER_VERTEX):
    rows = []
    for m in _matching_sizes(n, points):
        rows.append((2, None, m, n, "cycle", entropy_proxy_cycle(n, m, normalization).value))
        rows.append((2, m / n, None, n, "gh", gh(2, m / n).value))
    return _frame(rows)
