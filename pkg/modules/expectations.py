"""
Expectations Module
Exact expected m-matching counts of random r-regular bipartite multigraphs
under the permutation-sum and stub (configuration) models, the composition
bounds on the first, seeded samplers and exhaustive model averages
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

import numpy as np
from sympy.utilities.iterables import partitions

from modules.errors import CapExceededError, DomainError
from modules.graph_core import Multigraph
from modules.matchpoly import matching_polynomial


logger = logging.getLogger(__name__)

# Largest probability space averaged over exhaustively
EXHAUSTIVE_CAP = 10 ** 6


class RandomModel(Enum):
    PERMUTATION_SUM = "e1"  # A = P_1 + ... + P_r, uniform independent permutation matrices
    CONFIGURATION = "e2"  # uniform bijection between nr left and nr right edge-stubs


def _check(m, n, r):
    if n < 1 or r < 1:
        raise DomainError(f"need n, r >= 1, got n={n}, r={r}")
    if not 1 <= m <= n:
        raise DomainError(f"m={m} outside 1..{n}")


# ----------------------------------------------------------------------
# Compositions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BalancedComposition:
    """
    The most even split of m into r nonnegative parts

    k parts equal floor(m/r) and the other r - k equal ceil(m/r).
    """
    parts: tuple
    k: int

    @classmethod
    def of(cls, m, r):
        if r < 1 or m < 0:
            raise DomainError(f"cannot split m={m} into r={r} parts")
        low, high = m // r, -(-m // r)
        k = r * high - m if high != low else 0
        return cls((low,) * k + (high,) * (r - k), k)


def composition_weight(parts, n):
    """prod (n - m_i)! / m_i! over the parts, as an exact rational."""
    weight = Fraction(1)
    for part in parts:
        if not 0 <= part <= n:
            raise DomainError(f"part {part} outside 0..{n}")
        weight *= Fraction(math.factorial(n - part), math.factorial(part))
    return weight


def _composition_classes(m, r):
    """(sorted parts padded with zeros to length r, number of orderings)."""
    for shape in partitions(m, m=r):
        if sum(size * count for size, count in shape.items()) != m:
            continue
        used = sum(shape.values())
        orderings = math.factorial(r) // math.factorial(r - used)
        for count in shape.values():
            orderings //= math.factorial(count)
        parts = tuple(size for size, count in shape.items() for _ in range(count))
        yield parts + (0,) * (r - used), orderings


# ----------------------------------------------------------------------
# Exact expectations
# ----------------------------------------------------------------------

def expected_e1(m, n, r):
    """
    Mean of perm_m(P_1 + ... + P_r) over independent uniform permutations

    E_1 = C(n,m)^2 (m!)^2 / (n!)^r * sum over compositions (m_1..m_r) of m
    of prod (n - m_i)! / m_i!, summed here one partition class at a time.

    Args:
        m: Matching size, 1..n
        n: Side size
        r: Number of permutation matrices

    Returns:
        Fraction
    """
    _check(m, n, r)
    # m! / prod m_i! is a multinomial, so the whole sum stays integral
    total = 0
    for parts, orderings in _composition_classes(m, r):
        multinomial = math.factorial(m) // math.prod(math.factorial(part) for part in parts)
        total += orderings * multinomial * math.prod(math.factorial(n - part) for part in parts)
    return Fraction(math.comb(n, m) ** 2 * math.factorial(m) * total, math.factorial(n) ** r)


def e1_bounds(m, n, r):
    """
    Lower and upper bounds on E_1 from the balanced composition
    (valid for 2 <= r <= m <= n)

    The balanced composition carries the largest term, so E_1 lies between
    that term and C(m+r-1, r-1) times it.

    Returns:
        (lower, upper) as Fractions
    """
    _check(m, n, r)
    if not 2 <= r <= m:
        raise DomainError(f"E_1 bounds need 2 <= r <= m, got m={m}, r={r}")
    balanced = BalancedComposition.of(m, r)
    lower = composition_weight(balanced.parts, n) / (
        Fraction(math.factorial(n)) ** (r - 2) * math.factorial(n - m) ** 2
    )
    return lower, math.comb(m + r - 1, r - 1) * lower


def expected_e2(m, n, r):
    """Mean of phi(m, .) under the stub model: C(n,m)^2 r^(2m) m! (rn-m)! / (rn)!."""
    _check(m, n, r)
    return Fraction(
        math.comb(n, m) ** 2 * r ** (2 * m) * math.factorial(m) * math.factorial(r * n - m),
        math.factorial(r * n),
    )


def expected_value(model, m, n, r):
    model = RandomModel(model)
    if model is RandomModel.PERMUTATION_SUM:
        return expected_e1(m, n, r)
    return expected_e2(m, n, r)


# ----------------------------------------------------------------------
# Samplers
# ----------------------------------------------------------------------

def make_rng(seed, stream=0):
    """Counter-based generator for (seed, stream); streams are independent."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


def _rng(seed, stream):
    return seed if isinstance(seed, np.random.Generator) else make_rng(seed, stream)


def permutation_biadjacency(n, r, rng):
    matrix = np.zeros((n, n), dtype=np.int64)
    rows = np.arange(n)
    for _ in range(r):
        matrix[rows, rng.permutation(n)] += 1
    return matrix


def configuration_biadjacency(n, r, rng):
    """Stub i of left vertex i // r meets right vertex mu(i) // r."""
    left = np.arange(n * r) // r
    right = rng.permutation(n * r) // r
    return np.bincount(left * n + right, minlength=n * n).reshape(n, n)


def sample_permutation_model(n, r, seed, stream=0):
    """
    Overlay r uniform perfect matchings of K_n,n

    Args:
        n: Side size
        r: Degree
        seed: Integer seed or an np.random.Generator to draw from
        stream: Stream id when seed is an integer

    Returns:
        Multigraph, r-regular bipartite on 2n vertices
    """
    if n < 1 or r < 1:
        raise DomainError(f"need n, r >= 1, got n={n}, r={r}")
    return Multigraph.from_biadjacency(permutation_biadjacency(n, r, _rng(seed, stream)))


def sample_configuration_model(n, r, seed, stream=0):
    """Stub-model draw; same arguments as sample_permutation_model."""
    if n < 1 or r < 1:
        raise DomainError(f"need n, r >= 1, got n={n}, r={r}")
    return Multigraph.from_biadjacency(configuration_biadjacency(n, r, _rng(seed, stream)))


_DRAW = {
    RandomModel.PERMUTATION_SUM: permutation_biadjacency,
    RandomModel.CONFIGURATION: configuration_biadjacency,
}


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    stderr: float
    samples: int

    def within(self, value, sigmas=3.0):
        return abs(self.mean - float(value)) <= sigmas * self.stderr


def _coefficients_by_matrix(counts, n, m):
    values = {}
    for key in counts:
        values[key] = matching_polynomial(Multigraph.from_biadjacency(np.array(key).reshape(n, n))).coefficient(m)
    return values


def monte_carlo_mean(model, m, n, r, samples, seed, stream=0):
    """
    Sample mean of phi(m, .) under a random model

    Draws are tallied by biadjacency matrix, so each distinct outcome is
    expanded once.

    Returns:
        MonteCarloEstimate
    """
    model = RandomModel(model)
    _check(m, n, r)
    if samples < 2:
        raise DomainError("Monte Carlo needs at least 2 samples")
    rng = make_rng(seed, stream)
    draw = _DRAW[model]
    counts = Counter(tuple(draw(n, r, rng).ravel().tolist()) for _ in range(samples))
    values = _coefficients_by_matrix(counts, n, m)
    weights = np.array([counts[key] for key in counts], dtype=float)
    observed = np.array([values[key] for key in counts], dtype=float)
    mean = float((weights * observed).sum() / samples)
    variance = float((weights * (observed - mean) ** 2).sum() / (samples - 1))
    logger.info(f"{model.value} Monte Carlo: {samples} draws, {len(counts)} distinct outcomes")
    return MonteCarloEstimate(mean, math.sqrt(variance / samples), samples)


# ----------------------------------------------------------------------
# Exhaustive model averages
# ----------------------------------------------------------------------

def _outcome_counts(model, n, r):
    if model is RandomModel.PERMUTATION_SUM:
        size = math.factorial(n) ** r
        if size > EXHAUSTIVE_CAP:
            raise CapExceededError(f"(n!)^r = {size} draws exceed the exhaustive cap")
        rows = np.arange(n)
        counts = Counter()
        for perms in product(permutations(range(n)), repeat=r):
            matrix = np.zeros((n, n), dtype=np.int64)
            for perm in perms:
                matrix[rows, list(perm)] += 1
            counts[tuple(matrix.ravel().tolist())] += 1
        return counts, size
    size = math.factorial(n * r)
    if size > EXHAUSTIVE_CAP:
        raise CapExceededError(f"(nr)! = {size} draws exceed the exhaustive cap")
    left = np.arange(n * r) // r
    counts = Counter()
    for mu in permutations(range(n * r)):
        right = np.array(mu) // r
        counts[tuple(np.bincount(left * n + right, minlength=n * n).tolist())] += 1
    return counts, size


@lru_cache(maxsize=None)
def exhaustive_average(model, n, r):
    """
    Exact mean of every matching coefficient over a whole probability space

    Returns:
        Tuple of Fractions indexed by m = 0..n
    """
    model = RandomModel(model)
    counts, size = _outcome_counts(model, n, r)
    totals = [0] * (n + 1)
    for key, count in counts.items():
        poly = matching_polynomial(Multigraph.from_biadjacency(np.array(key).reshape(n, n)))
        for m in range(n + 1):
            totals[m] += count * poly.coefficient(m)
    logger.debug(f"{model.value} exhaustive: {size} draws, {len(counts)} distinct matrices")
    return tuple(Fraction(total, size) for total in totals)


def exhaustive_e1(m, n, r):
    _check(m, n, r)
    return exhaustive_average(RandomModel.PERMUTATION_SUM, n, r)[m]


def exhaustive_e2(m, n, r):
    _check(m, n, r)
    return exhaustive_average(RandomModel.CONFIGURATION, n, r)[m]


def stub_multiplicity(g):
    """
    Number of stub permutations whose outcome has the biadjacency of g

    (r!)^(2n) / prod A_ij! for the biadjacency A of an r-regular bipartite
    multigraph with n vertices per side, in the labeling g carries.
    """
    matrix, left, right = g.biadjacency()
    if len(left) != len(right) or not left:
        raise DomainError("stub multiplicity needs equal nonempty sides")
    degrees = set(g.degrees)
    if len(degrees) != 1:
        raise DomainError("stub multiplicity needs a regular graph")
    r = degrees.pop()
    count = math.factorial(r) ** (2 * len(left))
    for entry in matrix.ravel().tolist():
        count //= math.factorial(entry)
    return count
