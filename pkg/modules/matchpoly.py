"""
Matching Polynomial Module
Exact matching generating polynomials, integer polynomial arithmetic,
the coefficientwise partial order and sums of m x m permanents
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import zip_longest

import numpy as np
from networkx.utils import reverse_cuthill_mckee_ordering

from modules import config
from modules.errors import CapExceededError, DomainError
from modules.graph_core import Multigraph, canonical_code, component_vertex_sets, graph_from_code


logger = logging.getLogger(__name__)


class OrderRelation(Enum):
    EQUAL = "Equal"
    STRICTLY_LESS = "StrictlyLess"
    STRICTLY_GREATER = "StrictlyGreater"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True, eq=False)
class SignedPolynomial:
    """Integer polynomial, coefficients lowest degree first, no trailing zeros."""
    coefficients: tuple = ()

    def __post_init__(self):
        coefficients = [int(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    # equality is by value across both polynomial classes
    def __eq__(self, other):
        if not isinstance(other, SignedPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    @classmethod
    def parse(cls, text):
        """Read the comma-separated serialization written by __str__."""
        try:
            return cls(int(token) for token in text.split(","))
        except ValueError as e:
            raise DomainError(f"not a coefficient list: '{text}'") from e

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def coefficient(self, m):
        return self.coefficients[m] if 0 <= m < len(self.coefficients) else 0

    def shift(self, power):
        """Multiply by x**power."""
        if not self.coefficients:
            return SignedPolynomial()
        return SignedPolynomial((0,) * power + self.coefficients)

    def __add__(self, other):
        return SignedPolynomial(
            a + b for a, b in zip_longest(self.coefficients, other.coefficients, fillvalue=0)
        )

    def __sub__(self, other):
        return subtract(self, other)

    def __neg__(self):
        return SignedPolynomial(-c for c in self.coefficients)

    def __mul__(self, other):
        if isinstance(other, int):
            return SignedPolynomial(c * other for c in self.coefficients)
        return multiply(self, other)

    __rmul__ = __mul__

    def __str__(self):
        return ",".join(str(c) for c in self.coefficients) or "0"


@dataclass(frozen=True, eq=False)
class MatchingPolynomial(SignedPolynomial):
    """Polynomial whose coefficient m counts m-matchings; all coefficients >= 0."""

    def __post_init__(self):
        super().__post_init__()
        if any(c < 0 for c in self.coefficients):
            raise DomainError("matching polynomial coefficients must be nonnegative")


ONE = MatchingPolynomial((1,))


def _convolve(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def multiply(f, g):
    """Product; stays a MatchingPolynomial when both factors are."""
    product = _convolve(f.coefficients, g.coefficients)
    if isinstance(f, MatchingPolynomial) and isinstance(g, MatchingPolynomial):
        return MatchingPolynomial(product)
    return SignedPolynomial(product)


def subtract(f, g):
    return SignedPolynomial(
        a - b for a, b in zip_longest(f.coefficients, g.coefficients, fillvalue=0)
    )


def compare(f, g):
    """
    Coefficientwise order of f relative to g

    STRICTLY_LESS means g - f has no negative coefficient and f != g.
    """
    difference = [b - a for a, b in zip_longest(f.coefficients, g.coefficients, fillvalue=0)]
    nonnegative = all(d >= 0 for d in difference)
    nonpositive = all(d <= 0 for d in difference)
    if nonnegative and nonpositive:
        return OrderRelation.EQUAL
    if nonnegative:
        return OrderRelation.STRICTLY_LESS
    if nonpositive:
        return OrderRelation.STRICTLY_GREATER
    return OrderRelation.INCOMPARABLE


# ----------------------------------------------------------------------
# Paths and cycles
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def path_poly(k):
    """p_k, the matching polynomial of the path on k vertices."""
    if k < 0:
        raise DomainError(f"path order must be nonnegative, got {k}")
    return MatchingPolynomial(math.comb(k - m, m) for m in range(k // 2 + 1))


@lru_cache(maxsize=None)
def cycle_poly(k):
    """q_k, the matching polynomial of the k-cycle (q_2 belongs to H_2)."""
    if k < 2:
        raise DomainError(f"cycle order must be at least 2, got {k}")
    return MatchingPolynomial(
        [1] + [math.comb(k - m, m) + math.comb(k - m - 1, m - 1) for m in range(1, k // 2 + 1)]
    )


# ----------------------------------------------------------------------
# Graph polynomials
# ----------------------------------------------------------------------

def matching_polynomial(g, use_cache=True):
    """
    Matching generating polynomial of a multigraph

    The polynomial is the product over connected components. Paths and
    cycles use closed forms; any other component is expanded exactly,
    with results shared across calls through an LRU keyed by canonical code.

    Args:
        g: Multigraph
        use_cache: Consult the shared component cache

    Returns:
        MatchingPolynomial
    """
    coefficients = (1,)
    for vertices in component_vertex_sets(g):
        piece = g.induced_subgraph(vertices)
        coefficients = _convolve(coefficients, _component_coefficients(piece, use_cache))
    return MatchingPolynomial(coefficients)


def _component_coefficients(piece, use_cache):
    n = piece.vertex_count
    if n == 1:
        return (1,)
    if n == 2:
        return (1, piece.edges[0][2])
    if piece.is_simple and max(piece.degrees) <= 2:
        if len(piece.edges) == n - 1:
            return path_poly(n).coefficients
        return cycle_poly(n).coefficients
    if use_cache:
        return _coefficients_for_code(canonical_code(piece))
    return _expand(piece)


@lru_cache(maxsize=config.MEMO_CACHE_SIZE)
def _coefficients_for_code(code):
    return _expand(graph_from_code(code))


def _expand(g):
    # Edge branching applied to every edge at the lowest remaining vertex v:
    #   Phi(G) = Phi(G - v) + x * sum_u mult(v, u) * Phi(G - v - u)
    # Residual graphs are induced, so a vertex bitmask identifies them.
    order = list(reverse_cuthill_mckee_ordering(g.to_networkx()))
    position = {v: i for i, v in enumerate(order)}
    neighbors = [[(position[u], mult) for u, mult in g.adjacency[v]] for v in order]
    memo = {0: (1,)}

    def phi(mask):
        known = memo.get(mask)
        if known is not None:
            return known
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        total = list(phi(rest))
        for u, mult in neighbors[v]:
            if rest >> u & 1:
                sub = phi(rest & ~(1 << u))
                if len(total) < len(sub) + 1:
                    total.extend([0] * (len(sub) + 1 - len(total)))
                for i, c in enumerate(sub):
                    total[i + 1] += mult * c
        memo[mask] = tuple(total)
        return memo[mask]

    result = phi((1 << g.vertex_count) - 1)
    logger.debug(f"Expanded {g.vertex_count}-vertex component over {len(memo)} residual graphs")
    return result


def matching_polynomial_bruteforce(g, cap=None):
    """
    Count matchings by listing every one of them

    Each edge of multiplicity m contributes m parallel slots; parallel slots
    share both ends, so no matching contains two of them.
    """
    cap = config.BRUTEFORCE_EDGE_CAP if cap is None else cap
    slots = [(u, v) for u, v, mult in g.edges for _ in range(mult)]
    if len(slots) > cap:
        raise CapExceededError(f"{len(slots)} edge slots exceed the brute-force cap {cap}")
    counts = [0] * (g.vertex_count // 2 + 1)

    def extend(start, used, size):
        counts[size] += 1
        for i in range(start, len(slots)):
            u, v = slots[i]
            bits = (1 << u) | (1 << v)
            if not used & bits:
                extend(i + 1, used | bits, size + 1)

    extend(0, 0, 0)
    return MatchingPolynomial(counts)


def perm_m(matrix, m):
    """
    Sum of the permanents of all m x m submatrices

    Equal to the number of m-matchings of the bipartite multigraph whose
    biadjacency matrix is `matrix`.
    """
    array = np.asarray(matrix)
    if array.ndim != 2:
        raise DomainError("perm_m expects a matrix")
    rows, cols = array.shape
    if not 1 <= m <= min(rows, cols):
        raise DomainError(f"m={m} outside 1..{min(rows, cols)}")
    return matching_polynomial(Multigraph.from_biadjacency(array)).coefficient(m)
