"""
Enumeration Module
Isomorphism-free enumeration of path/cycle unions, 2-regular graphs and
regular bipartite (multi)graphs, plus extremum scans over their polynomials
"""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations_with_replacement, product

import networkx as nx
import numpy as np
import pandas as pd
from sympy.utilities.iterables import partitions

from modules import config
from modules.errors import CapExceededError, DomainError
from modules.families import OmegaFlavor, TwoRegularFlavor, describe, family, realize
from modules.graph_core import Multigraph, canonical_code, union_all
from modules.matchpoly import MatchingPolynomial, matching_polynomial


logger = logging.getLogger(__name__)


def integer_partitions(total, min_part=1, parts=None, even=False):
    """
    Partitions of `total` as nonincreasing tuples

    Args:
        total: Number to split
        min_part: Smallest allowed part
        parts: Exact number of parts, or None for any
        even: Only even parts
    """
    if total == 0:
        if not parts:
            yield ()
        return
    for shape in partitions(total, m=parts):
        # sympy yields {} when the constraints admit nothing
        if sum(size * count for size, count in shape.items()) != total:
            continue
        sizes = tuple(sorted((size for size, count in shape.items() for _ in range(count)), reverse=True))
        if parts is not None and len(sizes) != parts:
            continue
        if sizes[-1] < min_part or (even and any(size % 2 for size in sizes)):
            continue
        yield sizes


def _by_code(graphs):
    unique = {}
    for g in graphs:
        unique.setdefault(canonical_code(g), g)
    return [unique[code] for code in sorted(unique)]


# ----------------------------------------------------------------------
# Paths and cycles
# ----------------------------------------------------------------------

CYCLE_MINIMUM = {
    OmegaFlavor.SIMPLE: 3,
    OmegaFlavor.SIMPLE_BIPARTITE: 4,
    OmegaFlavor.MULTI: 2,
    OmegaFlavor.PATHS: 0,
}


def enumerate_omega(n, k, flavor):
    """
    Unions of k paths (each on at least 2 vertices) and cycles on n vertices

    Args:
        n: Vertex count
        k: Number of paths
        flavor: OmegaFlavor; PATHS admits no cycles at all

    Returns:
        One graph per isomorphism class, ordered by canonical code
    """
    flavor = OmegaFlavor(flavor)
    if k < 1 or 2 * k > n:
        raise DomainError(f"need 2 <= 2k <= n, got n={n}, k={k}")
    bipartite = flavor is OmegaFlavor.SIMPLE_BIPARTITE
    graphs = []
    for path_total in range(2 * k, n + 1):
        rest = n - path_total
        if flavor is OmegaFlavor.PATHS and rest:
            continue
        for paths in integer_partitions(path_total, min_part=2, parts=k):
            for cycles in integer_partitions(rest, min_part=CYCLE_MINIMUM[flavor], even=bipartite):
                terms = [("P", a, 1) for a in paths] + [("C", c, 1) for c in cycles]
                graphs.append(realize(family(*terms, multigraph=flavor is OmegaFlavor.MULTI)))
    return _by_code(graphs)


def enumerate_two_regular(n, flavor):
    """All 2-regular graphs on n vertices in the given flavor (cycle partitions)."""
    flavor = TwoRegularFlavor(flavor)
    minimum = {
        TwoRegularFlavor.SIMPLE: 3,
        TwoRegularFlavor.SIMPLE_BIPARTITE: 4,
        TwoRegularFlavor.MULTI_BIPARTITE: 2,
    }[flavor]
    even = flavor is not TwoRegularFlavor.SIMPLE
    multigraph = flavor is TwoRegularFlavor.MULTI_BIPARTITE
    graphs = [
        realize(family(*[("C", c, 1) for c in cycles], multigraph=multigraph))
        for cycles in integer_partitions(n, min_part=minimum, even=even)
    ]
    return _by_code(graphs)


# ----------------------------------------------------------------------
# Regular bipartite graphs
# ----------------------------------------------------------------------

def _bounded_compositions(total, length, cap):
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        if total - first <= (length - 1) * cap:
            for rest in _bounded_compositions(total - first, length - 1, cap):
                yield (first,) + rest


def doubly_lexical_matrices(n, r, max_entry):
    """
    n x n matrices with entries in 0..max_entry and all line sums r whose
    rows and columns are both lexicographically nonincreasing

    The lexicographically largest row-major arrangement of any matrix has
    this form, so every bipartite class is represented at least once.
    """
    rows = list(_bounded_compositions(r, n, max_entry))

    def extend(prefix, column_sums, ties):
        depth = len(prefix)
        if depth == n:
            yield np.array(prefix, dtype=np.int64)
            return
        room = (n - depth - 1) * max_entry
        for row in rows:
            if prefix and row > prefix[-1]:
                continue
            sums = [s + x for s, x in zip(column_sums, row)]
            if any(s > r or r - s > room for s in sums):
                continue
            # ties: adjacent column pairs whose prefixes are still equal
            if any(row[j] < row[j + 1] for j in ties):
                continue
            yield from extend(prefix + [row], sums, [j for j in ties if row[j] == row[j + 1]])

    yield from extend([], [0] * n, list(range(n - 1)))


@lru_cache(maxsize=None)
def connected_catalog(half, r, multi):
    """Connected r-regular bipartite (multi)graphs on 2*half vertices."""
    max_entry = r if multi else 1
    found = {}
    scanned = 0
    for matrix in doubly_lexical_matrices(half, r, max_entry):
        scanned += 1
        g = Multigraph.from_biadjacency(matrix)
        if nx.is_connected(g.to_networkx()):
            found.setdefault(canonical_code(g), g)
    kind = "multigraphs" if multi else "graphs"
    logger.info(f"{len(found)} connected {r}-regular bipartite {kind} on {2 * half} vertices "
                f"({scanned} matrices)")
    return tuple(found[code] for code in sorted(found))


def enumerate_regular_bipartite(two_n, r, multi=False, connected_only=False, cap=None):
    """
    r-regular bipartite (multi)graphs on two_n vertices, up to isomorphism

    Disconnected classes are unions of connected catalog members over the
    integer partitions of two_n / 2.

    Returns:
        Iterator of Multigraph ordered by canonical code
    """
    cap = config.ENUM_CAP if cap is None else cap
    if two_n > cap:
        raise CapExceededError(f"two_n={two_n} exceeds the enumeration cap {cap}")
    if two_n < 2 or two_n % 2:
        raise DomainError(f"two_n must be a positive even number, got {two_n}")
    half = two_n // 2
    if r < 1 or (not multi and r > half):
        raise DomainError(f"no simple {r}-regular bipartite graphs on {two_n} vertices")
    if connected_only:
        return iter(connected_catalog(half, r, multi))
    return _unions(half, r, multi)


def _unions(half, r, multi):
    smallest = 1 if multi else r
    graphs = []
    for sizes in integer_partitions(half, min_part=smallest):
        groups = sorted(Counter(sizes).items())
        choices = [combinations_with_replacement(connected_catalog(size, r, multi), count)
                   for size, count in groups]
        for picks in product(*choices):
            graphs.append(union_all(piece for group in picks for piece in group))
    yield from _by_code(graphs)


# ----------------------------------------------------------------------
# Extremum scans
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientExtremum:
    m: int
    minimum: int
    maximum: int
    argmin: frozenset
    argmax: frozenset


@dataclass(frozen=True)
class ExtremumReport:
    """
    Per-m minima and maxima of matching coefficients over a set of graphs

    Beyond a graph's own degree its coefficients count as zero.
    """
    entries: tuple
    codes: frozenset
    labels: tuple = ()

    @classmethod
    def single(cls, code, polynomial, label=None):
        entries = tuple(
            CoefficientExtremum(m, c, c, frozenset([code]), frozenset([code]))
            for m, c in enumerate(polynomial.coefficients)
        )
        return cls(entries, frozenset([code]), ((code, label),) if label else ())

    def _entry(self, m):
        if m < len(self.entries):
            return self.entries[m]
        return CoefficientExtremum(m, 0, 0, self.codes, self.codes)

    def merge(self, other):
        """Associative, commutative combination of two partial scans."""
        entries = []
        for m in range(max(len(self.entries), len(other.entries))):
            a, b = self._entry(m), other._entry(m)
            low = min(a.minimum, b.minimum)
            high = max(a.maximum, b.maximum)
            argmin = (a.argmin if a.minimum == low else frozenset()) | (b.argmin if b.minimum == low else frozenset())
            argmax = (a.argmax if a.maximum == high else frozenset()) | (b.argmax if b.maximum == high else frozenset())
            entries.append(CoefficientExtremum(m, low, high, argmin, argmax))
        labels = tuple(sorted(dict(self.labels + other.labels).items()))
        return ExtremumReport(tuple(entries), self.codes | other.codes, labels)

    @property
    def graph_count(self):
        return len(self.codes)

    @property
    def min_polynomial(self):
        return MatchingPolynomial(entry.minimum for entry in self.entries)

    @property
    def max_polynomial(self):
        return MatchingPolynomial(entry.maximum for entry in self.entries)

    @property
    def coefficientwise_min(self):
        """Codes attaining the minimum at every m."""
        return tuple(sorted(reduce(frozenset.intersection, (e.argmin for e in self.entries), self.codes)))

    @property
    def coefficientwise_max(self):
        return tuple(sorted(reduce(frozenset.intersection, (e.argmax for e in self.entries), self.codes)))

    def label(self, code):
        return dict(self.labels).get(code)

    def to_dict(self):
        """JSON-ready form; big integers as decimal strings, codes as text."""
        text = lambda codes: sorted(code.decode("ascii") for code in codes)
        return {
            "schema": 1,
            "graph_count": self.graph_count,
            "coefficients": [
                {
                    "m": entry.m,
                    "min": str(entry.minimum),
                    "max": str(entry.maximum),
                    "argmin": text(entry.argmin),
                    "argmax": text(entry.argmax),
                }
                for entry in self.entries
            ],
            "coefficientwise_min": text(self.coefficientwise_min),
            "coefficientwise_max": text(self.coefficientwise_max),
            "coefficientwise_min_unique": len(self.coefficientwise_min) == 1,
            "coefficientwise_max_unique": len(self.coefficientwise_max) == 1,
            "labels": {code.decode("ascii"): label for code, label in self.labels},
        }

    def to_frame(self):
        names = lambda codes: " | ".join(sorted(self.label(c) or c.decode("ascii") for c in codes))
        return pd.DataFrame(
            {
                "m": [e.m for e in self.entries],
                "min": [str(e.minimum) for e in self.entries],
                "max": [str(e.maximum) for e in self.entries],
                "argmin": [names(e.argmin) for e in self.entries],
                "argmax": [names(e.argmax) for e in self.entries],
            }
        )


def polynomials_for(graphs, threads=None):
    """
    Matching polynomials of `graphs`, in input order

    With threads > 1 the work is spread over a process pool; results do
    not depend on the worker count.
    """
    threads = config.DEFAULT_THREADS if threads is None else threads
    if threads <= 1 or len(graphs) < 2:
        return [matching_polynomial(g) for g in graphs]
    chunk = max(1, len(graphs) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(matching_polynomial, graphs, chunksize=chunk))


def extremum_scan(graphs, threads=None, labels=True):
    """
    Reduce a graph stream to per-m extrema of its matching coefficients

    Args:
        graphs: Iterable of Multigraph
        threads: Worker processes for the polynomial computations
        labels: Attach family names to codes where recognizable

    Returns:
        ExtremumReport
    """
    graphs = list(graphs)
    if not graphs:
        raise DomainError("extremum scan needs at least one graph")
    polynomials = polynomials_for(graphs, threads)
    partials = (
        ExtremumReport.single(canonical_code(g), poly, describe(g) if labels else None)
        for g, poly in zip(graphs, polynomials)
    )
    report = reduce(ExtremumReport.merge, partials)
    logger.info(f"Scanned {report.graph_count} graphs, {len(report.entries)} coefficients")
    return report
