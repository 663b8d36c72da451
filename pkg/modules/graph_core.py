"""
Graph Core Module
Immutable multigraphs, structural queries, 4-cycle census and canonical codes
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from pathlib import Path

import networkx as nx
import numpy as np

from modules import config
from modules.errors import DomainError, GraphFormatError


logger = logging.getLogger(__name__)

# ASCII byte string naming an isomorphism class, see canonical_code()
CanonicalCode = bytes


@dataclass(frozen=True)
class Multigraph:
    """
    Undirected loopless multigraph

    edges holds (u, v, multiplicity) triples with u < v, sorted, one per pair.
    bipartition, when present, is a 0/1 color per vertex that every edge crosses.
    Build instances with from_edges / from_biadjacency rather than directly.
    """
    vertex_count: int
    edges: tuple = ()
    bipartition: tuple | None = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise DomainError("vertex_count must be nonnegative")
        previous = None
        for u, v, mult in self.edges:
            if not 0 <= u < v < self.vertex_count:
                raise DomainError(f"edge ({u}, {v}) is a loop, unordered or out of range")
            if mult < 1:
                raise DomainError(f"edge ({u}, {v}) has multiplicity {mult}")
            if previous is not None and (u, v) <= previous:
                raise DomainError("edges must be sorted and merged, use Multigraph.from_edges")
            previous = (u, v)
        if self.bipartition is not None:
            if len(self.bipartition) != self.vertex_count or set(self.bipartition) - {0, 1}:
                raise DomainError("bipartition must give a 0/1 color for every vertex")
            for u, v, _ in self.edges:
                if self.bipartition[u] == self.bipartition[v]:
                    raise DomainError(f"edge ({u}, {v}) does not cross the bipartition")

    @classmethod
    def from_edges(cls, vertex_count, edges, bipartition=None):
        """
        Build a multigraph from (u, v) or (u, v, mult) items

        Repeated pairs add up their multiplicities.
        """
        counts = Counter()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            mult = int(edge[2]) if len(edge) > 2 else 1
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            counts[(min(u, v), max(u, v))] += mult
        merged = tuple(sorted((u, v, mult) for (u, v), mult in counts.items() if mult))
        coloring = tuple(int(c) for c in bipartition) if bipartition is not None else None
        return cls(vertex_count, merged, coloring)

    @classmethod
    def from_biadjacency(cls, matrix):
        """
        Bipartite multigraph of a nonnegative integer matrix

        Rows become vertices 0..p-1 (color 0), columns p..p+q-1 (color 1).
        """
        array = np.asarray(matrix)
        if array.ndim != 2:
            raise DomainError("biadjacency must be a 2-dimensional matrix")
        if array.size and (array.min() < 0 or np.any(np.mod(array, 1) != 0)):
            raise DomainError("biadjacency entries must be nonnegative integers")
        rows, cols = array.shape
        edges = [(int(i), rows + int(j), int(array[i, j])) for i, j in zip(*np.nonzero(array))]
        return cls.from_edges(rows + cols, edges, (0,) * rows + (1,) * cols)

    # ------------------------------------------------------------------
    # Derived views
    # ------------------------------------------------------------------

    @cached_property
    def adjacency(self):
        """Sorted (neighbor, multiplicity) tuples per vertex."""
        lists = [[] for _ in range(self.vertex_count)]
        for u, v, mult in self.edges:
            lists[u].append((v, mult))
            lists[v].append((u, mult))
        return tuple(tuple(sorted(items)) for items in lists)

    @cached_property
    def degrees(self):
        return tuple(sum(mult for _, mult in items) for items in self.adjacency)

    @cached_property
    def total_multiplicity(self):
        return sum(mult for _, _, mult in self.edges)

    @property
    def is_simple(self):
        return all(mult == 1 for _, _, mult in self.edges)

    def multiplicity(self, u, v):
        return self._edge_map.get((min(u, v), max(u, v)), 0)

    @cached_property
    def _edge_map(self):
        return {(u, v): mult for u, v, mult in self.edges}

    @cached_property
    def coloring(self):
        """The stored bipartition, else a BFS 2-coloring, else None for odd cycles."""
        if self.bipartition is not None:
            return self.bipartition
        graph = self.to_networkx()
        if not nx.is_bipartite(graph):
            return None
        colors = nx.bipartite.color(graph)
        return tuple(colors[v] for v in range(self.vertex_count))

    @property
    def is_bipartite(self):
        return self.coloring is not None

    def is_regular(self, r):
        return all(d == r for d in self.degrees)

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from((u, v, {"multiplicity": mult}) for u, v, mult in self.edges)
        return graph

    def biadjacency(self):
        """
        Biadjacency matrix over the 2-coloring

        Returns:
            (matrix, left vertices, right vertices)
        """
        coloring = self.coloring
        if coloring is None:
            raise DomainError("graph is not bipartite")
        left = [v for v in range(self.vertex_count) if coloring[v] == 0]
        right = [v for v in range(self.vertex_count) if coloring[v] == 1]
        row = {v: i for i, v in enumerate(left)}
        col = {v: j for j, v in enumerate(right)}
        matrix = np.zeros((len(left), len(right)), dtype=np.int64)
        for u, v, mult in self.edges:
            if coloring[u] == 1:
                u, v = v, u
            matrix[row[u], col[v]] = mult
        return matrix, left, right

    def induced_subgraph(self, vertices):
        """Subgraph on `vertices`, renumbered 0.. in the order given."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[v], mult)
            for u, v, mult in self.edges
            if u in index and v in index
        ]
        coloring = None
        if self.bipartition is not None:
            coloring = [self.bipartition[v] for v in vertices]
        return Multigraph.from_edges(len(index), edges, coloring)

    def relabel(self, permutation):
        """Vertex v becomes permutation[v]."""
        edges = [(permutation[u], permutation[v], mult) for u, v, mult in self.edges]
        coloring = None
        if self.bipartition is not None:
            coloring = [0] * self.vertex_count
            for v, color in enumerate(self.bipartition):
                coloring[permutation[v]] = color
        return Multigraph.from_edges(self.vertex_count, edges, coloring)


EMPTY_GRAPH = Multigraph(0)


def disjoint_union(g1, g2):
    """
    Disjoint union, g2 renumbered after g1

    The bipartition survives only when both operands carry one.
    """
    offset = g1.vertex_count
    edges = g1.edges + tuple((u + offset, v + offset, mult) for u, v, mult in g2.edges)
    coloring = None
    if g1.bipartition is not None and g2.bipartition is not None:
        coloring = g1.bipartition + g2.bipartition
    return Multigraph(g1.vertex_count + g2.vertex_count, edges, coloring)


def union_all(graphs):
    return reduce(disjoint_union, graphs, EMPTY_GRAPH)


def component_vertex_sets(g):
    """Vertex lists of the connected pieces, each sorted."""
    return [sorted(piece) for piece in nx.connected_components(g.to_networkx())]


def connected_components(g):
    """Connected pieces as standalone graphs, ordered by canonical code."""
    pieces = [g.induced_subgraph(vertices) for vertices in component_vertex_sets(g)]
    return sorted(pieces, key=canonical_code)


def degree_sequence(g):
    return sorted(g.degrees)


def count_4cycles(g):
    """
    Number of 4-cycle subgraphs of a simple graph

    Every 4-cycle has two diagonal pairs, each contributing one pair of
    common neighbors, hence the division by 4 below.
    """
    if not g.is_simple:
        raise DomainError("4-cycle census is defined for simple graphs only")
    n = g.vertex_count
    if n < 4:
        return 0
    adjacency = np.zeros((n, n))
    for u, v, _ in g.edges:
        adjacency[u, v] = adjacency[v, u] = 1.0
    codegree = (adjacency @ adjacency)[np.triu_indices(n, k=1)]
    return int(round(float((codegree * (codegree - 1)).sum()) / 4))


def count_4cycles_biadjacency(matrix):
    """4-cycles of the simple bipartite graph with 0/1 biadjacency `matrix`."""
    rows = np.asarray(matrix, dtype=float)
    if rows.shape[0] < 2:
        return 0
    codegree = (rows @ rows.T)[np.triu_indices(rows.shape[0], k=1)]
    return int(round(float((codegree * (codegree - 1)).sum()) / 2))


# ----------------------------------------------------------------------
# Canonical codes
# ----------------------------------------------------------------------

def canonical_code(g):
    """
    Isomorphism-invariant code: sorted component codes joined by '+'

    A component code is 'n:a-b,c-d*m,...', the edge list under the
    labeling that minimizes it over an individualization-refinement search.
    """
    parts = sorted(_connected_code(g.induced_subgraph(vs)) for vs in component_vertex_sets(g))
    return b"+".join(parts)


@lru_cache(maxsize=config.MEMO_CACHE_SIZE)
def _connected_code(g):
    best = _search(g, _refine(g.adjacency, [0] * g.vertex_count), None)
    edges = ",".join(f"{a}-{b}" if mult == 1 else f"{a}-{b}*{mult}" for a, b, mult in best)
    return f"{g.vertex_count}:{edges}".encode("ascii")


def _refine(adjacency, colors):
    # Equitable refinement of an ordered partition; labels are ranks so the
    # result depends only on the graph structure and the input order.
    cells = len(set(colors))
    while True:
        signatures = [
            (colors[v], tuple(sorted((colors[u], mult) for u, mult in adjacency[v])))
            for v in range(len(colors))
        ]
        ranks = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        colors = [ranks[sig] for sig in signatures]
        if len(ranks) == cells:
            return colors
        cells = len(ranks)


def _search(g, colors, best):
    sizes = Counter(colors)
    target = min((color for color, size in sizes.items() if size > 1), default=None)
    if target is None:
        leaf = tuple(sorted(
            (min(colors[u], colors[v]), max(colors[u], colors[v]), mult)
            for u, v, mult in g.edges
        ))
        return leaf if best is None or leaf < best else best

    # vertices with identical neighborhoods are swapped by an automorphism
    # fixing everything individualized so far: one branch covers them all
    tried = set()
    for v in range(g.vertex_count):
        if colors[v] != target or g.adjacency[v] in tried:
            continue
        tried.add(g.adjacency[v])
        split = [(colors[w], 0 if w == v else 1) for w in range(g.vertex_count)]
        ranks = {key: rank for rank, key in enumerate(sorted(set(split)))}
        best = _search(g, _refine(g.adjacency, [ranks[key] for key in split]), best)
    return best


def graph_from_code(code):
    """Rebuild the canonically labeled representative of a code."""
    text = code.decode("ascii")
    if not text:
        return EMPTY_GRAPH
    pieces = []
    for part in text.split("+"):
        count, _, body = part.partition(":")
        edges = []
        for item in filter(None, body.split(",")):
            pair, _, mult = item.partition("*")
            u, v = pair.split("-")
            edges.append((int(u), int(v), int(mult or 1)))
        pieces.append(Multigraph.from_edges(int(count), edges))
    return union_all(pieces)


# ----------------------------------------------------------------------
# Graph text format
# ----------------------------------------------------------------------

def parse_graph_text(text):
    """
    Parse 'n <count>' followed by 'e <u> <v> [mult]' lines

    Args:
        text: File contents; '#' starts a comment

    Returns:
        Multigraph
    """
    vertex_count = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        try:
            if tokens[0] == "n" and len(tokens) == 2 and vertex_count is None:
                vertex_count = int(tokens[1])
            elif tokens[0] == "e" and len(tokens) in (3, 4) and vertex_count is not None:
                u, v = int(tokens[1]), int(tokens[2])
                mult = int(tokens[3]) if len(tokens) == 4 else 1
                if not (0 <= u < vertex_count and 0 <= v < vertex_count) or u == v or mult < 1:
                    raise GraphFormatError(f"invalid edge {u} {v} {mult}", lineno)
                edges.append((u, v, mult))
            else:
                raise GraphFormatError(f"unexpected record '{raw.strip()}'", lineno)
        except ValueError as e:
            if isinstance(e, GraphFormatError):
                raise
            raise GraphFormatError(f"non-integer field in '{raw.strip()}'", lineno) from e
    if vertex_count is None:
        raise GraphFormatError("missing 'n <vertex_count>' header", 1)
    return Multigraph.from_edges(vertex_count, edges)


def format_graph_text(g):
    lines = [f"n {g.vertex_count}"]
    for u, v, mult in g.edges:
        lines.append(f"e {u} {v}" if mult == 1 else f"e {u} {v} {mult}")
    return "\n".join(lines) + "\n"


def read_graph_file(path):
    logger.debug(f"Reading graph file {path}")
    return parse_graph_text(Path(path).read_text(encoding="utf-8"))
