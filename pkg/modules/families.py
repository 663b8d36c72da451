"""
Graph Families Module
Named graphs, the family expression language and the extremal graph builders
for 2-regular graphs and for unions of paths and cycles
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from modules.errors import ConstructionError, DomainError, FamilySyntaxError
from modules.graph_core import Multigraph, canonical_code, connected_components, union_all


logger = logging.getLogger(__name__)

G1_POLYNOMIAL = (1, 15, 75, 145, 96, 12)
M10_POLYNOMIAL = (1, 15, 75, 145, 95, 13)


class ComponentKind(Enum):
    # value order is the order components are listed in a normalized spec
    PATH = "P"
    CYCLE = "C"
    COMPLETE_BIPARTITE = "K"
    MULTI_EDGE = "H"
    HYPERCUBE = "Q"
    MOBIUS = "M"
    G1 = "G"


KIND_ORDER = {kind: rank for rank, kind in enumerate(ComponentKind)}


class Side(Enum):
    MIN = "min"
    MAX = "max"


class TwoRegularFlavor(Enum):
    SIMPLE = "simple"
    SIMPLE_BIPARTITE = "simple_bipartite"
    MULTI_BIPARTITE = "multi_bipartite"


class OmegaFlavor(Enum):
    SIMPLE = "simple"
    SIMPLE_BIPARTITE = "simple_bipartite"
    MULTI = "multi"
    PATHS = "paths"


@dataclass(frozen=True)
class FamilyTerm:
    kind: ComponentKind
    size: int
    count: int = 1

    @property
    def atom(self):
        if self.kind is ComponentKind.COMPLETE_BIPARTITE:
            return f"K{self.size},{self.size}"
        return f"{self.kind.value}{self.size}"


@dataclass(frozen=True)
class FamilySpec:
    """Normalized multiset of components; `multigraph` admits C2."""
    terms: tuple
    multigraph: bool = False

    @classmethod
    def of(cls, terms, multigraph=False):
        counts = Counter()
        for term in terms:
            _check_term(term, multigraph)
            counts[(term.kind, term.size)] += term.count
        ordered = sorted(counts.items(), key=lambda item: (KIND_ORDER[item[0][0]], item[0][1]))
        return cls(tuple(FamilyTerm(kind, size, count) for (kind, size), count in ordered), multigraph)

    def __str__(self):
        return " + ".join(
            term.atom + (f"*{term.count}" if term.count > 1 else "") for term in self.terms
        )

    @property
    def vertex_count(self):
        return sum(_atom_order(term) * term.count for term in self.terms)


def _atom_order(term):
    if term.kind is ComponentKind.COMPLETE_BIPARTITE:
        return 2 * term.size
    if term.kind is ComponentKind.MULTI_EDGE:
        return 2
    if term.kind is ComponentKind.HYPERCUBE:
        return 8
    if term.kind is ComponentKind.G1:
        return 10
    return term.size


def _check_term(term, multigraph, position=0):
    kind, size = term.kind, term.size
    if term.count < 1:
        raise FamilySyntaxError("component count must be at least 1", position)
    if kind is ComponentKind.PATH and size < 2:
        raise DomainError(f"P{size}: paths need at least 2 vertices")
    if kind is ComponentKind.CYCLE and size < 3 and not (size == 2 and multigraph):
        raise DomainError(f"C{size}: cycles need at least 3 vertices (C2 only in multigraph mode)")
    if kind in (ComponentKind.COMPLETE_BIPARTITE, ComponentKind.MULTI_EDGE) and size < 1:
        raise DomainError(f"{kind.value}{size}: size must be at least 1")
    if kind is ComponentKind.HYPERCUBE and size != 3:
        raise DomainError(f"Q{size}: only Q3 is available")
    if kind is ComponentKind.MOBIUS and (size < 6 or size % 2):
        raise DomainError(f"M{size}: Mobius ladders need an even order of at least 6")
    if kind is ComponentKind.G1 and size != 1:
        raise DomainError(f"G{size}: only G1 is available")


# ----------------------------------------------------------------------
# Family expressions
# ----------------------------------------------------------------------

class _FamilyParser:
    """Recursive descent over the expression with whitespace removed."""

    def __init__(self, text):
        self.chars = [(ch, i) for i, ch in enumerate(text) if not ch.isspace()]
        self.index = 0
        self.length = len(text)

    def position(self):
        return self.chars[self.index][1] if self.index < len(self.chars) else self.length

    def peek(self):
        return self.chars[self.index][0] if self.index < len(self.chars) else None

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise FamilySyntaxError(f"expected '{ch}', found '{found}'", self.position())
        self.index += 1

    def integer(self):
        start = self.index
        while self.peek() is not None and self.peek().isdigit():
            self.index += 1
        if start == self.index:
            found = self.peek() or "end of input"
            raise FamilySyntaxError(f"expected a number, found '{found}'", self.position())
        return int("".join(ch for ch, _ in self.chars[start:self.index]))

    def term(self):
        position = self.position()
        letter = self.peek()
        try:
            kind = ComponentKind(letter)
        except ValueError:
            raise FamilySyntaxError(f"unknown component '{letter or 'end of input'}'", position) from None
        self.index += 1
        size = self.integer()
        if kind is ComponentKind.COMPLETE_BIPARTITE:
            self.expect(",")
            other = self.integer()
            if other != size:
                raise DomainError(f"K{size},{other}: only equal-sided K_r,r is supported")
        count = 1
        if self.peek() == "*":
            self.index += 1
            count = self.integer()
        return FamilyTerm(kind, size, count), position

    def parse(self, multigraph):
        terms = [self.term()]
        while self.peek() == "+":
            self.index += 1
            terms.append(self.term())
        if self.peek() is not None:
            raise FamilySyntaxError(f"unexpected '{self.peek()}'", self.position())
        for term, position in terms:
            _check_term(term, multigraph, position)
        return FamilySpec.of([term for term, _ in terms], multigraph)


def parse_family(text, multigraph=False):
    """
    Parse a family expression such as 'K3,3*2 + C4'

    Args:
        text: Expression; whitespace is ignored
        multigraph: Admit C2 (the double edge)

    Returns:
        FamilySpec
    """
    return _FamilyParser(text).parse(multigraph)


def family(*terms, multigraph=False):
    """Spec from (letter, size, count) triples, zero counts dropped."""
    return FamilySpec.of(
        [FamilyTerm(ComponentKind(letter), size, count) for letter, size, count in terms if count],
        multigraph,
    )


# ----------------------------------------------------------------------
# Atoms
# ----------------------------------------------------------------------

def path_graph(k):
    return Multigraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k):
    if k == 2:
        return multi_edge(2)
    return Multigraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_bipartite(r):
    return Multigraph.from_biadjacency(np.ones((r, r), dtype=np.int64))


def multi_edge(r):
    """H_r: two vertices joined by an edge of multiplicity r."""
    return Multigraph.from_biadjacency([[r]])


def hypercube3():
    return Multigraph.from_edges(8, [(v, v ^ bit) for v in range(8) for bit in (1, 2, 4) if v < v ^ bit])


def mobius_ladder(order):
    """
    Mobius ladder on `order` = 2k vertices

    Two k-vertex paths (i,1) and (i,2), rungs (i,1)-(i,2), closed by the
    crossed edges (1,1)-(k,2) and (1,2)-(k,1). Vertex (i,j) is 2(i-1)+(j-1).
    """
    k = order // 2
    vertex = lambda i, j: 2 * (i - 1) + (j - 1)
    edges = [(vertex(i, 1), vertex(i, 2)) for i in range(1, k + 1)]
    edges += [(vertex(i, j), vertex(i + 1, j)) for i in range(1, k) for j in (1, 2)]
    edges += [(vertex(1, 1), vertex(k, 2)), (vertex(1, 2), vertex(k, 1))]
    return Multigraph.from_edges(order, edges)


@lru_cache(maxsize=None)
def g1_graph():
    """
    The connected cubic bipartite graph on 10 vertices other than M10

    Taken from the enumeration and checked against its known polynomial.
    """
    from modules.enumeration import enumerate_regular_bipartite
    from modules.matchpoly import matching_polynomial

    mobius = canonical_code(mobius_ladder(10))
    candidates = list(enumerate_regular_bipartite(10, 3, multi=False, connected_only=True))
    others = [g for g in candidates if canonical_code(g) != mobius]
    if len(candidates) != 2 or len(others) != 1:
        raise ConstructionError(f"expected two connected cubic bipartite graphs on 10 vertices, got {len(candidates)}")
    graph = others[0]
    if matching_polynomial(graph).coefficients != G1_POLYNOMIAL:
        raise ConstructionError(f"G1 polynomial mismatch: {matching_polynomial(graph)}")
    return graph


def _atom_graph(term):
    builders = {
        ComponentKind.PATH: path_graph,
        ComponentKind.CYCLE: cycle_graph,
        ComponentKind.COMPLETE_BIPARTITE: complete_bipartite,
        ComponentKind.MULTI_EDGE: multi_edge,
        ComponentKind.HYPERCUBE: lambda _: hypercube3(),
        ComponentKind.MOBIUS: mobius_ladder,
        ComponentKind.G1: lambda _: g1_graph(),
    }
    return builders[term.kind](term.size)


def realize(spec):
    """Disjoint union of the spec's components, in normalized order."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    return union_all(_atom_graph(term) for term in spec.terms for _ in range(term.count))


# ----------------------------------------------------------------------
# Naming
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _named_codes():
    named = {canonical_code(hypercube3()): FamilyTerm(ComponentKind.HYPERCUBE, 3)}
    for order in range(6, 22, 2):
        named.setdefault(canonical_code(mobius_ladder(order)), FamilyTerm(ComponentKind.MOBIUS, order))
    return named


def _name_component(piece):
    n = piece.vertex_count
    if n == 2:
        mult = piece.edges[0][2]
        return FamilyTerm(ComponentKind.PATH, 2) if mult == 1 else FamilyTerm(ComponentKind.MULTI_EDGE, mult)
    if n < 2:
        return None
    if piece.is_simple and max(piece.degrees) <= 2:
        kind = ComponentKind.PATH if len(piece.edges) == n - 1 else ComponentKind.CYCLE
        return FamilyTerm(kind, n)
    r = n // 2
    if (n % 2 == 0 and piece.is_simple and piece.is_bipartite
            and len(piece.edges) == r * r and sum(piece.coloring) == r):
        return FamilyTerm(ComponentKind.COMPLETE_BIPARTITE, r)
    code = canonical_code(piece)
    if code in _named_codes():
        return _named_codes()[code]
    if n == 10 and piece.is_regular(3) and code == canonical_code(g1_graph()):
        return FamilyTerm(ComponentKind.G1, 1)
    return None


def describe(g):
    """Family expression for g when every component is a named atom, else None."""
    terms = [_name_component(piece) for piece in connected_components(g)]
    if not terms or any(term is None for term in terms):
        return None
    return str(FamilySpec.of(terms, multigraph=True))


# ----------------------------------------------------------------------
# Extremal builders
# ----------------------------------------------------------------------

def extremal_2regular(n, side, flavor):
    """
    Extremal 2-regular graphs on n vertices

    Args:
        n: Vertex count (even for the bipartite flavors)
        side: Side.MIN or Side.MAX
        flavor: TwoRegularFlavor

    Returns:
        List of Multigraph (a single graph in every case)
    """
    side, flavor = Side(side), TwoRegularFlavor(flavor)
    if n < 3 or (flavor is not TwoRegularFlavor.SIMPLE and n % 2):
        raise DomainError(f"no {flavor.value} 2-regular graphs are covered for n={n}")
    if flavor is TwoRegularFlavor.SIMPLE:
        if side is Side.MAX:
            # C4s plus one C_t, t in 4..7 chosen by n mod 4; below 7 only C_n fits
            tail = n % 4 + 4
            if n < 7:
                spec = family(("C", n, 1))
            elif tail == 4:
                spec = family(("C", 4, n // 4))
            else:
                spec = family(("C", 4, (n - tail) // 4), ("C", tail, 1))
        else:
            tail = n % 3 + 3
            if n < 6:
                spec = family(("C", n, 1))
            elif tail == 3:
                spec = family(("C", 3, n // 3))
            else:
                spec = family(("C", 3, (n - tail) // 3), ("C", tail, 1))
    elif side is Side.MIN:
        spec = family(("C", n, 1))
    elif flavor is TwoRegularFlavor.SIMPLE_BIPARTITE:
        if n % 4 == 0:
            spec = family(("C", 4, n // 4))
        else:
            spec = family(("C", 4, (n - 6) // 4), ("C", 6, 1))
    else:
        spec = family(("H", 2, n // 2))
    return [realize(spec)]


def extremal_omega_specs(n, k, side, bipartite):
    """Family specs of the extremal graphs among unions of k paths and cycles."""
    side = Side(side)
    if k < 1 or 2 * k > n:
        raise DomainError(f"need 2 <= 2k <= n, got n={n}, k={k}")
    l = n - 2 * k
    if l == 0:
        return [family(("P", 2, k))]
    if l == 1:
        return [family(("P", 2, k - 1), ("P", 3, 1))]
    if side is Side.MIN:
        d = l - k
        if d <= 0:
            return [family(("P", 3, l), ("P", 2, k - l))]
        if bipartite:
            if d in (1, 2) or d % 2:
                return [family(("P", 3, k - 1), ("P", d + 3, 1))]
            specs = [family(("P", 3, k), ("C", d, 1))]
            if d == 4:
                specs.append(family(("P", 3, k - 1), ("P", 7, 1)))
            return specs
        if d % 3 == 0:
            return [family(("P", 3, k), ("C", 3, d // 3))]
        if d % 3 == 1:
            return [family(("P", 3, k - 1), ("P", 4, 1), ("C", 3, (d - 1) // 3))]
        return [
            family(("P", 3, k - 1), ("P", 5, 1), ("C", 3, (d - 2) // 3)),
            family(("P", 3, k - 1), ("P", 2, 1), ("C", 3, (d + 1) // 3)),
        ]
    if l == 2:
        return [family(("P", 2, k - 1), ("P", 4, 1))]
    if l == 3:
        specs = [family(("P", 2, k - 1), ("P", 5, 1))]
        if not bipartite:
            specs.append(family(("P", 2, k), ("C", 3, 1)))
        return specs
    if l % 4 == 0:
        return [family(("P", 2, k), ("C", 4, l // 4))]
    if l % 4 == 2:
        return [family(("P", 2, k), ("C", 4, (l - 6) // 4), ("C", 6, 1))]
    if not bipartite:
        tail = 5 if l % 4 == 1 else 7
        return [family(("P", 2, k), ("C", 4, (l - tail) // 4), ("C", tail, 1))]
    if l % 4 == 1:
        return [
            family(("P", 2, k - 1), ("C", 4, (l - 1) // 4), ("P", 3, 1)),
            family(("P", 2, k - 1), ("C", 4, (l - 5) // 4), ("P", 7, 1)),
        ]
    return [family(("P", 2, k - 1), ("C", 4, (l - 3) // 4), ("P", 5, 1))]


def extremal_omega(n, k, side, bipartite):
    """
    Graphs with 2k vertices of degree 1 and n-2k of degree 2 whose matching
    polynomial is coefficientwise least (side=min) or greatest (side=max)

    Returns:
        List of Multigraph; two members where two graphs tie
    """
    return [realize(spec) for spec in extremal_omega_specs(n, k, side, bipartite)]


def extremal_pi_specs(n, k, side):
    """Extremal unions of exactly k paths on n vertices, k >= 2."""
    side = Side(side)
    if k < 2 or 2 * k > n:
        raise DomainError(f"need k >= 2 and 2k <= n, got n={n}, k={k}")
    if side is Side.MAX:
        return [family(("P", 2, k - 1), ("P", n - 2 * k + 2, 1))]
    if n <= 3 * k:
        return [family(("P", 2, 3 * k - n), ("P", 3, n - 2 * k))]
    return [family(("P", 3, k - 1), ("P", n - 3 * k + 3, 1))]


def extremal_pi(n, k, side):
    return [realize(spec) for spec in extremal_pi_specs(n, k, side)]


def cubic_umc_specs(two_n):
    """
    Cubic bipartite graphs holding the per-m maximum on two_n vertices

    For two_n = 4 mod 6 the two listed graphs split the maximum between them.
    """
    if two_n < 6 or two_n % 2:
        raise DomainError(f"cubic bipartite graphs need an even order of at least 6, got {two_n}")
    if two_n % 6 == 0:
        return [family(("K", 3, two_n // 6))]
    if two_n % 6 == 2:
        return [family(("K", 3, (two_n - 8) // 6), ("Q", 3, 1))]
    base = (two_n - 10) // 6
    return [family(("K", 3, base), ("G", 1, 1)), family(("K", 3, base), ("M", 10, 1))]


def conj_max_spec(n, r):
    """floor(n/r) K_r,r together with (n - r floor(n/r)) H_r."""
    if r < 1 or n < 1:
        raise DomainError(f"need n, r >= 1, got n={n}, r={r}")
    return family(("K", r, n // r), ("H", r, n % r))


def conj_max_graph(n, r):
    return realize(conj_max_spec(n, r))
