import numpy as np
import pytest

from modules.errors import CapExceededError, DomainError
from modules.families import G1_POLYNOMIAL, M10_POLYNOMIAL, complete_bipartite, cycle_graph, hypercube3, realize
from modules.graph_core import EMPTY_GRAPH, Multigraph
from modules.matchpoly import (
    MatchingPolynomial,
    OrderRelation,
    SignedPolynomial,
    compare,
    cycle_poly,
    matching_polynomial,
    matching_polynomial_bruteforce,
    path_poly,
    perm_m,
)


def _random_multigraph(rng, max_slots=24):
    n = int(rng.integers(2, 10))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = []
    slots = int(rng.integers(0, max_slots + 1))
    for _ in range(slots):
        u, v = pairs[int(rng.integers(len(pairs)))]
        edges.append((u, v))
    return Multigraph.from_edges(n, edges)


@pytest.mark.parametrize("k, expected", [
    (0, (1,)),
    (1, (1,)),
    (2, (1, 1)),
    (4, (1, 3, 1)),
    (8, (1, 7, 15, 10, 1)),
])
def test_path_polynomials(k, expected):
    assert path_poly(k).coefficients == expected


@pytest.mark.parametrize("k, expected", [
    (2, (1, 2)),
    (4, (1, 4, 2)),
    (6, (1, 6, 9, 2)),
    (5, (1, 5, 5)),
])
def test_cycle_polynomials(k, expected):
    assert cycle_poly(k).coefficients == expected


def test_path_and_cycle_domains():
    with pytest.raises(DomainError):
        path_poly(-1)
    with pytest.raises(DomainError):
        cycle_poly(1)


@pytest.mark.parametrize("graph, expected", [
    (complete_bipartite(3), (1, 9, 18, 6)),
    (hypercube3(), (1, 12, 42, 44, 9)),
    (realize("G1"), G1_POLYNOMIAL),
    (realize("M10"), M10_POLYNOMIAL),
    (realize("H3"), (1, 3)),
    (realize("H3*2"), (1, 6, 9)),
    (realize("K3,3*2"), (1, 18, 117, 336, 432, 216, 36)),
])
def test_known_polynomials(graph, expected):
    assert matching_polynomial(graph).coefficients == expected


def test_empty_graph_polynomial_is_one():
    assert matching_polynomial(EMPTY_GRAPH).coefficients == (1,)
    assert matching_polynomial(Multigraph(3)).coefficients == (1,)


def test_uncached_expansion_matches_cached(rng):
    for _ in range(20):
        g = _random_multigraph(rng)
        assert matching_polynomial(g, use_cache=False) == matching_polynomial(g)


def test_engine_matches_bruteforce(rng):
    for _ in range(100):
        g = _random_multigraph(rng)
        assert matching_polynomial(g) == matching_polynomial_bruteforce(g)


@pytest.mark.slow
def test_engine_matches_bruteforce_thousand_graphs():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        g = _random_multigraph(rng)
        assert matching_polynomial(g) == matching_polynomial_bruteforce(g)


def test_bruteforce_cap():
    with pytest.raises(CapExceededError):
        matching_polynomial_bruteforce(realize("H5*5"), cap=24)


def test_perm_m_matches_permanent_sums(rng, permanent_oracle):
    for _ in range(10):
        matrix = rng.integers(0, 3, size=(4, 4))
        for m in range(1, 5):
            assert perm_m(matrix, m) == permanent_oracle(matrix, m)


def test_perm_m_rectangular(permanent_oracle):
    matrix = np.array([[1, 2, 0], [0, 1, 1]])
    assert perm_m(matrix, 1) == 5
    assert perm_m(matrix, 2) == permanent_oracle(matrix, 2)


def test_perm_m_domain():
    with pytest.raises(DomainError):
        perm_m(np.ones((3, 3)), 0)
    with pytest.raises(DomainError):
        perm_m(np.ones((3, 3)), 4)
    assert perm_m(np.ones((3, 3), dtype=int), 3) == 6


def test_compare_relations():
    assert compare(path_poly(4), cycle_poly(4)) is OrderRelation.STRICTLY_LESS
    assert compare(cycle_poly(4), path_poly(4)) is OrderRelation.STRICTLY_GREATER
    assert compare(path_poly(5), matching_polynomial(realize("C3 + P2"))) is OrderRelation.EQUAL


def test_incomparable_unions():
    left = matching_polynomial(realize("P8 + P6 + P3"))
    right = matching_polynomial(realize("P7 + P5 + P5"))
    assert left.coefficients == (1, 14, 80, 240, 404, 376, 176, 33, 2)
    assert right.coefficients == (1, 14, 80, 240, 405, 382, 186, 36)
    assert compare(left, right) is OrderRelation.INCOMPARABLE


def test_signed_arithmetic():
    x_plus_one = SignedPolynomial((1, 1))
    x_minus_one = SignedPolynomial((-1, 1))
    assert (x_plus_one * x_minus_one).coefficients == (-1, 0, 1)
    assert (x_plus_one - x_plus_one).coefficients == ()
    assert str(SignedPolynomial()) == "0"
    assert (-x_plus_one).coefficients == (-1, -1)
    assert (2 * x_plus_one).coefficients == (2, 2)
    assert x_plus_one.shift(2).coefficients == (0, 0, 1, 1)


def test_products_of_matching_polynomials_stay_nonnegative():
    product = path_poly(3) * cycle_poly(4)
    assert isinstance(product, MatchingPolynomial)
    assert product.coefficients == (1, 6, 10, 4)


def test_matching_polynomial_rejects_negative_coefficients():
    with pytest.raises(DomainError):
        MatchingPolynomial((1, -2))


def test_parse_and_equality_across_classes():
    assert SignedPolynomial.parse("1,4,2") == cycle_poly(4)
    assert MatchingPolynomial.parse("1, 3, 1") == path_poly(4)
    assert str(cycle_poly(6)) == "1,6,9,2"
    with pytest.raises(DomainError):
        SignedPolynomial.parse("1,a")
