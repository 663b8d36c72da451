import math
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest

from modules.errors import CapExceededError, DomainError
from modules.expectations import (
    BalancedComposition,
    RandomModel,
    composition_weight,
    configuration_biadjacency,
    e1_bounds,
    exhaustive_average,
    exhaustive_e1,
    exhaustive_e2,
    expected_e1,
    expected_e2,
    expected_value,
    make_rng,
    monte_carlo_mean,
    sample_configuration_model,
    sample_permutation_model,
    stub_multiplicity,
)
from modules.families import realize


def test_small_exact_values():
    assert expected_e1(2, 2, 2) == 3
    assert expected_e2(2, 2, 2) == Fraction(8, 3)
    assert expected_e1(2, 3, 2) == 10
    assert expected_e2(2, 3, 2) == Fraction(48, 5)


@pytest.mark.parametrize("n, r", [(1, 1), (3, 2), (5, 4), (7, 3)])
def test_single_edges_expected(n, r):
    assert expected_e1(1, n, r) == n * r
    assert expected_e2(1, n, r) == n * r


@pytest.mark.parametrize("m, n", [(1, 4), (2, 4), (3, 5), (5, 5)])
def test_one_permutation_is_a_perfect_matching(m, n):
    assert expected_e1(m, n, 1) == math.comb(n, m)
    assert expected_e2(m, n, 1) == math.comb(n, m)


def test_expected_value_dispatch():
    assert expected_value("e1", 2, 2, 2) == 3
    assert expected_value(RandomModel.CONFIGURATION, 2, 2, 2) == Fraction(8, 3)


def test_domain_errors():
    with pytest.raises(DomainError):
        expected_e1(0, 2, 2)
    with pytest.raises(DomainError):
        expected_e2(3, 2, 2)
    with pytest.raises(DomainError):
        expected_e1(1, 0, 2)


@pytest.mark.parametrize("n, r", [(n, r) for n in (1, 2, 3) for r in (1, 2, 3)])
def test_e1_matches_exhaustive_average(n, r):
    for m in range(1, n + 1):
        assert exhaustive_e1(m, n, r) == expected_e1(m, n, r)


@pytest.mark.parametrize("n, r", [(n, r) for n in range(1, 9) for r in range(1, 9) if n * r <= 8])
def test_e2_matches_exhaustive_average(n, r):
    for m in range(1, n + 1):
        assert exhaustive_e2(m, n, r) == expected_e2(m, n, r)


def test_exhaustive_average_includes_empty_matching():
    assert exhaustive_average(RandomModel.PERMUTATION_SUM, 2, 2)[0] == 1


def test_exhaustive_cap():
    with pytest.raises(CapExceededError):
        exhaustive_average(RandomModel.CONFIGURATION, 4, 3)


@pytest.mark.parametrize("m, r, parts, k", [
    (7, 3, (2, 2, 3), 2),
    (6, 3, (2, 2, 2), 0),
    (1, 4, (0, 0, 0, 1), 3),
])
def test_balanced_composition(m, r, parts, k):
    balanced = BalancedComposition.of(m, r)
    assert balanced.parts == parts and balanced.k == k
    assert sum(balanced.parts) == m


def test_e1_bounds_small_case():
    assert e1_bounds(2, 2, 2) == (1, 3)


@pytest.mark.parametrize("m, n, r", [(1, 3, 4), (2, 5, 3), (3, 5, 1), (4, 6, 0)])
def test_e1_bounds_need_degree_between_two_and_m(m, n, r):
    with pytest.raises(DomainError):
        e1_bounds(m, n, r)


def test_e1_bounds_bracket_expectation():
    for r in range(2, 5):
        for n in range(r, 9):
            for m in range(r, n + 1):
                lower, upper = e1_bounds(m, n, r)
                assert lower <= expected_e1(m, n, r) <= upper


def test_balanced_composition_has_largest_weight():
    for r in range(2, 5):
        for n in range(1, 9):
            for m in range(1, n + 1):
                best = composition_weight(BalancedComposition.of(m, r).parts, n)
                for parts in product(range(m + 1), repeat=r):
                    if sum(parts) == m:
                        assert composition_weight(parts, n) <= best


def test_composition_weight_domain():
    with pytest.raises(DomainError):
        composition_weight((3,), 2)


def test_samplers_are_reproducible_and_regular():
    first = sample_permutation_model(6, 3, seed=7)
    assert first == sample_permutation_model(6, 3, seed=7)
    assert first.is_regular(3) and first.vertex_count == 12
    second = sample_configuration_model(6, 3, seed=7, stream=2)
    assert second == sample_configuration_model(6, 3, seed=7, stream=2)
    assert second.is_regular(3)


def test_samplers_accept_a_generator():
    rng = make_rng(11)
    g = sample_configuration_model(4, 2, rng)
    assert g.is_regular(2)


def test_single_vertex_sides_give_a_multi_edge():
    assert sample_permutation_model(1, 3, seed=1).multiplicity(0, 1) == 3
    assert sample_configuration_model(1, 3, seed=1).multiplicity(0, 1) == 3


def test_configuration_line_sums():
    matrix = configuration_biadjacency(5, 4, make_rng(3))
    assert matrix.sum(axis=0).tolist() == [4] * 5
    assert matrix.sum(axis=1).tolist() == [4] * 5


def test_stub_multiplicity_counts_stub_permutations():
    square = realize("C4")
    matrix, _, _ = square.biadjacency()
    left = np.arange(4) // 2
    hits = 0
    for mu in permutations(range(4)):
        outcome = np.bincount(left * 2 + np.array(mu) // 2, minlength=4).reshape(2, 2)
        hits += int(np.array_equal(outcome, matrix))
    assert stub_multiplicity(square) == hits == 16
    assert stub_multiplicity(realize("H2*2")) == 4


def test_stub_multiplicity_needs_regular_graph():
    with pytest.raises(DomainError):
        stub_multiplicity(realize("P3"))


@pytest.mark.slow
@pytest.mark.parametrize("model, expected", [("e1", expected_e1(2, 3, 2)), ("e2", expected_e2(2, 3, 2))])
def test_monte_carlo_mean_agrees(model, expected):
    estimate = monte_carlo_mean(model, 2, 3, 2, samples=100_000, seed=20240601)
    assert estimate.samples == 100_000
    assert estimate.within(expected, sigmas=3.0)


def test_monte_carlo_is_reproducible():
    first = monte_carlo_mean("e2", 2, 3, 2, samples=200, seed=5)
    assert first == monte_carlo_mean("e2", 2, 3, 2, samples=200, seed=5)
    assert first.stderr > 0
