import pytest

from modules import config
from modules.enumeration import enumerate_regular_bipartite
from modules.errors import DomainError
from modules.families import complete_bipartite, hypercube3, realize
from modules.graph_core import count_4cycles
from modules.matchpoly import matching_polynomial
from modules.smallm import A4Max, SmallMInput, a4_max, p1, phi_closed, poisson_a4_check


def test_p1_values():
    assert p1(4, 3) == 3
    assert p1(3, 3) == -9
    assert p1(4, 2) == 2


def test_complete_bipartite_closed_forms():
    params = SmallMInput(3, 3, a4=9)
    assert [phi_closed(params, m) for m in (1, 2, 3, 4)] == [9, 18, 6, 0]


def test_cube_closed_forms():
    params = SmallMInput(4, 3, a4=count_4cycles(hypercube3()))
    assert [phi_closed(params, m) for m in (1, 2, 3, 4)] == [12, 42, 44, 9]


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("two_n", [6, 8, 10, 12])
def test_closed_forms_match_engine(two_n, r):
    n = two_n // 2
    if n < r:
        pytest.skip("no graphs")
    for g in enumerate_regular_bipartite(two_n, r):
        poly = matching_polynomial(g)
        params = SmallMInput(n, r, a4=count_4cycles(g))
        for m in range(1, min(4, n) + 1):
            assert phi_closed(params, m) == poly.coefficient(m)


@pytest.mark.parametrize("n, r, expected", [
    (3, 3, A4Max(9, True)),
    (4, 2, A4Max(2, True)),
    (3, 2, A4Max(1, False)),
    (6, 3, A4Max(18, True)),
])
def test_a4_max(n, r, expected):
    assert a4_max(n, r) == expected


def test_union_of_complete_bipartite_graphs_attains_a4_max():
    assert count_4cycles(realize("K3,3*2")) == a4_max(6, 3).value
    assert count_4cycles(complete_bipartite(4)) == a4_max(4, 4).value


def test_input_validation():
    with pytest.raises(DomainError):
        SmallMInput(2, 3)
    with pytest.raises(DomainError):
        SmallMInput(3, 3, a4=10)
    with pytest.raises(DomainError):
        SmallMInput(3, 1)
    with pytest.raises(DomainError):
        phi_closed(SmallMInput(4, 3), 4)
    with pytest.raises(DomainError):
        phi_closed(SmallMInput(4, 3, a4=6), 5)


def test_poisson_check_small_run_is_reproducible():
    first = poisson_a4_check(n=30, r=3, samples=50, seed=3)
    second = poisson_a4_check(n=30, r=3, samples=50, seed=3)
    assert first == second
    assert first.accepted == 50
    assert first.expected == 4.0


@pytest.mark.slow
def test_poisson_mean_of_four_cycles():
    result = poisson_a4_check(n=200, r=3, samples=10000, seed=config.DEFAULT_SEED)
    assert result.passed, result
