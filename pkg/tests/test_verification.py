import pytest

from modules.families import describe
from modules.verification import (
    MAX_RECORDED,
    VerificationResult,
    verify_identities,
    verify_lmc,
    verify_multigraph_maxima,
    verify_omega_extremal,
    verify_poisson,
    verify_small_m,
    verify_two_regular_extremal,
    verify_umc,
)


def test_result_records_and_caps_counterexamples():
    result = VerificationResult("demo", {})
    for i in range(MAX_RECORDED + 5):
        result.check(i % 2 == 0, "parity", f"{i} is odd")
    assert result.checked == MAX_RECORDED + 5
    assert result.failure_count == (MAX_RECORDED + 5) // 2
    assert not result.passed
    payload = result.to_dict()
    assert payload["failure_count"] == result.failure_count
    assert payload["failures"][0] == {"check": "parity", "detail": "1 is odd", "m": None}


def test_lmc_holds_for_cubic_graphs():
    result = verify_lmc(12, 3, threads=1)
    assert result.passed, [f.detail for f in result.failures]
    assert result.notes["graph_count"] == 1 + 1 + 2 + 6


def test_conjectured_bound_holds_for_small_cubic_multigraphs():
    result = verify_lmc(6, 3, multi=True, threads=1)
    assert result.passed, [f.detail for f in result.failures]


def test_lmc_fails_for_the_hexagon():
    result = verify_lmc(8, 2, threads=1)
    assert not result.passed
    first = result.failures[0]
    assert first.check == "lmc" and first.m == 3
    assert describe(first.graph) == "C6"
    assert first.to_dict()["graph"].startswith("n 6\n")


def test_umc_on_ten_vertices_has_no_coefficientwise_maximum():
    result = verify_umc(10, 3, threads=1)
    assert result.passed
    assert result.notes["coefficientwise_max"] == []
    assert result.notes["argmax"]["4"] == ["G1"]
    assert result.notes["argmax"]["5"] == ["M10"]
    assert result.notes["family"] == ["G1", "M10"]


@pytest.mark.parametrize("two_n", [6, 8, 12])
def test_umc_unique_maximizers(two_n):
    result = verify_umc(two_n, 3, threads=1)
    assert result.passed, [f.detail for f in result.failures]
    assert len(result.notes["coefficientwise_max"]) == 1


def test_umc_twelve_is_two_complete_bipartite_graphs():
    result = verify_umc(12, 3, threads=1)
    assert result.notes["coefficientwise_max"] == ["K3,3*2"]
    assert result.notes["scan"]["coefficientwise_max_unique"] is True


@pytest.mark.parametrize("r", [2, 3])
def test_multigraph_maxima(r):
    result = verify_multigraph_maxima(3, r, threads=1)
    assert result.passed, [f.detail for f in result.failures]


def test_two_regular_extremal():
    result = verify_two_regular_extremal(12, threads=1)
    assert result.passed, [f.detail for f in result.failures]


def test_omega_extremal_small():
    result = verify_omega_extremal(9, threads=1)
    assert result.passed, [f.detail for f in result.failures]
    assert "n=6 k=1" in result.notes["multi"]


@pytest.mark.slow
def test_omega_extremal_full_range():
    result = verify_omega_extremal(14, threads=1)
    assert result.passed, [f.detail for f in result.failures]


def test_identities_result():
    result = verify_identities(30)
    assert result.passed
    assert result.notes["chains"] > 0


@pytest.mark.parametrize("r", [2, 3])
def test_small_m(r):
    result = verify_small_m(12, r, threads=1)
    assert result.passed, [f.detail for f in result.failures]


def test_poisson_result_notes():
    result = verify_poisson(n=30, r=3, samples=20, seed=1)
    assert result.checked == 1
    assert result.notes["accepted"] == 20
    assert result.notes["expected"] == 4.0
