import pytest

from modules.enumeration import (
    doubly_lexical_matrices,
    enumerate_omega,
    enumerate_regular_bipartite,
    enumerate_two_regular,
    extremum_scan,
    integer_partitions,
)
from modules.errors import CapExceededError, DomainError
from modules.families import OmegaFlavor, TwoRegularFlavor, g1_graph, hypercube3, mobius_ladder, realize
from modules.graph_core import canonical_code


def _codes(graphs):
    return [canonical_code(g) for g in graphs]


def test_integer_partitions():
    assert set(integer_partitions(6, min_part=2, parts=2)) == {(4, 2), (3, 3)}
    assert set(integer_partitions(4, even=True)) == {(4,), (2, 2)}
    assert list(integer_partitions(0)) == [()]
    assert list(integer_partitions(3, parts=4)) == []
    assert len(list(integer_partitions(10))) == 42


@pytest.mark.parametrize("n, k, flavor, count", [
    (6, 1, OmegaFlavor.SIMPLE, 3),
    (6, 1, OmegaFlavor.MULTI, 5),
    (4, 2, OmegaFlavor.SIMPLE, 1),
    (8, 1, OmegaFlavor.SIMPLE_BIPARTITE, 3),
    (9, 3, OmegaFlavor.PATHS, 3),
])
def test_enumerate_omega_counts(n, k, flavor, count):
    graphs = enumerate_omega(n, k, flavor)
    assert len(graphs) == count
    assert len(set(_codes(graphs))) == count
    for g in graphs:
        assert g.vertex_count == n
        assert sorted(g.degrees).count(1) == 2 * k


def test_enumerate_omega_domain():
    with pytest.raises(DomainError):
        enumerate_omega(5, 3, OmegaFlavor.SIMPLE)


def test_enumerate_two_regular():
    assert len(enumerate_two_regular(9, TwoRegularFlavor.SIMPLE)) == 4
    assert len(enumerate_two_regular(8, TwoRegularFlavor.SIMPLE_BIPARTITE)) == 2
    assert len(enumerate_two_regular(6, TwoRegularFlavor.MULTI_BIPARTITE)) == 3


def test_doubly_lexical_rows_and_columns_are_ordered():
    for matrix in doubly_lexical_matrices(4, 2, 1):
        rows = [tuple(row) for row in matrix]
        cols = [tuple(col) for col in matrix.T]
        assert rows == sorted(rows, reverse=True)
        assert cols == sorted(cols, reverse=True)
        assert set(matrix.sum(axis=0)) == {2} and set(matrix.sum(axis=1)) == {2}


@pytest.mark.parametrize("two_n, count", [(6, 1), (8, 1), (10, 2), (12, 5)])
def test_connected_cubic_bipartite_counts(two_n, count):
    assert len(list(enumerate_regular_bipartite(two_n, 3, connected_only=True))) == count


def test_small_catalogs_are_the_named_graphs():
    assert _codes(enumerate_regular_bipartite(6, 3)) == [canonical_code(realize("K3,3"))]
    assert _codes(enumerate_regular_bipartite(8, 3)) == [canonical_code(hypercube3())]
    ten = set(_codes(enumerate_regular_bipartite(10, 3, connected_only=True)))
    assert ten == {canonical_code(mobius_ladder(10)), canonical_code(g1_graph())}


def test_all_cubic_bipartite_on_twelve_includes_the_union():
    codes = _codes(enumerate_regular_bipartite(12, 3))
    assert len(codes) == 6
    assert canonical_code(realize("K3,3*2")) in codes
    assert codes == sorted(codes)


def test_two_regular_bipartite_classes():
    assert set(_codes(enumerate_regular_bipartite(8, 2))) == {
        canonical_code(realize("C8")),
        canonical_code(realize("C4*2")),
    }


def test_multigraph_enumeration():
    assert set(_codes(enumerate_regular_bipartite(4, 2, multi=True))) == {
        canonical_code(realize("C4")),
        canonical_code(realize("H2*2")),
    }
    graphs = list(enumerate_regular_bipartite(4, 3, multi=True))
    assert all(g.is_regular(3) and g.is_bipartite for g in graphs)
    assert canonical_code(realize("H3*2")) in _codes(graphs)


def test_enumeration_limits():
    with pytest.raises(CapExceededError):
        list(enumerate_regular_bipartite(16, 3))
    with pytest.raises(DomainError):
        enumerate_regular_bipartite(7, 3)
    with pytest.raises(DomainError):
        enumerate_regular_bipartite(4, 3)


def test_scan_of_two_regular_bipartite_graphs():
    report = extremum_scan(enumerate_regular_bipartite(8, 2), threads=1)
    assert report.coefficientwise_min == (canonical_code(realize("C8")),)
    assert report.coefficientwise_max == (canonical_code(realize("C4*2")),)
    assert report.to_dict()["coefficientwise_max_unique"] is True


def test_scan_of_cubic_graphs_on_ten_vertices():
    report = extremum_scan(enumerate_regular_bipartite(10, 3, connected_only=True), threads=1)
    g1, m10 = canonical_code(g1_graph()), canonical_code(mobius_ladder(10))
    assert report.coefficientwise_max == ()
    assert report.entries[4].argmax == frozenset([g1]) and report.entries[4].maximum == 96
    assert report.entries[5].argmax == frozenset([m10]) and report.entries[5].maximum == 13
    assert report.label(g1) == "G1" and report.label(m10) == "M10"
    frame = report.to_frame()
    assert list(frame.columns) == ["m", "min", "max", "argmin", "argmax"]
    assert frame.loc[4, "argmax"] == "G1"


def test_scan_merge_is_order_independent():
    graphs = list(enumerate_regular_bipartite(12, 3))
    full = extremum_scan(graphs, threads=1)
    front = extremum_scan(graphs[:3], threads=1)
    back = extremum_scan(graphs[3:], threads=1)
    assert front.merge(back).to_dict() == full.to_dict()
    assert back.merge(front).to_dict() == full.to_dict()


def test_scan_with_worker_pool_matches_serial():
    graphs = list(enumerate_regular_bipartite(12, 3))
    assert extremum_scan(graphs, threads=2).to_dict() == extremum_scan(graphs, threads=1).to_dict()


def test_scan_needs_graphs():
    with pytest.raises(DomainError):
        extremum_scan([], threads=1)
