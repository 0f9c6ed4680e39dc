import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braesslab.errors import ParameterError, PreconditionError
from braesslab.graph import (
    Graph,
    GnpSpec,
    add_edge,
    edges_within_subset,
    graph_from_json,
    graph_to_json,
    non_edges,
    pair_codes_all,
    remove_edge,
    sample_gnp,
)


def test_from_edges_basic():
    g = Graph.from_edges(4, [(2, 1), (0, 3)])
    assert g.num_edges == 2
    assert g.has_edge(1, 2) and g.has_edge(2, 1)
    assert g.has_edge(0, 3)
    assert not g.has_edge(0, 1)
    np.testing.assert_array_equal(g.degrees, [1, 1, 1, 1])


def test_from_edges_rejects_bad_pairs():
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_pair_codes_count():
    n = 7
    assert pair_codes_all(n).size == n * (n - 1) // 2


def test_gnp_spec_validation():
    with pytest.raises(ParameterError):
        GnpSpec(1, 0.5, 0)
    with pytest.raises(ParameterError):
        GnpSpec(10, 0.0, 0)
    with pytest.raises(ParameterError):
        GnpSpec(10, 1.0, 0)


def test_sample_gnp_deterministic():
    a = sample_gnp(GnpSpec(60, 0.3, 42))
    b = sample_gnp(GnpSpec(60, 0.3, 42))
    c = sample_gnp(GnpSpec(60, 0.3, 43))
    assert a == b
    assert a != c


def test_sample_gnp_density():
    g = sample_gnp(GnpSpec(400, 0.5, 7))
    total = 400 * 399 // 2
    # 6 sigma around the mean
    assert abs(g.num_edges - 0.5 * total) < 6 * np.sqrt(total * 0.25)


def test_add_remove_edge_roundtrip():
    g = Graph.from_edges(5, [(0, 1), (2, 3)])
    g2 = add_edge(g, 4, 0)
    assert g2.has_edge(0, 4) and not g.has_edge(0, 4)
    g3 = remove_edge(g2, 0, 4)
    assert g3 == g
    with pytest.raises(PreconditionError):
        add_edge(g2, 0, 4)
    with pytest.raises(PreconditionError):
        remove_edge(g, 0, 4)


def test_non_edges_partition():
    g = sample_gnp(GnpSpec(30, 0.4, 1))
    ne = non_edges(g)
    assert ne.shape[0] + g.num_edges == 30 * 29 // 2
    for u, v in ne[:20]:
        assert not g.has_edge(int(u), int(v))


def test_edges_within_subset():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (0, 5)])
    assert edges_within_subset(g, [0, 1, 2]) == 2
    assert edges_within_subset(g, [3, 4]) == 1
    assert edges_within_subset(g, [2, 5]) == 0
    assert edges_within_subset(g, range(6)) == 4


def test_json_roundtrip():
    g = sample_gnp(GnpSpec(25, 0.3, 9))
    assert graph_from_json(graph_to_json(g)) == g


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 25), p=st.floats(0.05, 0.95), seed=st.integers(0, 2**31))
def test_sampled_graph_invariants(n, p, seed):
    g = sample_gnp(GnpSpec(n, p, seed))
    e = g.edges
    if e.size:
        assert np.all(e[:, 0] < e[:, 1])
        assert np.all((0 <= e) & (e < n))
    # codes strictly increasing: no duplicate edges
    assert np.all(np.diff(g.codes) > 0) if g.codes.size > 1 else True
    assert int(g.degrees.sum()) == 2 * g.num_edges
