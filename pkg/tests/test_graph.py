import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorlab import generators as gen
from gorlab.graph import (
    Graph,
    GraphFormatError,
    is_k_connected,
    parse_graph,
    path_within_prefix,
    preceding_non_neighbors,
    serialize_graph,
    to_graph6,
    vertex_connectivity,
)

from oracles import bfs_prefix_path_length, brute_connectivity, components_after_removal


@st.composite
def graphs(draw, n_min=1, n_max=8):
    n = draw(st.integers(n_min, n_max))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def test_parse_edge_list_path():
    g = parse_graph("3\n0 1\n1 2", "edge-list")
    assert g.n == 3
    assert g.edges == {(0, 1), (1, 2)}


def test_parse_graph6_k4():
    g = parse_graph("C~", "graph6")
    assert g == gen.complete(4)
    # independent encoder
    assert nx.to_graph6_bytes(nx.complete_graph(4), header=False).decode().strip() == "C~"


@pytest.mark.parametrize(
    "text, fmt, match",
    [
        ("3\n0 0", "edge-list", "self-loop"),
        ("0\n", "edge-list", "at least 1"),
        ("3\n0 3", "edge-list", "out of range"),
        ("3\n0 1 2", "edge-list", "malformed"),
        ("3\n0 x", "edge-list", "malformed"),
        ("3\n0 1\n1 0", "edge-list", "duplicate"),
        ("", "edge-list", "empty"),
        ("C", "graph6", "expected"),
        ("C\x7f", "graph6", "63..126"),
        ("?", "graph6", "at least 1"),
    ],
)
def test_parse_rejects(text, fmt, match):
    with pytest.raises(GraphFormatError, match=match):
        parse_graph(text, fmt)


def test_graph_rejects_bad_construction():
    with pytest.raises(GraphFormatError):
        Graph(0)
    with pytest.raises(GraphFormatError):
        Graph(2, frozenset({(0, 0)}))


@given(graphs(n_max=12))
def test_graph6_matches_networkx_encoder(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    assert to_graph6(g) == nx.to_graph6_bytes(h, header=False).decode().strip()


def test_graph6_large_header_round_trip():
    g = gen.cycle(70)
    text = to_graph6(g)
    assert text[0] == "~"
    assert parse_graph(text, "graph6") == g


@given(graphs(), st.sampled_from(["edge-list", "graph6"]))
def test_round_trip(g, fmt):
    text = serialize_graph(g, fmt)
    assert parse_graph(text, fmt) == g
    assert serialize_graph(parse_graph(text, fmt), fmt) == text


def test_adjacency_symmetric():
    g = gen.petersen()
    for u in range(g.n):
        for v in range(g.n):
            assert g.adjacent(u, v) == g.adjacent(v, u)


def test_connectivity_complete():
    cert = vertex_connectivity(gen.complete(4))
    assert cert.kappa == 3 and cert.complete
    assert cert.witness_label() == "complete graph"


def test_connectivity_path_cut_vertex():
    cert = vertex_connectivity(parse_graph("3\n0 1\n1 2"))
    assert cert.kappa == 1
    assert cert.cut == {1}


def test_connectivity_petersen():
    g = gen.petersen()
    cert = vertex_connectivity(g)
    assert cert.kappa == brute_connectivity(g.n, g.edges) == 3
    assert components_after_removal(g.n, g.edges, cert.cut) >= 2


def test_connectivity_disconnected():
    cert = vertex_connectivity(parse_graph("4\n0 1\n2 3"))
    assert cert.kappa == 0 and cert.cut == frozenset()


def test_connectivity_single_vertex():
    cert = vertex_connectivity(Graph(1))
    assert cert.kappa == 0 and cert.complete


@given(graphs())
@settings(max_examples=200)
def test_connectivity_matches_brute_force(g):
    cert = vertex_connectivity(g)
    assert cert.kappa == brute_connectivity(g.n, g.edges)
    if cert.cut is not None:
        assert len(cert.cut) == cert.kappa
        assert components_after_removal(g.n, g.edges, cert.cut) >= 2
    else:
        assert g.is_complete()


def test_is_k_connected_examples():
    assert is_k_connected(gen.complete(4), 3) == (True, None)
    assert is_k_connected(parse_graph("4\n0 1\n2 3"), 1) == (False, frozenset())
    ok, cut = is_k_connected(gen.petersen(), 4)
    assert not ok and len(cut) == 3
    assert components_after_removal(10, gen.petersen().edges, cut) >= 2


def test_is_k_connected_complete_beyond_range():
    assert is_k_connected(gen.complete(3), 3) == (False, None)
    with pytest.raises(ValueError):
        is_k_connected(gen.complete(3), -1)


@given(graphs(n_min=2))
def test_is_k_connected_consistent(g):
    kappa = brute_connectivity(g.n, g.edges)
    for k in range(0, g.n + 1):
        ok, cut = is_k_connected(g, k)
        assert ok == (k <= kappa)
        if not ok and cut is not None:
            assert len(cut) < k
            assert components_after_removal(g.n, g.edges, cut) >= 2


def test_preceding_non_neighbors_examples():
    c5 = gen.cycle(5)
    assert preceding_non_neighbors(c5, range(5), 2) == [0]
    k5 = gen.complete(5)
    for p in range(5):
        assert preceding_non_neighbors(k5, (4, 2, 0, 1, 3), p) == []
    assert preceding_non_neighbors(gen.empty(4), range(4), 3) == [0, 1, 2]


def test_preceding_non_neighbors_position_order():
    g = gen.empty(4)
    assert preceding_non_neighbors(g, (3, 1, 2, 0), 3) == [3, 1, 2]


def test_path_within_prefix_edge():
    assert path_within_prefix(gen.cycle(5), range(5), 3) == [3, 4]


def test_path_within_prefix_through_prefix():
    g = gen.cycle(5)
    order = (0, 1, 2, 4, 3)
    path = path_within_prefix(g, order, 2)
    assert path == [2, 1, 0, 4]
    assert len(path) - 1 == bfs_prefix_path_length(g.n, g.adj, order, 2)


def test_path_within_prefix_star_center_last():
    g = gen.star(5)
    order = (1, 2, 3, 4, 0)
    assert path_within_prefix(g, order, 2) is None


@given(graphs(n_min=2), st.randoms(use_true_random=False))
def test_path_within_prefix_matches_bfs(g, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    for p in range(g.n - 1):
        path = path_within_prefix(g, order, p)
        expect = bfs_prefix_path_length(g.n, g.adj, order, p)
        if expect is None:
            assert path is None
            continue
        assert len(path) - 1 == expect
        assert path[0] == order[p] and path[-1] == order[p + 1]
        assert all(pos[v] < p for v in path[1:-1])
        assert all(g.adjacent(a, b) for a, b in zip(path, path[1:]))
