import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs, to_nx
from wdcolor.bounds import bound_tree_extension
from wdcolor.centered import TrivialColorer, VertexCoverColorer, ball
from wdcolor.coloring import Coloring, ColoringError, certify, measured_bound
from wdcolor.generators import gen_partial_ktree, gen_path, gen_tree
from wdcolor.graph import build_graph, path_graph
from wdcolor.tree_extension import (
    WidthExceeded,
    boundary_partition,
    color_bounded_treewidth,
    color_construction,
)
from wdcolor.witness import Construction, RootedTreeDecomposition, heuristic_td, make_tw_construction


def partition_oracle(g, cut, ell):
    """Cut vertices joined when their piece distance is <= 7 ell, then closed transitively."""
    h = to_nx(g)
    d = dict(nx.all_pairs_shortest_path_length(h, cutoff=7 * ell))
    link = nx.Graph()
    link.add_nodes_from(cut)
    link.add_edges_from((a, b) for a in cut for b in cut if a < b and b in d[a])
    return sorted(sorted(c) for c in nx.connected_components(link))


def test_boundary_partition_examples():
    assert boundary_partition(path_graph(4), [0, 3], 1) == [[0, 3]]
    assert boundary_partition(build_graph(4, [(0, 1), (2, 3)]), [0, 3], 1) == [[0], [3]]
    long = path_graph(9)
    assert boundary_partition(long, [0, 8], 1, theta=2) == [[0], [8]]
    assert boundary_partition(path_graph(8), [0, 7], 1, theta=2) == [[0, 7]]
    with pytest.raises(ValueError):
        boundary_partition(path_graph(4), [0, 1, 2], 1, theta=2)


@given(graphs(max_n=30), st.integers(1, 2), st.data())
def test_boundary_partition_matches_oracle(g, ell, data):
    if g.n == 0:
        return
    cut = sorted(set(data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=5))))
    assert boundary_partition(g, cut, ell) == partition_oracle(g, cut, ell)


def test_single_bag_construction():
    g = build_graph(3, [(0, 1), (1, 2)])
    con = Construction(RootedTreeDecomposition([-1], 0, [[0, 1, 2]]), 0, 3,
                       TrivialColorer(3), VertexCoverColorer(3))
    c, bound = color_construction(g, con, 1)
    assert certify(g, c, bound).passed


def test_p10_width_one():
    gen = gen_path(10)
    con = make_tw_construction(gen.graph, gen.rtd, 1)
    c, bound = color_construction(gen.graph, con, 1, 2, debug=True)
    n_base = VertexCoverColorer(2).bound(1)
    assert bound == bound_tree_extension(2, 2, 1, n_base, n_base)
    assert certify(gen.graph, c, bound).passed


def test_adversarial_precoloring_partial_2tree():
    gen = gen_partial_ktree(2, 200, seed=11)
    con = make_tw_construction(gen.graph, gen.rtd, 2)
    near = ball(gen.graph, con.rtd.bags[con.rtd.root], 6)
    pre = {v: 1 + (v * 7919 % 3 == 0) for v in near}
    c, bound = color_construction(gen.graph, con, 2, 2, precoloring=pre, debug=True)
    assert all(c.color[v] == x for v, x in pre.items())
    assert certify(gen.graph, c, bound).passed


def test_precoloring_outside_ball_rejected():
    gen = gen_path(30)
    con = make_tw_construction(gen.graph, gen.rtd, 1)
    far = max(range(30), key=lambda v: abs(v - con.rtd.bags[con.rtd.root][0]))
    with pytest.raises(ColoringError):
        color_construction(gen.graph, con, 1, 2, precoloring={far: 1})


def test_needs_two_colors():
    gen = gen_path(5)
    with pytest.raises(ColoringError):
        color_construction(gen.graph, make_tw_construction(gen.graph, gen.rtd, 1), 1, m=1)


@pytest.mark.parametrize("seed", range(5))
def test_trees(seed):
    gen = gen_tree(300, seed)
    c, bound = color_bounded_treewidth(gen.graph, 1, 1, gen.rtd, debug=True)
    assert c.m == 2 and certify(gen.graph, c, bound).passed


def test_single_vertex_and_empty():
    c, bound = color_bounded_treewidth(build_graph(1, []), 3, 1)
    # the root ball is saturated with the last color
    assert c.color == [2] and certify(build_graph(1, []), c, bound).passed
    c, bound = color_bounded_treewidth(build_graph(0, []), 1, 1)
    assert c.color == []


def test_width_gate():
    gen = gen_partial_ktree(3, 40, seed=0)
    with pytest.raises(WidthExceeded):
        color_bounded_treewidth(gen.graph, 1, 1, gen.rtd)


def test_p200_two_colors_beat_one():
    g = path_graph(200)
    c, bound = color_bounded_treewidth(g, 4, 1)
    assert certify(g, c, bound).passed
    ours = measured_bound(g, c)
    constant = measured_bound(g, Coloring(4, 2, [1] * 200))
    assert constant == 50 and ours < constant


@given(st.integers(1, 3), st.integers(1, 120), st.integers(0, 10**6), st.sampled_from([1, 2, 4]))
def test_random_partial_ktrees_certify(k, n, seed, ell):
    gen = gen_partial_ktree(k, n, seed)
    c, bound = color_bounded_treewidth(gen.graph, ell, k, gen.rtd, debug=True)
    assert certify(gen.graph, c, bound).passed


@given(graphs(max_n=12))
def test_heuristic_decomposition_path(g):
    rtd = heuristic_td(g)
    w = max(rtd.metrics().width, 0)
    c, bound = color_bounded_treewidth(g, 2, w, debug=True)
    assert certify(g, c, bound).passed


def test_deterministic():
    gen = gen_partial_ktree(2, 500, seed=4)
    a = color_bounded_treewidth(gen.graph, 2, 2, gen.rtd)[0].color
    b = color_bounded_treewidth(gen.graph, 2, 2, gen.rtd)[0].color
    assert a == b


def test_windowed_deep_decomposition():
    # a narrow window makes a long decomposition path, exercising the work stack
    gen = gen_partial_ktree(2, 3000, seed=1, window=2)
    c, bound = color_bounded_treewidth(gen.graph, 1, 2, gen.rtd, debug=False)
    assert certify(gen.graph, c, bound).passed


def test_trace_records_levels():
    gen = gen_partial_ktree(2, 60, seed=3)
    con = make_tw_construction(gen.graph, gen.rtd, 2)
    trace = []
    color_construction(gen.graph, con, 1, trace=trace)
    assert trace
