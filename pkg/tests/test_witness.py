import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs, to_nx
from wdcolor.formats import FormatError, parse_gr, parse_td, write_gr, write_td
from wdcolor.generators import gen_grid, gen_partial_ktree, gen_tree
from wdcolor.graph import build_graph, complete_graph, cycle_graph, path_graph
from wdcolor.witness import (
    BudgetExceeded,
    ConstructionError,
    DecompositionError,
    Layering,
    LayeringError,
    RootedTreeDecomposition,
    exact_treewidth,
    heuristic_td,
    is_valid_td,
    layered_width,
    make_tw_construction,
    validate_construction,
    validate_layering,
    validate_td,
)


def chain(bags):
    return RootedTreeDecomposition([-1] + list(range(len(bags) - 1)), 0, [sorted(b) for b in bags])


def naive_valid(g, rtd):
    """Direct reading of the three axioms on a small instance."""
    if set(itertools.chain.from_iterable(rtd.bags)) != set(range(g.n)):
        return False
    if any(not any(u in b and v in b for b in rtd.bags) for u, v in g.edges()):
        return False
    t = nx.Graph()
    t.add_nodes_from(range(rtd.num_nodes))
    t.add_edges_from(rtd.tree_edges())
    for v in range(g.n):
        nodes = [i for i, b in enumerate(rtd.bags) if v in b]
        if not nx.is_connected(t.subgraph(nodes)):
            return False
    return True


def test_validate_td_examples():
    p3 = path_graph(3)
    m = validate_td(p3, chain([[0, 1], [1, 2]]))
    assert (m.width, m.adhesion) == (1, 1)
    m = validate_td(build_graph(1, []), RootedTreeDecomposition([-1], 0, [[0]]))
    assert (m.width, m.adhesion) == (0, 0)
    with pytest.raises(DecompositionError) as e:
        validate_td(p3, chain([[0, 1], [2]]))
    assert e.value.axiom == "edge" and e.value.witness == (1, 2)


def test_validate_td_reports_axioms():
    p3 = path_graph(3)
    with pytest.raises(DecompositionError) as e:
        validate_td(p3, chain([[0, 1]]))
    assert e.value.axiom == "cover"
    with pytest.raises(DecompositionError) as e:
        validate_td(p3, chain([[0, 1], [1, 2], [0]]))
    assert e.value.axiom == "connected"


@given(graphs(max_n=7), st.data())
def test_validate_td_matches_naive(g, data):
    if g.n == 0:
        return
    k = data.draw(st.integers(1, 5))
    parent = [-1] + [data.draw(st.integers(0, i - 1)) for i in range(1, k)]
    bags = [sorted(set(data.draw(st.lists(st.integers(0, g.n - 1), max_size=4)))) for _ in range(k)]
    rtd = RootedTreeDecomposition(parent, 0, bags)
    assert is_valid_td(g, rtd) == naive_valid(g, rtd)


def test_layering_examples():
    p4 = path_graph(4)
    validate_layering(p4, Layering([0, 1, 2, 3]))
    validate_layering(p4, Layering([0, 0, 0, 0]))
    with pytest.raises(LayeringError) as e:
        validate_layering(build_graph(2, [(0, 1)]), Layering([0, 2]))
    assert e.value.edge == (0, 1)


def test_layered_width_examples():
    p4 = path_graph(4)
    assert layered_width(p4, chain([[0, 1], [1, 2], [2, 3]]), Layering([0, 1, 2, 3])) == 1
    assert layered_width(p4, chain([[0, 1, 2, 3]]), Layering([0] * 4)) == 4
    gg = gen_grid(3, 3)
    assert layered_width(gg.graph, gg.rtd, gg.layering) == 2


def test_heuristic_td_examples():
    t = gen_tree(8, seed=3).graph
    assert validate_td(t, heuristic_td(t)).width == 1
    assert validate_td(complete_graph(4), heuristic_td(complete_graph(4))).width == 3
    assert validate_td(cycle_graph(5), heuristic_td(cycle_graph(5))).width == 2
    assert len(heuristic_td(build_graph(0, [])).bags) == 1


def test_heuristic_budget():
    g = gen_partial_ktree(2, 40, seed=1).graph
    with pytest.raises(BudgetExceeded):
        heuristic_td(g, budget=3)


@given(graphs(max_n=8))
def test_heuristic_width_is_exact_below_twelve(g):
    rtd = heuristic_td(g)
    width = validate_td(g, rtd).width
    if g.n:
        ref, _ = nx.algorithms.approximation.treewidth_min_fill_in(to_nx(g))
        assert width <= ref
    assert width == exact_treewidth(g)


def test_exact_treewidth_against_brute_force():
    # tw = min over elimination orders of the max later-neighbourhood size
    g = gen_partial_ktree(3, 7, seed=5).graph
    best = None
    for order in itertools.permutations(range(g.n)):
        h = to_nx(g)
        worst = 0
        for v in order:
            nb = list(h.neighbors(v))
            worst = max(worst, len(nb))
            h.add_edges_from(itertools.combinations(nb, 2))
            h.remove_node(v)
        best = worst if best is None else min(best, worst)
    assert exact_treewidth(g) == best


def test_make_tw_construction_examples():
    p4 = path_graph(4)
    con = make_tw_construction(p4, chain([[0, 1], [1, 2], [2, 3]]), 1)
    assert con.theta == 2 and len(con.rtd.bags[con.rtd.root]) == 1
    validate_construction(p4, con)
    one = build_graph(1, [])
    con = make_tw_construction(one, RootedTreeDecomposition([-1], 0, [[0]]), 1)
    assert con.rtd.bags[con.rtd.root] == [0]
    gen = gen_partial_ktree(3, 50, seed=2)
    con = make_tw_construction(gen.graph, heuristic_td(gen.graph), 3)
    assert validate_construction(gen.graph, con).adhesion <= con.theta


def test_make_tw_construction_rejects():
    with pytest.raises(ConstructionError):
        make_tw_construction(complete_graph(4), chain([[0, 1, 2, 3]]), 2)
    with pytest.raises(ConstructionError):
        make_tw_construction(build_graph(0, []), RootedTreeDecomposition([-1], 0, [[]]), 1)


def test_construction_invariants():
    p4 = path_graph(4)
    con = make_tw_construction(p4, chain([[0, 1], [1, 2], [2, 3]]), 1)
    con.eta = 0
    with pytest.raises(ConstructionError):
        validate_construction(p4, con)


@given(st.integers(1, 3), st.integers(2, 60), st.integers(0, 10**6))
def test_make_tw_construction_always_valid(k, n, seed):
    gen = gen_partial_ktree(k, n, seed)
    con = make_tw_construction(gen.graph, gen.rtd, k)
    m = validate_construction(gen.graph, con)
    assert m.adhesion <= k + 1 == con.theta


# ---------------------------------------------------------------- formats


def test_parse_gr_examples():
    g = parse_gr("c a comment\np tw 2 1\n1 2\n")
    assert g == build_graph(2, [(0, 1)])


@pytest.mark.parametrize("text, line", [
    ("p tw 2 1\n1 3\n", 2),
    ("1 2\n", 1),
    ("p tw 2 1\n1 x\n", 2),
    ("p tw 2 1\np tw 2 1\n", 2),
])
def test_parse_gr_errors(text, line):
    with pytest.raises(FormatError) as e:
        parse_gr(text)
    assert e.value.line == line


def test_parse_gr_count_mismatch():
    with pytest.raises(FormatError):
        parse_gr("p tw 3 2\n1 2\n")


def test_parse_td_errors():
    with pytest.raises(FormatError):
        parse_td("s td 1 2 2\nb 1 1 3\n")
    with pytest.raises(FormatError):
        parse_td("s td 2 2 2\nb 1 1\nb 2 2\n")
    with pytest.raises(FormatError):
        parse_td("s td 1 1 3\nb 1 1\n", n=2)


def test_parse_td_roots_at_min_vertex():
    text = "s td 3 2 4\nb 1 3 4\nb 2 2 3\nb 3 1 2\n1 2\n2 3\n"
    rtd = parse_td(text)
    assert rtd.root == 2 and rtd.parent[2] == -1
    assert validate_td(path_graph(4), rtd).width == 1


@given(graphs(max_n=20))
def test_gr_round_trip(g):
    assert parse_gr(write_gr(g)) == g


@given(st.integers(1, 4), st.integers(1, 80), st.integers(0, 999))
def test_td_round_trip(k, n, seed):
    gen = gen_partial_ktree(k, n, seed)
    back = parse_td(write_td(gen.rtd, n), n)
    assert back == gen.rtd
    validate_td(gen.graph, back)
