import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcbasis.errors import ParseError, ValidationError
from hcbasis.graph import (CnfFormula, EventKind, Graph, GraphFormat, PathDecomposition,
                           check_directed_bipartite, complete_graph, cycle_graph,
                           heuristic_decomposition, is_hamiltonian_cycle, parse_cnf, parse_graph,
                           parse_path_decomposition, path_graph, random_bipartite_digraph,
                           random_cubic_graph, random_graph, serialize_cnf, serialize_graph,
                           serialize_path_decomposition, to_nice_decomposition,
                           validate_decomposition)


def test_parse_pace_graph():
    g = parse_graph("p tw 3 2\n1 2\n2 3\n")
    assert g.n == 3 and g.edges == {(0, 1), (1, 2)}


def test_parse_empty_edge_list():
    g = parse_graph("4\n", GraphFormat.EDGE_LIST)
    assert g.n == 4 and not g.edges


def test_self_loop_is_rejected_with_line_number():
    with pytest.raises(ParseError) as exc:
        parse_graph("p tw 3 1\n2 2\n")
    assert exc.value.line == 2


def test_bad_header_and_range():
    with pytest.raises(ParseError):
        parse_graph("1 2\n")
    with pytest.raises(ParseError):
        parse_graph("p tw 3 1\n1 4\n")


def test_comments_are_skipped():
    g = parse_graph("c hello\np tw 2 1\nc mid\n1 2\n")
    assert g.edges == {(0, 1)}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 12), st.floats(0, 1), st.integers(0, 10**6))
def test_graph_round_trip(n, p, seed):
    g = random_graph(n, p, seed)
    for fmt in GraphFormat:
        assert parse_graph(serialize_graph(g, fmt), fmt) == g


def test_directed_edge_list_round_trip():
    g = random_bipartite_digraph(3, 3, 0.5, 4)
    h = parse_graph(serialize_graph(g, GraphFormat.EDGE_LIST), GraphFormat.EDGE_LIST)
    assert h.directed and h.edges == g.edges


def test_td_examples():
    pd = parse_path_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    assert pd.bags == (frozenset({0, 1}), frozenset({1, 2})) and pd.width == 1
    assert parse_path_decomposition("s td 1 3 3\nb 1 1 2 3\n").width == 2
    star = "s td 4 1 4\nb 1 1\nb 2 2\nb 3 3\nb 4 4\n1 2\n1 3\n1 4\n"
    with pytest.raises(ValidationError):
        parse_path_decomposition(star)


def test_td_round_trip():
    g = random_graph(10, 0.4, 2)
    pd = heuristic_decomposition(g)
    assert parse_path_decomposition(serialize_path_decomposition(pd, g.n)) == pd


def test_validate_examples():
    tri = complete_graph(3)
    assert validate_decomposition(tri, PathDecomposition((frozenset({0, 1, 2}),))) == 2
    p3 = path_graph(3)
    assert validate_decomposition(p3, PathDecomposition((frozenset({0, 1}), frozenset({1, 2})))) == 1
    with pytest.raises(ValidationError, match=r"edge \{1, 2\}"):
        validate_decomposition(p3, PathDecomposition((frozenset({0, 1}), frozenset({2}))))
    with pytest.raises(ValidationError, match="non-contiguous"):
        validate_decomposition(p3, PathDecomposition((frozenset({0, 1}), frozenset({1, 2}), frozenset({0}))))
    with pytest.raises(ValidationError, match="missing"):
        validate_decomposition(p3, PathDecomposition((frozenset({0, 1}),)))


def test_nice_decomposition_c4():
    g = cycle_graph(4)
    npd = to_nice_decomposition(g, PathDecomposition((frozenset({0, 1, 2}), frozenset({0, 2, 3}))))
    kinds = [e.kind for e in npd.events]
    assert kinds.count(EventKind.INTRODUCE_VERTEX) == 4
    assert kinds.count(EventKind.INTRODUCE_EDGE) == 4
    assert kinds.count(EventKind.FORGET_VERTEX) == 4
    assert max(len(b) for b in npd.replay()) - 1 <= 3


def test_nice_decomposition_edge_cases():
    assert to_nice_decomposition(Graph(0, frozenset()), PathDecomposition(())).events == ()
    k4 = complete_graph(4)
    npd = to_nice_decomposition(k4, PathDecomposition((frozenset(range(4)),)))
    kinds = [e.kind for e in npd.events]
    assert kinds[:4] == [EventKind.INTRODUCE_VERTEX] * 4
    assert kinds[4:10] == [EventKind.INTRODUCE_EDGE] * 6


def test_each_edge_is_introduced_once_while_both_ends_are_present():
    for seed in range(30):
        g = random_graph(12, 0.4, seed)
        npd = to_nice_decomposition(g, heuristic_decomposition(g))
        bag, seen = set(), []
        for ev in npd.events:
            if ev.kind is EventKind.INTRODUCE_VERTEX:
                bag.add(ev.u)
            elif ev.kind is EventKind.FORGET_VERTEX:
                bag.remove(ev.u)
            else:
                assert {ev.u, ev.v} <= bag
                seen.append((ev.u, ev.v))
        assert sorted(seen) == sorted(g.edges) and not bag


def test_cnf_examples():
    f = parse_cnf("p cnf 1 1\n1 0\n")
    assert f.num_vars == 1 and f.clauses == ((1,),)
    assert len(parse_cnf("p cnf 2 2\n1 -2 0\n-1 0\n").clauses) == 2
    with pytest.raises(ParseError):
        parse_cnf("p cnf 2 1\n5 0\n")
    with pytest.raises(ParseError):
        parse_cnf("p cnf 2 2\n1 0\n0\n")
    f = parse_cnf("c x\np cnf 3 2\n1 -2\n3 0 2 0\n%\n0\n")
    assert f.clauses == ((1, -2, 3), (2,))
    assert parse_cnf(serialize_cnf(f)) == f


def test_random_graph_examples():
    assert not random_graph(5, 0.0, 7).edges
    assert random_graph(5, 1.0, 7) == complete_graph(5)
    assert random_graph(9, 0.5, 7) == random_graph(9, 0.5, 7)


def test_bipartition_examples():
    c4 = Graph(4, frozenset({(0, 1), (1, 2), (2, 3), (3, 0)}), directed=True)
    assert check_directed_bipartite(c4) == ({0, 2}, {1, 3})
    with pytest.raises(ValidationError):
        check_directed_bipartite(Graph(3, frozenset({(0, 1), (1, 2), (2, 0)}), directed=True))
    assert check_directed_bipartite(Graph(2, frozenset(), directed=True)) == ({0, 1}, frozenset())


def test_heuristic_examples():
    assert validate_decomposition(path_graph(5), heuristic_decomposition(path_graph(5))) <= 2
    assert heuristic_decomposition(complete_graph(5)).width == 4
    assert heuristic_decomposition(Graph(0, frozenset())).width <= 0
    assert heuristic_decomposition(Graph(3, frozenset())).width == 0


def test_heuristic_is_valid_on_random_graphs():
    for seed in range(200):
        n = seed % 30 + 1
        g = random_graph(n, 0.1 + (seed % 7) / 10, seed)
        validate_decomposition(g, heuristic_decomposition(g))


def test_graph_invariants():
    with pytest.raises(ValidationError):
        Graph(2, frozenset({(0, 0)}))
    with pytest.raises(ValidationError):
        Graph(2, frozenset({(0, 2)}))
    g = Graph.from_edges(3, [(2, 0), (0, 2)])
    assert g.edges == {(0, 2)}


def test_random_cubic_and_cycle_check():
    g = random_cubic_graph(10, 1)
    assert all(len(a) == 3 for a in g.adjacency)
    c = cycle_graph(5)
    assert is_hamiltonian_cycle(c, [0, 1, 2, 3, 4])
    assert not is_hamiltonian_cycle(c, [0, 2, 1, 3, 4])
    assert not is_hamiltonian_cycle(c, [0, 1, 2, 3])


def test_formula_validation():
    with pytest.raises(ValidationError):
        CnfFormula(1, ((),))
    with pytest.raises(ValidationError):
        CnfFormula(1, ((2,),))
