import pytest

from hcbasis.errors import BudgetError
from hcbasis.graph import (CnfFormula, Graph, PathDecomposition, complete_graph, cycle_graph,
                           heuristic_decomposition, random_bipartite_digraph,
                           random_graph, to_nice_decomposition)
from hcbasis.oracles import (brute_hc_count, brute_sat, brute_weight_histogram, held_karp_count,
                             reference_pw_dp, reference_pw_profile)


def test_brute_counts(k4, petersen):
    assert brute_hc_count(k4) == 3
    assert brute_hc_count(complete_graph(5)) == 12
    assert brute_hc_count(petersen) == 0
    assert brute_hc_count(complete_graph(2)) == 0


def test_directed_conventions():
    two_cycle = Graph(2, frozenset({(0, 1), (1, 0)}), directed=True)
    assert brute_hc_count(two_cycle) == held_karp_count(two_cycle) == 1
    both_ways = Graph.from_edges(4, [(u, v) for u in (0, 1) for v in (2, 3)]
                                 + [(v, u) for u in (0, 1) for v in (2, 3)], directed=True)
    assert brute_hc_count(both_ways) == 2


def test_held_karp(k4, c6):
    assert held_karp_count(c6) == 1
    assert held_karp_count(k4) == 3
    for seed in range(100):
        g = random_graph(10, 0.4, seed)
        assert held_karp_count(g) == brute_hc_count(g)
    for seed in range(30):
        g = random_bipartite_digraph(4, 4, 0.5, seed)
        assert held_karp_count(g) == brute_hc_count(g)


def test_budgets():
    with pytest.raises(BudgetError):
        brute_hc_count(complete_graph(13))
    with pytest.raises(BudgetError):
        held_karp_count(cycle_graph(19))


def test_brute_sat():
    assert brute_sat(CnfFormula(1, ((1,),))) == (True,)
    assert brute_sat(CnfFormula(1, ((1,), (-1,)))) is None
    assert brute_sat(CnfFormula(2, ((1, 2), (-1, -2)))) == (False, True)


def test_reference_pw(c6, p4):
    npd = to_nice_decomposition(c6, heuristic_decomposition(c6))
    assert npd.width == 2 and reference_pw_dp(c6, npd) == 1
    assert reference_pw_dp(p4, to_nice_decomposition(p4, heuristic_decomposition(p4))) == 0
    for seed in range(10):
        g = random_graph(12, 0.5, seed)
        npd = to_nice_decomposition(g, heuristic_decomposition(g))
        if npd.width <= 8:
            assert reference_pw_dp(g, npd) == held_karp_count(g)


def test_reference_pw_on_arbitrary_decompositions():
    g = complete_graph(5)
    single = PathDecomposition((frozenset(range(5)),))
    assert reference_pw_dp(g, to_nice_decomposition(g, single)) == 12


def test_weight_histogram():
    g = complete_graph(4)
    w = {e: 1 + (e[0] + e[1]) % 3 for e in g.edges}
    hist = brute_weight_histogram(g, w)
    npd = to_nice_decomposition(g, heuristic_decomposition(g))
    assert sum(hist.values()) == 3
    assert reference_pw_profile(g, npd, w) == hist
