import numpy as np
import pytest

from hcbasis.errors import BudgetError, ValidationError
from hcbasis.graph import (Graph, complete_bipartite, complete_graph, cycle_graph,
                           random_bipartite_digraph, random_graph)
from hcbasis.oracles import brute_weight_histogram, held_karp_count
from hcbasis.parity import (WeightAssignment, clmul, decide_hamiltonicity_mc, isolation_rng,
                            isolation_trace, parity_hc_directed_bipartite, parity_hc_undirected,
                            random_weights, weighted_parity_profile)


def test_undirected_examples(k4, c6):
    assert parity_hc_undirected(k4) == 1
    assert parity_hc_undirected(complete_graph(5)) == 0
    assert parity_hc_undirected(c6) == 1
    assert parity_hc_undirected(cycle_graph(7)) == 1
    assert parity_hc_undirected(complete_graph(2)) == 0


def test_directed_examples():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], directed=True)
    assert parity_hc_directed_bipartite(c4) == 1
    both = Graph.from_edges(4, [(u, v) for u in (0, 1) for v in (2, 3)]
                            + [(v, u) for u in (0, 1) for v in (2, 3)], directed=True)
    assert parity_hc_directed_bipartite(both) == 0
    unbalanced = Graph.from_edges(3, [(0, 1), (1, 0), (0, 2), (2, 0)], directed=True)
    assert parity_hc_directed_bipartite(unbalanced) == 0
    with pytest.raises(ValidationError):
        parity_hc_directed_bipartite(Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)], directed=True))


def test_undirected_agrees_with_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(200):
        n = int(rng.integers(3, 13))
        g = random_graph(n, float(rng.choice([0.3, 0.5, 0.8])), int(rng.integers(1 << 30)))
        assert parity_hc_undirected(g) == held_karp_count(g) % 2


def test_directed_agrees_with_brute_force():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = int(rng.integers(1, 7))
        b = a if rng.random() < 0.9 else a + 1
        g = random_bipartite_digraph(a, b, float(rng.uniform(0.3, 0.9)), int(rng.integers(1 << 30)))
        assert parity_hc_directed_bipartite(g) == held_karp_count(g) % 2


def test_weighted_profiles(c6):
    assert weighted_parity_profile(c6, {e: 1 for e in c6.edges}) == {6: 1}
    assert weighted_parity_profile(Graph(5, frozenset())) == {}
    rng = np.random.default_rng(2)
    for seed in range(30):
        g = random_graph(10, 0.5, seed)
        w = random_weights(g, rng)
        hist = brute_weight_histogram(g, w.weights)
        assert weighted_parity_profile(g, w) == {k: 1 for k, c in hist.items() if c % 2}
    for seed in range(30):
        g = random_bipartite_digraph(4, 4, 0.6, seed)
        w = random_weights(g, rng)
        hist = brute_weight_histogram(g, w.weights)
        assert weighted_parity_profile(g, w) == {k: 1 for k, c in hist.items() if c % 2}


def test_decide_examples(petersen, c6):
    for seed in range(5):
        assert decide_hamiltonicity_mc(petersen, seed=seed) is False
    assert decide_hamiltonicity_mc(c6, reps=20) is True
    assert decide_hamiltonicity_mc(complete_bipartite(3, 3), reps=20) is True


def test_unique_cycle_is_isolated_every_time(c6):
    assert all(isolation_trace(c6, seed=3, reps=10))


def test_rng_streams_are_prefix_stable():
    a = [r.integers(1 << 30) for r in isolation_rng(9, 3)]
    b = [r.integers(1 << 30) for r in isolation_rng(9, 5)][:3]
    assert a == b


def test_weight_validation_and_caps():
    with pytest.raises(ValueError):
        WeightAssignment({(0, 1): 5}, 4)
    with pytest.raises(BudgetError):
        parity_hc_undirected(cycle_graph(30))
    assert parity_hc_undirected(cycle_graph(30), max_n=30) == 1


def test_clmul():
    assert clmul(0b11, 0b11) == 0b101
    assert clmul(0, 7) == 0
    assert clmul(0b1011, 1) == 0b1011


def test_medium_sizes_against_held_karp():
    for seed in range(6):
        g = random_graph(16, 0.4, seed)
        assert parity_hc_undirected(g) == held_karp_count(g) % 2
