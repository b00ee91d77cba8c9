"""Cross-oracle suites run by ``hcbasis verify``.

Each suite compares a fast routine with an independent reference on a seeded
random corpus and reports the number of disagreements.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .gf2 import is_permutation_matrix, multiply, rank
from .graph import (CnfFormula, heuristic_decomposition, random_bipartite_digraph, random_graph,
                    to_nice_decomposition, validate_decomposition)
from .matchings import basis_mates, basis_size, build_hc_matrix, factorize
from .oracles import brute_hc_count, brute_sat, reference_pw_profile
from .parity import parity_hc_directed_bipartite, parity_hc_undirected
from .pathwidth import pw_parity_profile
from .reduction import check_instance, reduce

TIERS = {
    "small": {"t_max": 8, "parity": 40, "parity_n": 9, "pw": 20, "pw_n": 10, "pw_width": 5, "sat": 15, "sat_vars": 3},
    "medium": {"t_max": 10, "parity": 200, "parity_n": 11, "pw": 100, "pw_n": 13, "pw_width": 7, "sat": 60, "sat_vars": 5},
}


@dataclass
class SuiteResult:
    name: str
    instances: int
    disagreements: int
    seconds: float

    def to_dict(self) -> dict:
        return asdict(self)


def _basis_suite(cfg: dict, seed: int) -> tuple[int, int]:
    checked = bad = 0
    for t in range(2, cfg["t_max"] + 1, 2):
        hc = build_hc_matrix(t)
        index = {m.mate: i for i, m in enumerate(hc.matchings)}
        cols = [index[m] for m in basis_mates(t)]
        bad += rank(hc.matrix) != basis_size(t)
        bad += not is_permutation_matrix(hc.matrix.submatrix(cols, cols))
        left, right = factorize(t)
        bad += multiply(left, right) != hc.matrix
        checked += 3
    return checked, bad


def _parity_suite(cfg: dict, seed: int) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    bad = 0
    for k in range(cfg["parity"]):
        s = int(rng.integers(1 << 31))
        if k % 2 == 0:
            g = random_graph(int(rng.integers(3, cfg["parity_n"] + 1)), float(rng.uniform(0.3, 0.9)), s)
            bad += parity_hc_undirected(g) != brute_hc_count(g) % 2
        else:
            a = int(rng.integers(1, cfg["parity_n"] // 2 + 1))
            g = random_bipartite_digraph(a, a, float(rng.uniform(0.3, 0.9)), s)
            bad += parity_hc_directed_bipartite(g) != brute_hc_count(g) % 2
    return cfg["parity"], bad


def _pw_suite(cfg: dict, seed: int) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    bad = done = 0
    while done < cfg["pw"]:
        n = int(rng.integers(3, cfg["pw_n"] + 1))
        g = random_graph(n, float(rng.uniform(0.25, 0.6)), int(rng.integers(1 << 31)))
        pd = heuristic_decomposition(g)
        if validate_decomposition(g, pd) > cfg["pw_width"]:
            continue
        done += 1
        npd = to_nice_decomposition(g, pd)
        weights = {e: int(rng.integers(1, 2 * max(g.m, 1) + 1)) for e in g.sorted_edges}
        exact = reference_pw_profile(g, npd, weights, max_width=npd.width, max_n=n)
        got = pw_parity_profile(g, npd, weights)
        bad += got != {w: 1 for w, c in exact.items() if c % 2}
    return cfg["pw"], bad


def _reduction_suite(cfg: dict, seed: int) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(cfg["sat"]):
        nv = int(rng.integers(1, cfg["sat_vars"] + 1))
        clauses = []
        for _ in range(int(rng.integers(1, 6))):
            size = int(rng.integers(1, 4))
            clauses.append(tuple(int(rng.choice([-1, 1]) * rng.integers(1, nv + 1)) for _ in range(size)))
        f = CnfFormula(nv, tuple(clauses))
        out = reduce(f)
        bad += validate_decomposition(out.graph, out.decomposition) > out.width_bound
        bad += check_instance(f, out, seed=seed).hamiltonian != (brute_sat(f) is not None)
    return cfg["sat"], bad


SUITES: dict[str, Callable[[dict, int], tuple[int, int]]] = {
    "basis": _basis_suite,
    "parity": _parity_suite,
    "pathwidth": _pw_suite,
    "reduction": _reduction_suite,
}


def run_suites(tier: str = "small", seed: int = 0) -> list[SuiteResult]:
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}; choose from {sorted(TIERS)}")
    out = []
    for name, fn in SUITES.items():
        start = time.perf_counter()
        n, bad = fn(TIERS[tier], seed)
        out.append(SuiteResult(name, n, bad, round(time.perf_counter() - start, 3)))
    return out
