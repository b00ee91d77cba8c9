"""Parity of Hamiltonian cycle counts and the Monte Carlo decision built on it.

Both parity algorithms rest on the factorization ``HC = HC[:, B] P HC[B, :]``.
For an even vertex count a Hamiltonian cycle is the union of two perfect matchings
``M1, M2`` of the input, so sums of ``HC[M1, M2]`` split into per-basis-member
factors ``A(b) = #{M : M u b is a Hamiltonian cycle}``. All ``A(b)`` come out of
one walk DP: alternate a basis edge and a graph edge starting at a pivot vertex;
the state is the set of basis edges used so far (a sub-matching of some basis
member) plus the walk's endpoint. Basis members share most sub-matchings, which
is what keeps the state count well below ``2**n``.

Counts are kept per total weight as GF(2)[z] polynomials packed into ints (bit w is
the parity of the number of objects of weight w), so the weighted profile used by
isolation comes for free; unweighted parity is the all-zero weighting.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

import numpy as np

from .errors import BudgetError, ValidationError
from .graph import Graph, check_directed_bipartite
from .matchings import basis_mates, partner_index

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 24

Weights = Mapping[tuple[int, int], int]
ParityProfile = dict[int, int]


@dataclass(frozen=True)
class WeightAssignment:
    weights: Mapping[tuple[int, int], int]
    w_max: int

    def __post_init__(self):
        bad = [e for e, w in self.weights.items() if not 1 <= w <= self.w_max]
        if bad:
            raise ValueError(f"weights out of 1..{self.w_max} on {bad[:3]}")

    def __getitem__(self, e: tuple[int, int]) -> int:
        return self.weights[e]


def isolation_rng(seed: int, reps: int) -> list[np.random.Generator]:
    """One PCG64 stream per repetition, spawned from ``SeedSequence(seed)``.

    Child ``r`` depends only on ``(seed, r)``, so a run with more repetitions
    replays the earlier ones exactly.
    """
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(reps)]


def random_weights(g: Graph, rng: np.random.Generator, w_max: int | None = None) -> WeightAssignment:
    """Independent uniform weights in ``1..w_max`` (default ``2m``) on sorted edges."""
    w_max = w_max or max(1, 2 * g.m)
    draws = rng.integers(1, w_max + 1, size=g.m)
    return WeightAssignment(dict(zip(g.sorted_edges, (int(x) for x in draws))), w_max)


def clmul(a: int, b: int) -> int:
    """Product in GF(2)[z]."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def profile_from_poly(poly: int) -> ParityProfile:
    out = {}
    while poly:
        low = poly & -poly
        out[low.bit_length() - 1] = 1
        poly ^= low
    return out


@lru_cache(maxsize=None)
def _mate_masks(n: int) -> tuple[tuple[int, ...], ...]:
    """``masks[q][r]``: bitmask of basis members that pair q with r."""
    mates = basis_mates(n)
    masks = [[0] * n for _ in range(n)]
    for i, m in enumerate(mates):
        for q in range(n):
            masks[q][m[q]] |= 1 << i
    return tuple(tuple(r) for r in masks)


def alternating_walks(n: int, adj: list[int], wt: list[list[int]]) -> dict[int, dict[int, int]]:
    """For every basis member b of K_n, weighted walk counts ending at each vertex.

    ``result[b][c]`` is the GF(2)[z] polynomial counting partial matchings M of the
    graph (``adj`` as bitmasks) such that walking from 0 along b, M, b, ..., b visits
    every vertex and stops at c; adding the graph edge c-0 closes M u b into a
    Hamiltonian cycle.
    """
    masks = _mate_masks(n)
    everyone = (1 << len(basis_mates(n))) - 1
    # layer: key -> [candidate basis mask, covered vertex mask, {endpoint: poly}]
    layer: dict[int, list] = {}
    for r in range(1, n):
        cand = masks[0][r]
        if cand:
            layer[(1 << r)] = [cand & everyone, 1 | (1 << r), {r: 1}]
    for _ in range(n // 2 - 1):
        nxt: dict[int, list] = {}
        for key, (cand, covered, ends) in layer.items():
            for c, poly in ends.items():
                free = adj[c] & ~covered
                while free:
                    low = free & -free
                    q = low.bit_length() - 1
                    free ^= low
                    shifted = poly << wt[c][q]
                    for r in range(n):
                        sub = cand & masks[q][r]
                        if not sub:
                            continue
                        nkey = key | (1 << (q * n + r)) if q < r else key | (1 << (r * n + q))
                        slot = nxt.get(nkey)
                        if slot is None:
                            slot = nxt[nkey] = [sub, covered | low | (1 << r), {}]
                        slot[2][r] = slot[2].get(r, 0) ^ shifted
        layer = nxt
    out: dict[int, dict[int, int]] = {}
    for cand, _covered, ends in layer.values():
        b = cand.bit_length() - 1
        out[b] = {c: p for c, p in ends.items() if p}
    return out


def _bitadj(g: Graph, n: int, relabel: list[int]) -> list[int]:
    adj = [0] * n
    for u, v in g.edges:
        a, b = relabel[u], relabel[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def _even_undirected_poly(n: int, edges: dict[tuple[int, int], int], pivot: int) -> int:
    """Weighted cycle-count polynomial of an undirected graph on an even vertex set."""
    relabel = list(range(n))
    relabel[0], relabel[pivot] = pivot, 0
    adj = [0] * n
    wt = [[0] * n for _ in range(n)]
    for (u, v), w in edges.items():
        a, b = relabel[u], relabel[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        wt[a][b] = wt[b][a] = w
    walks = alternating_walks(n, adj, wt)
    nbrs = sorted(x for x in range(n) if (adj[0] >> x) & 1)
    # a_x(b) counts matchings through edge 0-x that close a Hamiltonian cycle with b
    closing = {b: {x: ends[x] << wt[x][0] for x in nbrs if ends.get(x)} for b, ends in walks.items()}
    total = 0
    for b, row in closing.items():
        other = closing.get(partner_index(n, b))
        if not other:
            continue
        # cycles through 0-x and 0-y with x < y: x's edge in M1, y's edge in M2
        suffix = 0
        for x in reversed(nbrs):
            if x in row and suffix:
                total ^= clmul(row[x], suffix)
            suffix ^= other.get(x, 0)
    return total


def _check_cap(g: Graph, max_n: int) -> None:
    if g.n > max_n:
        raise BudgetError(f"n={g.n} exceeds the vertex cap {max_n}; raise max_n to override")


def _undirected_poly(g: Graph, weights: Weights | None) -> int:
    n = g.n
    if n < 3:
        return 0
    w = {e: (weights[e] if weights is not None else 0) for e in g.edges}
    pivot = min(range(n), key=lambda v: (g.degree(v), v))
    if n % 2 == 0:
        return _even_undirected_poly(n, w, pivot)
    # odd n: for each pivot neighbour y, subdivide pivot-y with a new vertex z and
    # keep only pivot edges to x < y, so cycles through pivot are counted once
    total = 0
    z = n
    nbrs = sorted(g.adjacency[pivot])
    for y in nbrs:
        ew = {e: x for e, x in w.items() if pivot not in e}
        for x in nbrs:
            if x < y:
                ew[(min(pivot, x), max(pivot, x))] = w[(min(pivot, x), max(pivot, x))]
        ew[(pivot, z) if pivot < z else (z, pivot)] = w[(min(pivot, y), max(pivot, y))]
        ew[(y, z)] = 0
        total ^= _even_undirected_poly(n + 1, ew, z)
    return total


def _directed_bipartite_poly(g: Graph, weights: Weights | None) -> int:
    left, right = g.bipartition or check_directed_bipartite(g)
    n = g.n
    if n < 2 or len(left) != len(right):
        return 0  # every directed cycle alternates sides, so unbalanced means none
    side_adj: dict[bool, list[int]] = {True: [0] * n, False: [0] * n}
    side_wt: dict[bool, list[list[int]]] = {True: [[0] * n for _ in range(n)], False: [[0] * n for _ in range(n)]}
    for (u, v) in g.edges:
        forward = u in left  # left -> right arcs form M1, right -> left arcs form M2
        side_adj[forward][u] |= 1 << v
        side_adj[forward][v] |= 1 << u
        w = weights[(u, v)] if weights is not None else 0
        side_wt[forward][u][v] = side_wt[forward][v][u] = w
    polys = {}
    for forward in (True, False):
        adj, wt = side_adj[forward], side_wt[forward]
        walks = alternating_walks(n, adj, wt)
        polys[forward] = {b: _xor_all(ends[x] << wt[x][0] for x in ends if (adj[0] >> x) & 1)
                          for b, ends in walks.items()}
    total = 0
    for b, a in polys[True].items():
        other = polys[False].get(partner_index(n, b), 0)
        if a and other:
            total ^= clmul(a, other)
    return total


def _xor_all(items) -> int:
    acc = 0
    for x in items:
        acc ^= x
    return acc


def weighted_parity_profile(g: Graph, w: WeightAssignment | Weights | None = None,
                            max_n: int = DEFAULT_MAX_N) -> ParityProfile:
    """Map total weight -> parity of the number of Hamiltonian cycles of that weight."""
    _check_cap(g, max_n)
    weights = w.weights if isinstance(w, WeightAssignment) else w
    if g.directed:
        poly = _directed_bipartite_poly(g, weights)
    else:
        poly = _undirected_poly(g, weights)
    return profile_from_poly(poly)


def parity_hc_undirected(g: Graph, max_n: int = DEFAULT_MAX_N) -> int:
    if g.directed:
        raise ValidationError("expected an undirected graph")
    _check_cap(g, max_n)
    return _undirected_poly(g, None) & 1


def parity_hc_directed_bipartite(g: Graph, max_n: int = DEFAULT_MAX_N) -> int:
    """Parity of directed Hamiltonian cycles (counted up to rotation)."""
    if not g.directed:
        raise ValidationError("expected a directed graph")
    _check_cap(g, max_n)
    if g.bipartition is None:
        check_directed_bipartite(g)
    return _directed_bipartite_poly(g, None) & 1


def isolation_trace(g: Graph, seed: int, reps: int, max_n: int = DEFAULT_MAX_N,
                    w_max: int | None = None) -> Iterator[bool]:
    """Per-repetition answers of the isolation test (stops being lazy only when consumed)."""
    if g.directed:
        check_directed_bipartite(g)
    _check_cap(g, max_n)
    for rng in isolation_rng(seed, reps):
        yield bool(weighted_parity_profile(g, random_weights(g, rng, w_max), max_n))


def decide_hamiltonicity_mc(g: Graph, seed: int = 0, reps: int = 20, max_n: int = DEFAULT_MAX_N,
                            w_max: int | None = None) -> bool:
    """One-sided Monte Carlo: True only if some weighting leaves an odd weight class.

    A non-Hamiltonian graph has no cycles of any weight, so the answer is never
    wrongly True. With weights from ``1..2m`` each repetition isolates a unique
    minimum-weight cycle with probability at least 1/2.
    """
    start = time.perf_counter()
    answer = any(isolation_trace(g, seed, reps, max_n, w_max))
    log.debug("decide n=%d m=%d reps=%d -> %s in %.1f ms", g.n, g.m, reps, answer,
              1e3 * (time.perf_counter() - start))
    return answer
