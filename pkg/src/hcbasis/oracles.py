"""Brute-force reference implementations.

Nothing here imports the basis machinery; these are the independent anchors the
fast algorithms are checked against.

Counting convention: an undirected Hamiltonian cycle is an edge set (so a cyclic
sequence up to rotation and reflection) and needs ``n >= 3``; a directed one is an
arc set (up to rotation) and needs ``n >= 2``, so a 2-cycle ``u->v->u`` counts.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import BudgetError, ValidationError
from .graph import CnfFormula, EventKind, Graph, NicePathDecomposition

Weights = Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class OracleBudget:
    max_n: int
    time_cap: float | None = None


BRUTE_BUDGET = OracleBudget(12)
HELD_KARP_BUDGET = OracleBudget(18)
SAT_BUDGET = 20
REFERENCE_PW_MAX_WIDTH = 8
REFERENCE_PW_MAX_N = 20


def _check(n: int, cap: int, name: str) -> None:
    if n > cap:
        raise BudgetError(f"{name}: n={n} exceeds cap {cap}")


def _min_cycle_n(g: Graph) -> int:
    return 2 if g.directed else 3


def brute_hc_cycles(g: Graph, max_n: int = BRUTE_BUDGET.max_n) -> Iterator[tuple[int, ...]]:
    """Yield each Hamiltonian cycle once as a vertex sequence starting at 0."""
    _check(g.n, max_n, "brute_hc_count")
    n = g.n
    if n < _min_cycle_n(g):
        return
    nbrs = g.out_neighbors
    path = [0]

    def rec(visited: int):
        v = path[-1]
        if len(path) == n:
            if 0 in nbrs[v] and (g.directed or path[1] < path[-1]):
                yield tuple(path)
            return
        for w in sorted(nbrs[v]):
            if not (visited >> w) & 1:
                path.append(w)
                yield from rec(visited | (1 << w))
                path.pop()

    yield from rec(1)


def cycle_weight(g: Graph, cycle: Sequence[int], weights: Weights) -> int:
    total = 0
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        total += weights[(u, v) if g.directed else (min(u, v), max(u, v))]
    return total


def brute_hc_count(g: Graph, max_n: int = BRUTE_BUDGET.max_n) -> int:
    return sum(1 for _ in brute_hc_cycles(g, max_n))


def brute_weight_histogram(g: Graph, weights: Weights, max_n: int = BRUTE_BUDGET.max_n) -> Counter:
    """Exact number of Hamiltonian cycles per total weight."""
    return Counter(cycle_weight(g, c, weights) for c in brute_hc_cycles(g, max_n))


def held_karp_count(g: Graph, max_n: int = HELD_KARP_BUDGET.max_n) -> int:
    """Subset DP over (visited set, endpoint) counting Hamiltonian paths from vertex 0."""
    _check(g.n, max_n, "held_karp_count")
    n = g.n
    if n < _min_cycle_n(g):
        return 0
    out = [sum(1 << w for w in g.out_neighbors[v]) for v in range(n)]
    full = (1 << n) - 1
    dp: dict[int, list[int]] = {1: [1] + [0] * (n - 1)}
    # masks only grow, so increasing integer order is a topological order
    for mask in range(1, full + 1, 2):
        row = dp.pop(mask, None)
        if row is None:
            continue
        if mask == full:
            total = sum(c for v, c in enumerate(row) if c and (out[v] & 1))
            return total if g.directed else total // 2
        for v, c in enumerate(row):
            if not c:
                continue
            free = out[v] & ~mask
            while free:
                low = free & -free
                w = low.bit_length() - 1
                nxt = dp.setdefault(mask | low, [0] * n)
                nxt[w] += c
                free ^= low
    return 0


def brute_sat(f: CnfFormula, max_vars: int = SAT_BUDGET) -> tuple[bool, ...] | None:
    """Lexicographically least satisfying assignment (False < True), or None."""
    _check(f.num_vars, max_vars, "brute_sat")
    for bits in itertools.product((False, True), repeat=f.num_vars):
        if f.satisfied_by(bits):
            return bits
    return None


def reference_pw_profile(g: Graph, npd: NicePathDecomposition, weights: Weights | None = None,
                         max_width: int = REFERENCE_PW_MAX_WIDTH,
                         max_n: int = REFERENCE_PW_MAX_N) -> Counter:
    """Exact per-weight Hamiltonian cycle counts by the explicit-pairing DP.

    A state is the degree (0, 1, 2) of every bag vertex, the pairing of degree-1
    vertices by the paths of the partial solution, and whether the single cycle
    has already been closed.
    """
    if g.directed:
        raise ValidationError("reference_pw_dp handles undirected graphs")
    _check(g.n, max_n, "reference_pw_dp")
    if npd.width > max_width:
        raise BudgetError(f"reference_pw_dp: width {npd.width} exceeds cap {max_width}")
    # state: (frozenset of (vertex, degree)), frozenset of pairs, closed) -> Counter(weight)
    table: dict = {(frozenset(), frozenset(), False): Counter({0: 1})}
    if g.n < 3:
        return Counter()

    def add(dst, key, hist, shift=0):
        acc = dst.setdefault(key, Counter())
        for w, c in hist.items():
            acc[w + shift] += c

    for ev in npd.events:
        nxt: dict = {}
        if ev.kind is EventKind.INTRODUCE_VERTEX:
            for (deg, pairs, closed), hist in table.items():
                if not closed:
                    add(nxt, (deg | {(ev.u, 0)}, pairs, closed), hist)
        elif ev.kind is EventKind.FORGET_VERTEX:
            for (deg, pairs, closed), hist in table.items():
                if (ev.u, 2) in deg:
                    add(nxt, (deg - {(ev.u, 2)}, pairs, closed), hist)
        else:
            u, v = ev.u, ev.v
            w = weights[(u, v)] if weights is not None else 0
            for (deg, pairs, closed), hist in table.items():
                add(nxt, (deg, pairs, closed), hist)
                if closed:
                    continue
                d = dict(deg)
                du, dv = d[u], d[v]
                if du == 2 or dv == 2:
                    continue
                mate = {}
                for a, b in pairs:
                    mate[a], mate[b] = b, a
                if du == 0 and dv == 0:
                    mate[u], mate[v] = v, u
                elif du == 1 and dv == 1:
                    if mate[u] == v:
                        if len(mate) != 2 or any(x == 0 for x in d.values()):
                            continue  # a cycle that misses vertices
                        del mate[u], mate[v]
                        d[u], d[v] = 2, 2
                        add(nxt, (frozenset(d.items()), frozenset(), True), hist, w)
                        continue
                    a, b = mate.pop(u), mate.pop(v)
                    mate[a], mate[b] = b, a
                else:
                    x, y = (u, v) if du == 0 else (v, u)  # x gains its first edge
                    a = mate.pop(y)
                    mate[x], mate[a] = a, x
                d[u] += 1
                d[v] += 1
                new_pairs = frozenset((a, b) for a, b in mate.items() if a < b)
                add(nxt, (frozenset(d.items()), new_pairs, False), hist, w)
        table = {k: h for k, h in nxt.items() if any(h.values())}
    out = Counter()
    for (deg, pairs, closed), hist in table.items():
        if closed and not deg:
            out.update(hist)
    return +out


def reference_pw_dp(g: Graph, npd: NicePathDecomposition, **kw) -> int:
    return sum(reference_pw_profile(g, npd, **kw).values())
