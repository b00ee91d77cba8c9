"""CNF-SAT -> Hamiltonian cycle instance generator with a bounded-width layout.

The construction is first described on a directed graph. Variable ``x_i`` owns a
head vertex ``h_i`` and a row ``r_i[0..3C]`` with arcs both ways between
neighbours in the row; ``h_i`` points at both row ends and both row ends point at
``h_{i+1}`` (cyclically). A Hamiltonian cycle therefore sweeps each row once,
left to right (``x_i`` true) or right to left (false). Clause ``j`` owns row
positions ``a = 3j+1``, ``b = 3j+2`` with separators in between; its hub has arcs
``r_i[a] -> hub -> r_i[b]`` for a positive literal and ``r_i[b] -> hub -> r_i[a]``
for a negative one, so it can be spliced into a row sweeping in the literal's
direction. Separators stop a cycle from leaving a hub into a different row.

The undirected graph replaces every vertex v by a path ``v_in - v_mid - v_out`` and
every arc ``u -> v`` by the edge ``u_out - v_in``; undirected Hamiltonian cycles of
the result correspond exactly to directed ones. Vertex ids follow a column-major
layout, and the induced vertex-separation path decomposition has width at most
``4 * num_vars + 4``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import ValidationError
from .graph import (CnfFormula, Graph, PathDecomposition, is_hamiltonian_cycle,
                    layout_decomposition, to_nice_decomposition)

ADMISSIBLE_GROUP_SIZES = (1,)


@dataclass(frozen=True)
class GadgetSpec:
    """Terminals are host edges; a state says which host edges are replaced by detours.

    ``relation`` lists the admissible states as 0/1 tuples of length ``arity``.
    """

    arity: int
    relation: frozenset[tuple[int, ...]]

    def __post_init__(self):
        rel = frozenset(tuple(int(x) for x in s) for s in self.relation)
        for s in rel:
            if len(s) != self.arity or set(s) - {0, 1}:
                raise ValidationError(f"state {s} is not a 0/1 tuple of length {self.arity}")
        object.__setattr__(self, "relation", rel)

    @classmethod
    def exactly_one(cls, arity: int, allowed: Sequence[int] | None = None) -> "GadgetSpec":
        allowed = range(arity) if allowed is None else allowed
        return cls(arity, frozenset(tuple(int(i == j) for j in range(arity)) for i in allowed))


@dataclass(frozen=True)
class GadgetFragment:
    """Internal vertices plus edges to terminal endpoints ``(2i, 2i+1)`` of host edge i."""

    internal: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    terminals: tuple[tuple[str, str], ...]


def build_induced_subgraph_gadget(spec: GadgetSpec) -> GadgetFragment:
    """Realise ``spec`` by a single hub vertex joined to the terminals it may detour.

    Admissible relations are "exactly one detour, taken from an allowed set",
    including the empty set (a hub that can never be covered).
    """
    allowed = []
    for s in spec.relation:
        if sum(s) != 1:
            raise ValidationError(f"state {s} is not realisable by a detour hub")
        allowed.append(s.index(1))
    terminals = tuple((f"a{i}", f"b{i}") for i in range(spec.arity))
    edges = tuple(e for i in sorted(allowed) for e in (("hub", f"a{i}"), ("hub", f"b{i}")))
    return GadgetFragment(("hub",), edges, terminals)


def gadget_completions(frag: GadgetFragment, state: Sequence[int]) -> list[frozenset]:
    """Enumerate edge sets that route terminal pairs with state 1 through the fragment.

    A completion covers every internal vertex with degree 2, gives terminals ``a_i``,
    ``b_i`` degree 1 when ``state[i] = 1`` and 0 otherwise, and consists of paths
    each joining ``a_i`` to ``b_i`` for the same ``i``.
    """
    want = {}
    for i, (a, b) in enumerate(frag.terminals):
        want[a] = want[b] = int(state[i])
    for v in frag.internal:
        want[v] = 2
    out = []
    for r in range(len(frag.edges) + 1):
        for subset in itertools.combinations(frag.edges, r):
            deg = dict.fromkeys(want, 0)
            for u, v in subset:
                deg[u] += 1
                deg[v] += 1
            if deg != want:
                continue
            adj: dict[str, list[str]] = {}
            for u, v in subset:
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
            ok = True
            seen = set()
            for i, (a, b) in enumerate(frag.terminals):
                if not state[i]:
                    continue
                prev, cur = None, a
                seen.add(a)
                while cur != b:
                    nxt = [x for x in adj[cur] if x != prev]
                    if not nxt or nxt[0] in seen:
                        ok = False
                        break
                    prev, cur = cur, nxt[0]
                    seen.add(cur)
                if not ok:
                    break
            if ok and seen >= set(frag.internal):
                out.append(frozenset(subset))
    return out


def realised_relation(frag: GadgetFragment) -> frozenset[tuple[int, ...]]:
    k = len(frag.terminals)
    return frozenset(s for s in itertools.product((0, 1), repeat=k) if gadget_completions(frag, s))


@dataclass(frozen=True)
class ReductionOutput:
    graph: Graph
    decomposition: PathDecomposition
    width_bound: int
    witness_map: dict[str, Any] = field(compare=False)
    metadata: dict[str, Any] = field(compare=False)


def _normalise(f: CnfFormula) -> list[list[int]]:
    return [list(dict.fromkeys(clause)) for clause in f.clauses]


def reduce(f: CnfFormula, group_size: int = 1) -> ReductionOutput:
    """Build an undirected graph that is Hamiltonian iff ``f`` is satisfiable.

    Duplicate literals inside a clause are merged.
    """
    if not f.clauses or f.num_vars < 1:
        raise ValidationError("formula must have at least one variable and one clause")
    if group_size not in ADMISSIBLE_GROUP_SIZES:
        raise ValidationError(f"group_size {group_size} not admissible; choose from {ADMISSIBLE_GROUP_SIZES}")
    clauses = _normalise(f)
    nv, nc = f.num_vars, len(clauses)
    cols = 3 * nc + 1  # separator, then (a_j, b_j, separator) per clause

    ids: dict[tuple, int] = {}

    def node(*name) -> None:
        for part in ("in", "mid", "out"):
            ids[name + (part,)] = len(ids)

    # layout order: row heads, then column by column, clause j after the a_j column
    for i in range(nv):
        node("head", i)
    for c in range(cols):
        for i in range(nv):
            node("row", i, c)
        if c % 3 == 1:
            node("clause", (c - 1) // 3)

    edges: set[tuple[int, int]] = set()

    def arc(u: tuple, v: tuple) -> None:
        a, b = ids[u + ("out",)], ids[v + ("in",)]
        edges.add((min(a, b), max(a, b)))

    for name in {k[:-1] for k in ids}:
        a, m, b = (ids[name + (p,)] for p in ("in", "mid", "out"))
        edges.add((min(a, m), max(a, m)))
        edges.add((min(m, b), max(m, b)))
    for i in range(nv):
        head, nxt = ("head", i), ("head", (i + 1) % nv)
        first, last = ("row", i, 0), ("row", i, cols - 1)
        arc(head, first)
        arc(head, last)
        arc(first, nxt)
        arc(last, nxt)
        for c in range(cols - 1):
            arc(("row", i, c), ("row", i, c + 1))
            arc(("row", i, c + 1), ("row", i, c))

    clause_records = []
    for j, lits in enumerate(clauses):
        frag = build_induced_subgraph_gadget(GadgetSpec.exactly_one(len(lits)))
        hub = ("clause", j)
        hosts = []
        for lit in lits:
            a, b = ("row", abs(lit) - 1, 3 * j + 1), ("row", abs(lit) - 1, 3 * j + 2)
            src, dst = (a, b) if lit > 0 else (b, a)  # direction of the row walk when lit is true
            hosts.append((src, dst))
        names = {}
        for (ta, tb), (src, dst) in zip(frag.terminals, hosts):
            names[ta], names[tb] = src, dst
        for _hub, t in frag.edges:
            if t.startswith("a"):
                arc(names[t], hub)
            else:
                arc(hub, names[t])
        clause_records.append({"hub": [ids[hub + (p,)] for p in ("in", "mid", "out")],
                               "literals": lits,
                               "hosts": [[ids[src + ("out",)], ids[dst + ("in",)]] for src, dst in hosts]})

    n = len(ids)
    g = Graph(n, frozenset(edges))
    pd = layout_decomposition(g, range(n))
    width_bound = 4 * nv + 4

    def triple(name: tuple) -> list[int]:
        return [ids[name + (p,)] for p in ("in", "mid", "out")]

    witness_map = {
        "num_vars": nv,
        "heads": [triple(("head", i)) for i in range(nv)],
        "rows": [[triple(("row", i, c)) for c in range(cols)] for i in range(nv)],
        "clauses": clause_records,
    }
    metadata = {
        "num_vars": nv,
        "num_clauses": nc,
        "group_size": group_size,
        "n_G": n,
        "m_G": g.m,
        "width_bound": width_bound,
        "width_actual": pd.width,
    }
    return ReductionOutput(g, pd, width_bound, witness_map, metadata)


def certify_assignment(out: ReductionOutput, assignment: Sequence[bool]) -> list[int] | None:
    """Explicit Hamiltonian cycle for a satisfying assignment, else None."""
    wm = out.witness_map
    if len(assignment) != wm["num_vars"]:
        raise ValueError(f"assignment has {len(assignment)} values, expected {wm['num_vars']}")
    detour: dict[tuple[int, int], list[int]] = {}
    for rec in wm["clauses"]:
        pick = next((k for k, lit in enumerate(rec["literals"])
                     if bool(assignment[abs(lit) - 1]) == (lit > 0)), None)
        if pick is None:
            return None
        detour.setdefault(tuple(rec["hosts"][pick]), rec["hub"])
    cycle: list[int] = []
    for i, row in enumerate(wm["rows"]):
        cycle += wm["heads"][i]
        walk = row if assignment[i] else row[::-1]
        for k, t in enumerate(walk):
            cycle += t
            if k + 1 < len(walk):
                hub = detour.pop((t[2], walk[k + 1][0]), None)
                if hub:
                    cycle += hub
    if detour:
        raise AssertionError("clause detour does not lie on the row walk; witness map is inconsistent")
    return cycle


def verify_witness(g: Graph, cycle: Sequence[int] | None) -> bool:
    return cycle is not None and is_hamiltonian_cycle(g, cycle)


def witness_json(out: ReductionOutput) -> str:
    return json.dumps(out.witness_map, sort_keys=True, indent=1)


def output_digest(out: ReductionOutput) -> str:
    h = hashlib.sha256()
    h.update(repr(sorted(out.graph.edges)).encode())
    h.update(repr([sorted(b) for b in out.decomposition.bags]).encode())
    h.update(witness_json(out).encode())
    return h.hexdigest()


EXACT_HELD_KARP_N = 18
EXACT_PAIRING_WIDTH = 40
NEGATIVE_REPS = 30


@dataclass(frozen=True)
class InstanceCheck:
    hamiltonian: bool
    level: str  # "witness", "exact:held-karp", "exact:pairing-dp" or "monte-carlo:reps=R"


def check_instance(f: CnfFormula, out: ReductionOutput, seed: int = 0,
                   reps: int = NEGATIVE_REPS, exact_width: int = EXACT_PAIRING_WIDTH) -> InstanceCheck:
    """Decide Hamiltonicity of a reduction output with the strongest affordable evidence.

    Satisfiable formulas are certified by an explicit cycle. Otherwise the graph is
    checked by Held-Karp when small, by the exact pairing DP when the layout is
    narrow enough, and by the one-sided Monte Carlo solver as a last resort.
    """
    from .oracles import brute_sat, held_karp_count, reference_pw_dp
    from .pathwidth import solve_pw

    assignment = brute_sat(f)
    if assignment is not None:
        cycle = certify_assignment(out, assignment)
        if not verify_witness(out.graph, cycle):
            raise AssertionError("certified cycle failed validation")
        return InstanceCheck(True, "witness")
    g = out.graph
    if g.n <= EXACT_HELD_KARP_N:
        return InstanceCheck(held_karp_count(g) > 0, "exact:held-karp")
    if out.decomposition.width <= exact_width:
        npd = to_nice_decomposition(g, out.decomposition)
        return InstanceCheck(reference_pw_dp(g, npd, max_width=exact_width, max_n=g.n) > 0,
                             "exact:pairing-dp")
    found = solve_pw(g, out.decomposition, seed=seed, reps=reps, max_width=out.decomposition.width)
    return InstanceCheck(found, f"monte-carlo:reps={reps}")
