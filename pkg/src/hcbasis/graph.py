"""Graphs, path decompositions and CNF formulas: data model, file formats, validation.

Vertices are 0-based everywhere inside the package. The PACE ``.gr``/``.td`` and
DIMACS CNF formats are 1-based; conversion happens only in the parse/serialize
functions of this module.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError, ValidationError

Edge = tuple[int, int]


class GraphFormat(str, Enum):
    PACE_GR = "gr"
    EDGE_LIST = "edgelist"


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``.

    Undirected edges are stored as ``(min, max)``; directed arcs as ``(tail, head)``.
    """

    n: int
    edges: frozenset[Edge] = frozenset()
    directed: bool = False
    bipartition: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"negative vertex count {self.n}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((u, v) if self.directed or u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.bipartition is not None:
            a, b = (frozenset(p) for p in self.bipartition)
            if a & b or (a | b) != frozenset(range(self.n)):
                raise ValidationError("bipartition must split the vertex set")
            for u, v in self.edges:
                if (u in a) == (v in a):
                    raise ValidationError(f"edge ({u}, {v}) does not cross the bipartition")
            object.__setattr__(self, "bipartition", (a, b))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], directed: bool = False) -> "Graph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges), directed)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Neighbours in the underlying undirected graph."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def out_neighbors(self) -> tuple[frozenset[int], ...]:
        if not self.directed:
            return self.adjacency
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if self.directed:
            return (u, v) in self.edges
        return (min(u, v), max(u, v)) in self.edges


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1


class EventKind(str, Enum):
    INTRODUCE_VERTEX = "introduce_vertex"
    INTRODUCE_EDGE = "introduce_edge"
    FORGET_VERTEX = "forget_vertex"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    u: int
    v: int = -1


@dataclass(frozen=True)
class NicePathDecomposition:
    events: tuple[Event, ...]
    width: int

    def replay(self):
        """Yield ``(event, bag)`` with the bag as it is *after* the event."""
        bag: set[int] = set()
        for ev in self.events:
            if ev.kind is EventKind.INTRODUCE_VERTEX:
                bag.add(ev.u)
            elif ev.kind is EventKind.FORGET_VERTEX:
                bag.discard(ev.u)
            yield ev, frozenset(bag)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(x) for x in c) for c in self.clauses))
        for c in self.clauses:
            if not c:
                raise ValidationError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValidationError(f"literal {lit} out of range for {self.num_vars} variables")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


# --- parsing -----------------------------------------------------------------


def _ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line.split()


def _check_edge(u: int, v: int, n: int, lineno: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(f"vertex id out of range in edge {u} {v}", lineno)
    if u == v:
        raise ParseError(f"self-loop at vertex {u}", lineno)


def parse_graph(text: str, format: GraphFormat | str = GraphFormat.PACE_GR) -> Graph:
    """Parse a PACE ``.gr`` (1-based) or plain edge-list (0-based) graph.

    The edge-list header is ``n`` or ``n directed``. Duplicate edges collapse.
    """
    fmt = GraphFormat(format)
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing header", 1)
    lineno, head = lines[0]
    directed = False
    if fmt is GraphFormat.PACE_GR:
        if len(head) != 4 or head[0] != "p" or head[1] != "tw":
            raise ParseError("expected header 'p tw <n> <m>'", lineno)
        n, _m = _ints(head[2:], lineno)
        offset = 1
    else:
        if len(head) not in (1, 2) or (len(head) == 2 and head[1] != "directed"):
            raise ParseError("expected header '<n>' or '<n> directed'", lineno)
        (n,) = _ints(head[:1], lineno)
        directed = len(head) == 2
        offset = 0
    if n < 0:
        raise ParseError("negative vertex count", lineno)
    edges = set()
    for lineno, parts in lines[1:]:
        if len(parts) != 2:
            raise ParseError("expected an edge line 'u v'", lineno)
        u, v = (x - offset for x in _ints(parts, lineno))
        _check_edge(u, v, n, lineno)
        edges.add((u, v) if directed else (min(u, v), max(u, v)))
    return Graph(n, frozenset(edges), directed)


def serialize_graph(g: Graph, format: GraphFormat | str = GraphFormat.PACE_GR) -> str:
    fmt = GraphFormat(format)
    if fmt is GraphFormat.PACE_GR:
        if g.directed:
            raise ValidationError("PACE .gr holds undirected graphs only; use the edge-list format")
        lines = [f"p tw {g.n} {g.m}"] + [f"{u + 1} {v + 1}" for u, v in g.sorted_edges]
    else:
        lines = [f"{g.n} directed" if g.directed else str(g.n)]
        lines += [f"{u} {v}" for u, v in g.sorted_edges]
    return "\n".join(lines) + "\n"


def parse_path_decomposition(text: str) -> PathDecomposition:
    """Parse PACE ``.td`` text whose decomposition tree is a path."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges: list[tuple[int, int]] = []
    for lineno, parts in _content_lines(text):
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("expected 's td <bags> <maxbag> <n>'", lineno)
            header = _ints(parts[2:], lineno)
        elif parts[0] == "b":
            if header is None:
                raise ParseError("bag line before 's td' header", lineno)
            ids = _ints(parts[1:], lineno)
            if not ids:
                raise ParseError("bag line without id", lineno)
            bid, verts = ids[0], ids[1:]
            if not 1 <= bid <= header[0]:
                raise ParseError(f"bag id {bid} out of range", lineno)
            if any(not 1 <= v <= header[2] for v in verts):
                raise ParseError("vertex id out of range in bag", lineno)
            bags[bid] = frozenset(v - 1 for v in verts)
        else:
            if header is None:
                raise ParseError("tree edge before 's td' header", lineno)
            ids = _ints(parts, lineno)
            if len(ids) != 2:
                raise ParseError("expected a tree edge 'i j'", lineno)
            tree_edges.append((ids[0], ids[1]))
    if header is None:
        raise ParseError("missing 's td' header", 1)
    nbags = header[0]
    if set(bags) != set(range(1, nbags + 1)):
        raise ParseError(f"expected bags 1..{nbags}")
    if nbags == 0:
        return PathDecomposition(())
    nbr: dict[int, list[int]] = {b: [] for b in bags}
    for a, b in tree_edges:
        if a not in nbr or b not in nbr:
            raise ParseError(f"tree edge {a} {b} names an unknown bag")
        nbr[a].append(b)
        nbr[b].append(a)
    if len(tree_edges) != nbags - 1 or any(len(x) > 2 for x in nbr.values()):
        raise ValidationError("not a path decomposition")
    ends = sorted(b for b, x in nbr.items() if len(x) <= 1)
    order = [ends[0]]
    prev = None
    while len(order) < nbags:
        nxt = [b for b in nbr[order[-1]] if b != prev]
        if not nxt:
            raise ValidationError("not a path decomposition")
        prev = order[-1]
        order.append(nxt[0])
    if len(set(order)) != nbags:
        raise ValidationError("not a path decomposition")
    return PathDecomposition(tuple(bags[b] for b in order))


def serialize_path_decomposition(pd: PathDecomposition, n: int) -> str:
    size = max((len(b) for b in pd.bags), default=0)
    lines = [f"s td {len(pd.bags)} {size} {n}"]
    for i, bag in enumerate(pd.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{i} {i + 1}" for i in range(1, len(pd.bags))]
    return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF. Clauses may span lines; each ends with ``0``."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, parts in _content_lines(text):
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf" or header is not None:
                raise ParseError("expected a single header 'p cnf <vars> <clauses>'", lineno)
            header = _ints(parts[2:], lineno)
            continue
        if parts[0] == "%":  # SATLIB trailer
            break
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno)
        for lit in _ints(parts, lineno):
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} out of range for {header[0]} variables", lineno)
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", 1)
    if current:
        clauses.append(tuple(current))
    return CnfFormula(header[0], tuple(clauses))


def serialize_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


# --- decompositions ----------------------------------------------------------


def validate_decomposition(g: Graph, pd: PathDecomposition) -> int:
    """Return the width of ``pd`` if it is a valid path decomposition of ``g``."""
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise ValidationError(f"bag {i} holds unknown vertex {v}")
            if v in last and last[v] != i - 1:
                raise ValidationError(f"vertex {v} occurs in a non-contiguous run of bags")
            first.setdefault(v, i)
            last[v] = i
    for v in range(g.n):
        if v not in first:
            raise ValidationError(f"vertex {v} is missing from every bag")
    for u, v in g.sorted_edges:
        lo, hi = max(first[u], first[v]), min(last[u], last[v])
        if lo > hi:
            raise ValidationError(f"edge {{{u}, {v}}} is not covered by any bag")
    return pd.width if g.n else max(pd.width, 0)


def to_nice_decomposition(g: Graph, pd: PathDecomposition) -> NicePathDecomposition:
    width = validate_decomposition(g, pd)
    last: dict[int, int] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            last[v] = i
    edges_at: dict[int, list[Edge]] = {}
    for u, v in g.sorted_edges:
        edges_at.setdefault(min(last[u], last[v]), []).append((u, v))
    events: list[Event] = []
    prev: frozenset[int] = frozenset()
    for i, bag in enumerate(pd.bags):
        events += [Event(EventKind.FORGET_VERTEX, v) for v in sorted(prev - bag)]
        events += [Event(EventKind.INTRODUCE_VERTEX, v) for v in sorted(bag - prev)]
        events += [Event(EventKind.INTRODUCE_EDGE, u, v) for u, v in edges_at.get(i, [])]
        prev = bag
    events += [Event(EventKind.FORGET_VERTEX, v) for v in sorted(prev)]
    return NicePathDecomposition(tuple(events), width)


def layout_decomposition(g: Graph, order: Sequence[int]) -> PathDecomposition:
    """Path decomposition induced by a linear vertex layout (vertex separation)."""
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(g.n)):
        raise ValidationError("layout must list every vertex exactly once")
    reach = [max([pos[v]] + [pos[u] for u in g.adjacency[v]]) for v in range(g.n)]
    bags = []
    active: set[int] = set()
    for i, v in enumerate(order):
        active = {u for u in active if reach[u] >= i}
        active.add(v)
        bags.append(frozenset(active))
    return PathDecomposition(tuple(bags))


def min_degree_order(g: Graph) -> list[int]:
    """Greedy minimum-degree elimination order (ties by smallest id)."""
    adj = [set(a) for a in g.adjacency]
    heap = [(len(adj[v]), v) for v in range(g.n)]
    heapq.heapify(heap)
    done = [False] * g.n
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if done[v] or d != len(adj[v]):
            continue
        done[v] = True
        order.append(v)
        nbrs = adj[v]
        for a in nbrs:
            adj[a].discard(v)
            adj[a] |= nbrs - {a}
        for a in nbrs:
            heapq.heappush(heap, (len(adj[a]), a))
    return order


def heuristic_decomposition(g: Graph) -> PathDecomposition:
    """Best-effort decomposition: min-degree elimination order used as a layout."""
    if g.n == 0:
        return PathDecomposition(())
    return layout_decomposition(g, min_degree_order(g))


# --- generators and checks ---------------------------------------------------


def random_graph(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    draws = rng.random(len(pairs))
    return Graph(n, frozenset(e for e, x in zip(pairs, draws) if x < p))


def check_directed_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """Two-colour the underlying undirected graph; lexicographically least colouring."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    raise ValidationError("not bipartite")
    return (frozenset(v for v in range(g.n) if color[v] == 0),
            frozenset(v for v in range(g.n) if color[v] == 1))


def with_bipartition(g: Graph) -> Graph:
    return Graph(g.n, g.edges, g.directed, check_directed_bipartite(g))


def is_cubic(g: Graph) -> bool:
    return not g.directed and all(len(a) == 3 for a in g.adjacency)


def is_hamiltonian_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """Definitional check that ``cycle`` visits every vertex once along edges of ``g``."""
    if len(cycle) != g.n or sorted(cycle) != list(range(g.n)) or g.n < (2 if g.directed else 3):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


# Named graphs used in tests, docs and the CLI.

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_bipartite_digraph(a: int, b: int, p: float, seed: int) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``; each cross pair gets each arc direction with prob. p."""
    rng = np.random.default_rng(seed)
    arcs = []
    for u in range(a):
        for v in range(a, a + b):
            fwd, back = rng.random(2)
            if fwd < p:
                arcs.append((u, v))
            if back < p:
                arcs.append((v, u))
    left = frozenset(range(a))
    return Graph(a + b, frozenset(arcs), True, (left, frozenset(range(a, a + b))))


def random_cubic_graph(n: int, seed: int, max_tries: int = 1000) -> Graph:
    """Uniform-ish simple cubic graph by the pairing model with rejection."""
    if n % 2 or n < 4:
        raise ValueError(f"cubic graphs need an even n >= 4, got {n}")
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), 3)
    for _ in range(max_tries):
        rng.shuffle(points)
        pairs = {(int(min(u, v)), int(max(u, v))) for u, v in points.reshape(-1, 2)}
        if len(pairs) == 3 * n // 2 and all(u != v for u, v in pairs):
            return Graph(n, frozenset(pairs))
    raise RuntimeError(f"no simple cubic graph on {n} vertices after {max_tries} tries")
