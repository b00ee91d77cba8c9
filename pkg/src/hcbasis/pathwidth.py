"""Hamiltonicity over a path decomposition with basis-indexed fingerprints.

A partial solution is a set of introduced edges in which every forgotten vertex
has degree 2, every bag vertex degree at most 2, and which has no cycle (except
the final Hamiltonian one). Its footprint on the bag is a degree labeling plus the
pairing ``M`` that its paths induce on the degree-1 vertices ``D``. Instead of
storing ``M``, a fingerprint stores for every basis member ``b`` of ``D`` the
parity of the number of partial solutions with ``HC[M, b] = 1``: ``T[b] = F(b)``
for the functional ``F(N) = sum_H HC[M_H, N]``. Since the basis spans the row
space, ``F(N) = sum_b T[b] HC[partner(b), N]`` for every matching ``N``; every
edge introduction is a pull-back ``T'[b'] = F(g(b'))`` for a simple map ``g``
from matchings on the new degree-1 set to matchings on the old one.

``D`` is kept in vertex order and mapped onto ``0..k-1`` order-preservingly, so
only edge introductions change the index space; the one that swaps a vertex for
another goes through :func:`hcbasis.matchings.change_basis_rows`.

Vectors hold GF(2)[z] polynomials (bit w: weight w), so one replay yields the
full per-weight parity profile used by isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .errors import BudgetError, ValidationError
from .gf2 import Gf2Vector
from .graph import (EventKind, Graph, NicePathDecomposition, PathDecomposition,
                    heuristic_decomposition, is_cubic, to_nice_decomposition)
from .matchings import basis_mates, basis_size, change_basis_rows, mates_hamiltonian, partner_index
from .parity import ParityProfile, isolation_rng, profile_from_poly, random_weights

DEFAULT_MAX_WIDTH = 16

Weights = Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class DegreeLabeling:
    """Degrees of the sorted bag vertices; ``closed`` marks the finished cycle."""

    bag: tuple[int, ...]
    labels: tuple[int, ...]
    closed: bool = False

    @property
    def degree_one(self) -> tuple[int, ...]:
        return tuple(v for v, d in zip(self.bag, self.labels) if d == 1)


@dataclass(frozen=True)
class FingerprintTable:
    """Bag plus ``{(labels, closed): [poly per basis member]}``; absent keys are zero."""

    bag: tuple[int, ...] = ()
    cells: Mapping[tuple[tuple[int, ...], bool], tuple[int, ...]] = field(
        default_factory=lambda: {((), False): (1,)})

    def entries(self) -> dict[tuple[DegreeLabeling, int], Gf2Vector]:
        """Spell the table out as ``(labeling, weight) -> Gf2Vector``."""
        out: dict[tuple[DegreeLabeling, int], Gf2Vector] = {}
        for (labels, closed), vec in self.cells.items():
            lab = DegreeLabeling(self.bag, labels, closed)
            weights = 0
            for p in vec:
                weights |= p
            while weights:
                low = weights & -weights
                w = low.bit_length() - 1
                bits = sum(((p >> w) & 1) << i for i, p in enumerate(vec))
                out[(lab, w)] = Gf2Vector(len(vec), bits)
                weights ^= low
        return out

    def cells_per_weight(self) -> dict[int, int]:
        """For each weight, the sum of vector lengths over labelings nonzero there."""
        out: dict[int, int] = {}
        for vec in self.cells.values():
            weights = 0
            for p in vec:
                weights |= p
            while weights:
                low = weights & -weights
                w = low.bit_length() - 1
                out[w] = out.get(w, 0) + len(vec)
                weights ^= low
        return out


def state_bound(bag_size: int) -> float:
    return (2 + math.sqrt(2)) ** bag_size


# --- basis pull-backs --------------------------------------------------------


def _apply(rows: tuple[int, ...], vec: tuple[int, ...]) -> list[int]:
    out = []
    for r in rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= vec[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return out


def _pullback_rows(k_src: int, images: list[tuple[int, ...] | None]) -> tuple[int, ...]:
    """Row b' selects the b with ``HC[partner(b), images[b']] = 1``."""
    mates = basis_mates(k_src)
    partners = [mates[partner_index(k_src, i)] for i in range(len(mates))]
    rows = []
    for img in images:
        if img is None:
            rows.append(0)
        else:
            rows.append(sum(1 << b for b, pm in enumerate(partners) if mates_hamiltonian(pm, img)))
    return tuple(rows)


@lru_cache(maxsize=None)
def _open_pair_rows(k: int, pu: int, pv: int) -> tuple[int, ...]:
    """Both endpoints were isolated: new path u-v, positions ``pu < pv`` among k+2."""
    keep = [i for i in range(k + 2) if i not in (pu, pv)]
    squeeze = {old: new for new, old in enumerate(keep)}
    images: list[tuple[int, ...] | None] = []
    for bm in basis_mates(k + 2):
        if bm[pu] == pv:
            # the union would contain the 2-cycle u-v unless nothing else is there
            images.append(() if k == 0 else None)
            continue
        m = list(bm)
        a, c = m[pu], m[pv]
        m[a], m[c] = c, a
        images.append(tuple(squeeze[m[i]] for i in keep))
    return _pullback_rows(k, images)


@lru_cache(maxsize=None)
def _join_rows(k: int, pu: int, pv: int) -> tuple[int, ...]:
    """Two path ends u, v (positions ``pu < pv`` among k) are joined by the edge."""
    keep = [i for i in range(k) if i not in (pu, pv)]
    images = []
    for bm in basis_mates(k - 2):
        m = [0] * k
        for j, i in enumerate(keep):
            m[i] = keep[bm[j]]
        m[pu], m[pv] = pv, pu
        images.append(tuple(m))
    return _pullback_rows(k, images)


@lru_cache(maxsize=None)
def _extend_rows(k: int, sigma: tuple[int, ...]) -> tuple[int, ...]:
    """A path end moves to a new vertex; ``sigma`` maps new positions to old ones.

    ``change_basis_rows`` works on coordinates ``f[b] = F(partner(b))``; translate.
    """
    coord_rows = change_basis_rows(k, sigma)
    out = []
    for b_new in range(basis_size(k)):
        r = coord_rows[partner_index(k, b_new)]
        mask = 0
        while r:
            low = r & -r
            mask |= 1 << partner_index(k, low.bit_length() - 1)
            r ^= low
        out.append(mask)
    return tuple(out)


# --- DP operations -----------------------------------------------------------


def dp_init() -> FingerprintTable:
    return FingerprintTable()


def dp_introduce_vertex(tbl: FingerprintTable, v: int) -> FingerprintTable:
    if v in tbl.bag:
        raise ValidationError(f"vertex {v} is already in the bag")
    bag = tuple(sorted(tbl.bag + (v,)))
    pos = bag.index(v)
    cells = {}
    for (labels, closed), vec in tbl.cells.items():
        if closed:
            continue  # a new vertex can never join the finished cycle
        cells[(labels[:pos] + (0,) + labels[pos:], closed)] = vec
    return FingerprintTable(bag, cells)


def _xor_into(acc: dict, key, vec) -> None:
    cur = acc.get(key)
    if cur is None:
        acc[key] = list(vec)
    else:
        for i, p in enumerate(vec):
            cur[i] ^= p


def dp_introduce_edge(tbl: FingerprintTable, u: int, v: int, w_uv: int = 0) -> FingerprintTable:
    """Add the choice of using edge u-v: ``tbl xor shift(tbl)``."""
    if u not in tbl.bag or v not in tbl.bag:
        raise ValidationError(f"edge endpoints {u}, {v} must both be in the bag")
    iu, iv = tbl.bag.index(u), tbl.bag.index(v)
    if iu > iv:
        iu, iv = iv, iu
    acc: dict = {}
    for key, vec in tbl.cells.items():
        _xor_into(acc, key, vec)
        labels, closed = key
        lu, lv = labels[iu], labels[iv]
        if closed or lu == 2 or lv == 2:
            continue
        new_labels = list(labels)
        new_labels[iu] += 1
        new_labels[iv] += 1
        new_labels = tuple(new_labels)
        old_d = [i for i, d in enumerate(labels) if d == 1]
        new_d = [i for i, d in enumerate(new_labels) if d == 1]
        k = len(old_d)
        new_closed = False
        if lu == 0 and lv == 0:
            rows = _open_pair_rows(k, new_d.index(iu), new_d.index(iv))
        elif lu == 1 and lv == 1:
            if k == 2:
                if 0 in new_labels:
                    continue  # closing now would strand a degree-0 bag vertex
                new_closed = True
            rows = _join_rows(k, old_d.index(iu), old_d.index(iv))
        else:
            gained, lost = (iu, iv) if lu == 0 else (iv, iu)
            old_pos = {b: j for j, b in enumerate(old_d)}
            sigma = tuple(old_pos[lost if i == gained else i] for i in new_d)
            rows = _extend_rows(k, sigma)
        out = _apply(rows, vec)
        if w_uv:
            out = [p << w_uv for p in out]
        _xor_into(acc, (new_labels, new_closed), out)
    cells = {key: tuple(vec) for key, vec in acc.items() if any(vec)}
    return FingerprintTable(tbl.bag, cells)


def dp_forget_vertex(tbl: FingerprintTable, v: int) -> FingerprintTable:
    if v not in tbl.bag:
        raise ValidationError(f"vertex {v} is not in the bag")
    pos = tbl.bag.index(v)
    bag = tbl.bag[:pos] + tbl.bag[pos + 1:]
    cells = {}
    for (labels, closed), vec in tbl.cells.items():
        if labels[pos] == 2:
            cells[(labels[:pos] + labels[pos + 1:], closed)] = vec
    return FingerprintTable(bag, cells)


def dp_finalize(tbl: FingerprintTable, g: Graph | None = None) -> ParityProfile:
    if tbl.bag:
        raise ValidationError("finalize needs an empty bag")
    vec = tbl.cells.get(((), True))
    return profile_from_poly(vec[0]) if vec else {}


@dataclass
class DpStats:
    events: int = 0
    max_bag: int = 0
    max_cells: int = 0
    bound_violations: int = 0


def pw_parity_profile(g: Graph, npd: NicePathDecomposition, weights: Weights | None = None,
                      stats: DpStats | None = None) -> ParityProfile:
    """Replay ``npd`` and return weight -> parity of Hamiltonian cycles of that weight."""
    if g.directed:
        raise ValidationError("the pathwidth DP handles undirected graphs")
    tbl = dp_init()
    for ev in npd.events:
        if ev.kind is EventKind.INTRODUCE_VERTEX:
            tbl = dp_introduce_vertex(tbl, ev.u)
        elif ev.kind is EventKind.FORGET_VERTEX:
            tbl = dp_forget_vertex(tbl, ev.u)
        else:
            e = (min(ev.u, ev.v), max(ev.u, ev.v))
            tbl = dp_introduce_edge(tbl, ev.u, ev.v, weights[e] if weights is not None else 0)
        if stats is not None:
            stats.events += 1
            stats.max_bag = max(stats.max_bag, len(tbl.bag))
            per_weight = tbl.cells_per_weight()
            peak = max(per_weight.values(), default=0)
            stats.max_cells = max(stats.max_cells, peak)
            if peak > state_bound(len(tbl.bag)):
                stats.bound_violations += 1
    if g.n < 3:
        return {}
    return dp_finalize(tbl, g)


def _prepare(g: Graph, pd: PathDecomposition | NicePathDecomposition | None,
             max_width: int) -> NicePathDecomposition:
    if g.directed:
        raise ValidationError("the pathwidth DP handles undirected graphs")
    if pd is None:
        pd = heuristic_decomposition(g)
    npd = pd if isinstance(pd, NicePathDecomposition) else to_nice_decomposition(g, pd)
    if npd.width > max_width:
        raise BudgetError(f"width {npd.width} exceeds the cap {max_width}; raise max_width to override")
    return npd


def solve_pw(g: Graph, pd: PathDecomposition | NicePathDecomposition | None = None, seed: int = 0,
             reps: int = 20, max_width: int = DEFAULT_MAX_WIDTH, w_max: int | None = None) -> bool:
    """Isolation-weighted replays, OR-folded; never True on a non-Hamiltonian graph."""
    npd = _prepare(g, pd, max_width)
    for rng in isolation_rng(seed, reps):
        if pw_parity_profile(g, npd, random_weights(g, rng, w_max).weights):
            return True
    return False


@dataclass(frozen=True)
class CubicResult:
    hamiltonian: bool
    width: int

    def __bool__(self) -> bool:
        return self.hamiltonian


def solve_cubic(g: Graph, pd: PathDecomposition | None = None, seed: int = 0, reps: int = 20,
                max_width: int = DEFAULT_MAX_WIDTH) -> CubicResult:
    """Pathwidth solver restricted to cubic graphs; reports the width actually used."""
    if not is_cubic(g):
        raise ValidationError("graph is not cubic")
    npd = _prepare(g, pd, max_width)
    return CubicResult(solve_pw(g, npd, seed, reps, max_width), npd.width)
