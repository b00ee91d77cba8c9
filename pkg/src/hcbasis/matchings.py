"""Perfect matchings of K_t, the matchings connectivity matrix HC_t and its basis.

The basis family is built by doubling. On ``t = 2`` it is the single matching
``{0,1}``. Going from ``t`` to ``t + 2`` adds vertices ``a = t`` and ``b = t + 1``
and extends every member ``M`` in two ways, recorded by one code bit:

* bit 0: ``M + {a, b}``;
* bit 1: the pair ``{x, t-1}`` of ``M`` is replaced by ``{x, a}`` and ``{t-1, b}``.

A code is the bit-string of these choices, first step first, so the family has
``2**(t/2 - 1)`` members and code order is integer order. Complementing every
bit gives the unique member whose union with the original is a Hamiltonian cycle,
so the induced submatrix of HC_t is a permutation matrix, and with the rank of
HC_t equal to the family size the family spans the column space. Consequently
``HC = HC[:, B] . P . HC[B, :]`` with ``P`` the partner permutation, which gives
closed-form basis coordinates: the coefficient of ``b`` in the column of ``M``
is ``HC[partner(b), M]``.

On ``t = 2`` the doubled edge counts as a Hamiltonian cycle (``HC_2 = [[1]]``),
and on ``t = 0`` the empty matching pairs with itself with value 1; the
pathwidth DP relies on both conventions.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .gf2 import Gf2Matrix, Gf2Vector

MAX_ENUM_T = 14
MAX_MATRIX_T = 12

Mate = tuple[int, ...]


@dataclass(frozen=True)
class PerfectMatching:
    t: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        covered = [v for p in pairs for v in p]
        if self.t % 2 or sorted(covered) != list(range(self.t)):
            raise ValueError(f"pairs {self.pairs} are not a perfect matching of K_{self.t}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_mate(cls, mate: Sequence[int]) -> "PerfectMatching":
        return cls(len(mate), tuple((v, w) for v, w in enumerate(mate) if v < w))

    @property
    def mate(self) -> Mate:
        out = [0] * self.t
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return tuple(out)

    def relabel(self, sigma: Sequence[int]) -> "PerfectMatching":
        return PerfectMatching(self.t, tuple((sigma[a], sigma[b]) for a, b in self.pairs))

    def __str__(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in self.pairs)


@dataclass(frozen=True)
class BasisIndex:
    t: int
    code: str

    def __post_init__(self):
        if self.t < 2 or self.t % 2:
            raise ValueError(f"t must be even and >= 2, got {self.t}")
        if len(self.code) != self.t // 2 - 1 or set(self.code) - {"0", "1"}:
            raise ValueError(f"code {self.code!r} is not a bit-string of length {self.t // 2 - 1}")

    @property
    def index(self) -> int:
        return int(self.code, 2) if self.code else 0

    @classmethod
    def from_index(cls, t: int, i: int) -> "BasisIndex":
        width = t // 2 - 1
        return cls(t, format(i, f"0{width}b") if width else "")

    def decode(self) -> PerfectMatching:
        return PerfectMatching.from_mate(basis_mates(self.t)[self.index])


@dataclass(frozen=True)
class HcMatrix:
    t: int
    matchings: tuple[PerfectMatching, ...]
    matrix: Gf2Matrix


def _check_t(t: int, cap: int, lo: int = 2) -> None:
    if t % 2 or not lo <= t <= cap:
        raise ValueError(f"t must be even with {lo} <= t <= {cap}, got {t}")


def matching_count(t: int) -> int:
    """(t-1)!!"""
    out = 1
    for x in range(t - 1, 0, -2):
        out *= x
    return out


def _enum_mates(t: int) -> list[Mate]:
    out: list[Mate] = []
    mate = [-1] * t

    def rec():
        try:
            a = mate.index(-1)
        except ValueError:
            out.append(tuple(mate))
            return
        for b in range(a + 1, t):
            if mate[b] < 0:
                mate[a], mate[b] = b, a
                rec()
                mate[a] = mate[b] = -1

    rec()
    return out


def enumerate_matchings(t: int) -> list[PerfectMatching]:
    """All perfect matchings of K_t in lexicographic order of their pair lists."""
    _check_t(t, MAX_ENUM_T)
    return [PerfectMatching.from_mate(m) for m in _enum_mates(t)]


def mates_hamiltonian(m1: Mate, m2: Mate) -> bool:
    """Whether two mate arrays on the same vertex set union to one cycle through all."""
    k = len(m1)
    if k <= 2:
        return True
    v, steps = 0, 0
    while True:
        v = m2[m1[v]]
        steps += 2
        if v == 0:
            return steps == k


def union_is_hamiltonian(m1: PerfectMatching, m2: PerfectMatching) -> bool:
    if m1.t != m2.t:
        raise ValueError(f"size mismatch: {m1.t} vs {m2.t}")
    return mates_hamiltonian(m1.mate, m2.mate)


def _hc_partner_mates(m1: Mate) -> Iterable[Mate]:
    """Every matching whose union with ``m1`` is a Hamiltonian cycle."""
    t = len(m1)
    if t == 2:
        yield m1
        return
    mate = [-1] * t

    def rec(v: int, visited: int):
        # v was reached through an m1 edge; it needs its other-side partner
        if visited == (1 << t) - 1:
            mate[v], mate[0] = 0, v
            yield tuple(mate)
            mate[v] = mate[0] = -1
            return
        for w in range(1, t):
            if not (visited >> w) & 1:
                mate[v], mate[w] = w, v
                x = m1[w]
                yield from rec(x, visited | (1 << w) | (1 << x))
                mate[v] = mate[w] = -1

    yield from rec(m1[0], 1 | (1 << m1[0]))


def _hc_rows(args) -> list[int]:
    t, lo, hi = args
    mates = _enum_mates(t)
    index = {m: i for i, m in enumerate(mates)}
    rows = []
    for m1 in mates[lo:hi]:
        r = 0
        for m2 in _hc_partner_mates(m1):
            r |= 1 << index[m2]
        rows.append(r)
    return rows


def build_hc_matrix(t: int, workers: int = 1) -> HcMatrix:
    """Materialise HC_t. Rows may be split over ``workers`` processes; output is identical."""
    _check_t(t, MAX_MATRIX_T)
    p = matching_count(t)
    if workers <= 1:
        rows = _hc_rows((t, 0, p))
    else:
        step = -(-p // workers)
        chunks = [(t, lo, min(p, lo + step)) for lo in range(0, p, step)]
        with ProcessPoolExecutor(workers) as pool:
            rows = [r for part in pool.map(_hc_rows, chunks) for r in part]
    return HcMatrix(t, tuple(enumerate_matchings(t)), Gf2Matrix(p, p, tuple(rows)))


@lru_cache(maxsize=None)
def basis_mates(t: int) -> tuple[Mate, ...]:
    """Basis members as mate arrays in code order; ``t = 0`` gives the empty matching."""
    if t == 0:
        return ((),)
    if t % 2 or t < 2:
        raise ValueError(f"t must be even, got {t}")
    fam: list[list[int]] = [[1, 0]]
    for s in range(2, t, 2):
        nxt = []
        for m in fam:
            plain = m + [s + 1, s]
            rerouted = m + [0, 0]
            x = m[s - 1]
            rerouted[x], rerouted[s] = s, x
            rerouted[s - 1], rerouted[s + 1] = s + 1, s - 1
            nxt += [plain, rerouted]
        fam = nxt
    return tuple(tuple(m) for m in fam)


def basis_size(t: int) -> int:
    return 1 if t <= 2 else 1 << (t // 2 - 1)


def partner_index(t: int, i: int) -> int:
    return (basis_size(t) - 1) ^ i


def generate_basis(t: int) -> list[tuple[BasisIndex, PerfectMatching]]:
    _check_t(t, 64)
    return [(BasisIndex.from_index(t, i), PerfectMatching.from_mate(m))
            for i, m in enumerate(basis_mates(t))]


def partner(b: BasisIndex) -> BasisIndex:
    return BasisIndex.from_index(b.t, partner_index(b.t, b.index))


def expand_in_basis(m: PerfectMatching) -> Gf2Vector:
    """Basis coordinates of the HC_t column of ``m``: bit b is ``HC[partner(b), m]``."""
    mates = basis_mates(m.t)
    mm = m.mate
    bits = 0
    for i in range(len(mates)):
        if mates_hamiltonian(mates[partner_index(m.t, i)], mm):
            bits |= 1 << i
    return Gf2Vector(len(mates), bits)


def factorize(t: int) -> tuple[Gf2Matrix, Gf2Matrix]:
    """``(L, R)`` with ``L R = HC_t``: rows of L are basis coordinates, R holds the basis rows."""
    _check_t(t, 10)
    mates = _enum_mates(t)
    left = tuple(expand_in_basis(PerfectMatching.from_mate(m)).bits for m in mates)
    right = tuple(sum(1 << j for j, m in enumerate(mates) if mates_hamiltonian(b, m))
                  for b in basis_mates(t))
    k = basis_size(t)
    return Gf2Matrix(len(mates), k, left), Gf2Matrix(k, len(mates), right)


def functional_value(coords: int, t: int, mate: Mate) -> int:
    """``sum_b coords[b] * HC[b, mate]`` for a functional given in basis coordinates."""
    mates = basis_mates(t)
    acc = 0
    while coords:
        low = coords & -coords
        acc ^= mates_hamiltonian(mates[low.bit_length() - 1], mate)
        coords ^= low
    return acc


def _check_sigma(sigma: Sequence[int], t: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(t)):
        raise ValueError(f"sigma {sigma} is not a bijection of 0..{t - 1}")
    return sigma


@lru_cache(maxsize=4096)
def change_basis_rows(t: int, sigma: tuple[int, ...]) -> tuple[int, ...]:
    """Row ``b0`` is the mask of input coordinates feeding output coordinate ``b0``."""
    mates = basis_mates(t)
    rows = []
    for i in range(len(mates)):
        pm = mates[partner_index(t, i)]
        image = [0] * t
        for v in range(t):
            image[sigma[v]] = sigma[pm[v]]
        image = tuple(image)
        rows.append(sum(1 << b for b, bm in enumerate(mates) if mates_hamiltonian(bm, image)))
    return tuple(rows)


def change_basis(f: Gf2Vector, sigma: Sequence[int]) -> Gf2Vector:
    """Coordinates of ``M -> <f, HC[B, sigma(M)]>`` in the same basis.

    Each output bit costs ``|B|`` Hamiltonicity checks on ``t`` vertices; nothing of
    size (t-1)!! is formed.
    """
    t = len(sigma)
    if t % 2 or f.len != basis_size(t):
        raise ValueError(f"vector of length {f.len} does not match a relabeling of {len(sigma)} vertices")
    rows = change_basis_rows(t, _check_sigma(sigma, t))
    return Gf2Vector(f.len, sum(((r & f.bits).bit_count() & 1) << i for i, r in enumerate(rows)))


def relabel_to_canonical(pairs: Iterable[tuple[int, int]]) -> tuple[PerfectMatching, tuple[int, ...]]:
    """Map a matching on any even vertex set to K_t by order-preserving relabeling."""
    pairs = list(pairs)
    verts = tuple(sorted(v for p in pairs for v in p))
    pos = {v: i for i, v in enumerate(verts)}
    return PerfectMatching(len(verts), tuple((pos[a], pos[b]) for a, b in pairs)), verts


def format_matchings(ms: Iterable[PerfectMatching]) -> str:
    return "".join(f"{m}\n" for m in ms)


def parse_matchings(text: str) -> list[PerfectMatching]:
    out = []
    for line in text.splitlines():
        if line.strip():
            pairs = [tuple(int(x) for x in tok.split("-")) for tok in line.split()]
            out.append(PerfectMatching(2 * len(pairs), tuple(pairs)))
    return out
