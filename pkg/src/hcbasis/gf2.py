"""Dense GF(2) linear algebra on int-packed rows.

Row ``i`` of a matrix is a Python int whose bit ``j`` is entry ``(i, j)``; a vector
is one such int. Python ints give word-level parallelism for XOR and popcount
without a fixed word size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError


@dataclass(frozen=True)
class Gf2Vector:
    len: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> self.len:
            raise ValueError("padding bits must be zero")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "Gf2Vector":
        return cls(len(values), sum((int(x) & 1) << i for i, x in enumerate(values)))

    @classmethod
    def unit(cls, length: int, i: int) -> "Gf2Vector":
        return cls(length, 1 << i)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.len:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.len)]

    def dot(self, other: "Gf2Vector") -> int:
        return (self.bits & other.bits).bit_count() & 1

    def __xor__(self, other: "Gf2Vector") -> "Gf2Vector":
        if self.len != other.len:
            raise ValueError("length mismatch")
        return Gf2Vector(self.len, self.bits ^ other.bits)


@dataclass(frozen=True)
class Gf2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        data = tuple(self.data)
        if len(data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(data)}")
        if any(r >> self.cols for r in data):
            raise ValueError("padding bits must be zero")
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(Gf2Vector.from_list(r).bits for r in rows))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.cols, self.data[i])

    def column(self, j: int) -> Gf2Vector:
        return Gf2Vector(self.rows, sum(((r >> j) & 1) << i for i, r in enumerate(self.data)))

    def transpose(self) -> "Gf2Matrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return Gf2Matrix(self.cols, self.rows, tuple(out))

    def submatrix(self, rows: Iterable[int], cols: Sequence[int]) -> "Gf2Matrix":
        rows = list(rows)
        data = tuple(sum(((self.data[i] >> j) & 1) << k for k, j in enumerate(cols)) for i in rows)
        return Gf2Matrix(len(rows), len(cols), data)

    def matvec(self, x: Gf2Vector) -> Gf2Vector:
        if x.len != self.cols:
            raise ValueError("dimension mismatch")
        return Gf2Vector(self.rows, sum(((r & x.bits).bit_count() & 1) << i for i, r in enumerate(self.data)))

    def to_hex(self) -> str:
        """Dump as ``rows cols`` header plus one hex-packed row per line (bit j = column j)."""
        width = max(1, (self.cols + 3) // 4)
        lines = [f"{self.rows} {self.cols}"] + [f"{r:0{width}x}" for r in self.data]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_hex(cls, text: str) -> "Gf2Matrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("missing dimension header", 1)
        try:
            rows, cols = (int(x) for x in lines[0].split())
            data = tuple(int(ln, 16) for ln in lines[1:])
        except ValueError as exc:
            raise ParseError(f"malformed hex matrix: {exc}") from None
        return cls(rows, cols, data)


def rank(m: Gf2Matrix) -> int:
    """GF(2) rank by elimination keyed on the highest set bit."""
    pivots: dict[int, int] = {}
    for r in m.data:
        while r:
            h = r.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = r
                break
            r ^= p
    return len(pivots)


def solve(a: Gf2Matrix, b: Gf2Vector) -> Gf2Vector | None:
    """Some ``x`` with ``a x = b``, free variables 0, pivots chosen leftmost column first."""
    if a.rows != b.len:
        raise ValueError("a.rows must equal b.len")
    n = a.cols
    # augmented rows: column bits, plus bit n for the right-hand side
    work = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(a.data)]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        sel = next((i for i in range(row, len(work)) if (work[i] >> col) & 1), None)
        if sel is None:
            continue
        work[row], work[sel] = work[sel], work[row]
        pr = work[row]
        for i in range(len(work)):
            if i != row and (work[i] >> col) & 1:
                work[i] ^= pr
        pivot_cols.append(col)
        row += 1
    if any(w == 1 << n for w in work[row:]):
        return None
    x = 0
    for i, col in enumerate(pivot_cols):
        if (work[i] >> n) & 1:
            x |= 1 << col
    return Gf2Vector(n, x)


def multiply(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    out = []
    for r in a.data:
        acc = 0
        while r:
            low = r & -r
            acc ^= b.data[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return Gf2Matrix(a.rows, b.cols, tuple(out))


def is_permutation_matrix(m: Gf2Matrix) -> bool:
    if m.rows != m.cols:
        raise ValueError("matrix must be square")
    if any(r.bit_count() != 1 for r in m.data):
        return False
    seen = 0
    for r in m.data:
        seen |= r
    return seen == (1 << m.cols) - 1
