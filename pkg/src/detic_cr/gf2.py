"""Dense GF(2) vectors and matrices backed by Python int bitsets.

Component ``i`` of a vector (0-based here, "level 1" in the usual 1-based
picture) is bit ``i`` of the packed integer.  Component 0 is the most
significant level at a receiver.  A matrix stores one packed int per row,
with column ``j`` at bit ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exceptions import ParameterError


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class BitVector:
    """Binary vector of length ``len``; ``bits`` packs component i at bit i."""

    len: int
    bits: int = 0

    def __post_init__(self):
        if self.len < 0:
            raise ParameterError(f"negative vector length {self.len}")
        if self.bits < 0 or self.bits >> self.len:
            raise ParameterError("bits outside vector length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> "BitVector":
        bits = 0
        for i, v in enumerate(values):
            if v not in (0, 1):
                raise ParameterError(f"non-binary component {v!r}")
            bits |= v << i
        return cls(len(values), bits)

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        return cls.from_list([int(ch) for ch in s])

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    def tolist(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.len)]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.len:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.len != other.len:
            raise ParameterError(f"length mismatch {self.len} != {other.len}")
        return BitVector(self.len, self.bits ^ other.bits)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.len + other.len, self.bits | (other.bits << self.len))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.tolist())


@dataclass(frozen=True)
class BitMatrix:
    """Binary ``rows x cols`` matrix; ``data[i]`` packs row i."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ParameterError("negative matrix dimension")
        if len(self.data) != self.rows:
            raise ParameterError("row count does not match data")
        limit = 1 << self.cols
        if any(r < 0 or r >= limit for r in self.data):
            raise ParameterError("row entries outside column range")

    # -- construction -------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != cols:
                raise ParameterError("ragged rows")
            data.append(BitVector.from_list(r).bits)
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        """Build from packed column ints (bit i = row i)."""
        data = [0] * rows
        for j, c in enumerate(columns):
            if c < 0 or c >> rows:
                raise ParameterError("column entries outside row range")
            i = 0
            while c:
                if c & 1:
                    data[i] |= 1 << j
                c >>= 1
                i += 1
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def from_strings(cls, rows: Sequence[str], cols: int | None = None) -> "BitMatrix":
        return cls.from_rows([[int(ch) for ch in r] for r in rows], cols)

    # -- views --------------------------------------------------------
    def tolist(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def to_strings(self) -> list[str]:
        return ["".join(str(b) for b in row) for row in self.tolist()]

    def columns(self) -> list[int]:
        cols = [0] * self.cols
        for i, r in enumerate(self.data):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return cols

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, tuple(self.columns()))

    def is_zero(self) -> bool:
        return not any(self.data)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return (self.data[i] >> j) & 1

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return apply(self, other)
        return matmul(self, other)

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ParameterError("shape mismatch in XOR")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


@lru_cache(maxsize=None)
def shift_matrix(m: int, n: int) -> BitMatrix:
    """The m x m down-shift by ``m - n`` levels.

    Output component ``i`` equals input component ``i - (m - n)`` (0-based),
    so the top ``n`` input components land in the bottom ``n`` outputs.
    """
    if m < 0 or n < 0 or n > m:
        raise ParameterError(f"shift_matrix needs 0 <= n <= m, got m={m}, n={n}")
    s = m - n
    return BitMatrix(m, m, tuple(0 if i < s else 1 << (i - s) for i in range(m)))


def apply(mat: BitMatrix, v: BitVector) -> BitVector:
    """Matrix-vector product over GF(2)."""
    if mat.cols != v.len:
        raise ParameterError(f"cannot apply {mat.rows}x{mat.cols} matrix to length-{v.len} vector")
    bits = 0
    for i, r in enumerate(mat.data):
        if _parity(r & v.bits):
            bits |= 1 << i
    return BitVector(mat.rows, bits)


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise ParameterError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for r in a.data:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= b.data[j]
            r >>= 1
            j += 1
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def hstack(*mats: BitMatrix) -> BitMatrix:
    if not mats:
        raise ParameterError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ParameterError("hstack needs matching row counts")
    data = [0] * rows
    offset = 0
    for m in mats:
        for i, r in enumerate(m.data):
            data[i] |= r << offset
        offset += m.cols
    return BitMatrix(rows, offset, tuple(data))


def vstack(*mats: BitMatrix) -> BitMatrix:
    if not mats:
        raise ParameterError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ParameterError("vstack needs matching column counts")
    data: list[int] = []
    for m in mats:
        data.extend(m.data)
    return BitMatrix(len(data), cols, tuple(data))


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank of a set of packed vectors (rows or columns, either works)."""
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def rank(mat: BitMatrix) -> int:
    return rank_of_rows(mat.data)


def _rref(vectors: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed vectors, pivoting on the lowest bit first.

    Returns (nonzero rows in pivot order, pivot bit positions).
    """
    work = [v for v in vectors if v]
    out: list[int] = []
    pivots: list[int] = []
    while work:
        low = min((v & -v) for v in work)
        idx = next(i for i, v in enumerate(work) if v & low)
        piv = work.pop(idx)
        work = [v ^ piv if v & low else v for v in work]
        out = [v ^ piv if v & low else v for v in out]
        out.append(piv)
        pivots.append(low.bit_length() - 1)
        work = [v for v in work if v]
    return out, pivots


def stack_canonical_form(mat: BitMatrix) -> BitMatrix:
    """Reduced column echelon form; columns beyond the rank are zero.

    Two matrices get the same form iff they differ by right-multiplication
    with an invertible matrix, i.e. iff they have the same shape and the
    same column space.
    """
    basis, _ = _rref(mat.columns())
    cols = basis + [0] * (mat.cols - len(basis))
    return BitMatrix.from_columns(cols, mat.rows)


def solve(a: BitMatrix, y: BitVector) -> BitVector | None:
    """One solution x of ``a @ x = y``, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    if a.rows != y.len:
        raise ParameterError("solve: right-hand side length mismatch")
    n = a.cols
    # Augmented rows: coefficients in bits 0..n-1, rhs at bit n.
    work = [r | (((y.bits >> i) & 1) << n) for i, r in enumerate(a.data)]
    basis, pivots = _rref(work)
    x = 0
    for row, p in zip(basis, pivots):
        if p == n:
            return None
        if (row >> n) & 1:
            x |= 1 << p
    return BitVector(n, x)


class LinearSolver:
    """Precomputed ``solve`` for a fixed matrix, reusable across right-hand sides.

    Row-reducing ``[a | I]`` once records, for every pivot, which components
    of ``y`` sum to that unknown, and which sums must vanish for ``a x = y``
    to be consistent.
    """

    def __init__(self, a: BitMatrix):
        n = a.cols
        work = [r | (1 << (n + i)) for i, r in enumerate(a.data)]
        basis, pivots = _rref(work)
        self.cols = n
        self.rows = a.rows
        self._unknowns = [(p, row >> n) for row, p in zip(basis, pivots) if p < n]
        self._checks = [row >> n for row, p in zip(basis, pivots) if p >= n]

    def __call__(self, y: BitVector) -> BitVector | None:
        if y.len != self.rows:
            raise ParameterError("solve: right-hand side length mismatch")
        x = self.solve_bits(y.bits)
        return None if x is None else BitVector(self.cols, x)

    def solve_bits(self, y: int) -> int | None:
        """Packed-int version of the call, without length checks."""
        for c in self._checks:
            if (c & y).bit_count() & 1:
                return None
        x = 0
        for p, comb in self._unknowns:
            if (comb & y).bit_count() & 1:
                x |= 1 << p
        return x


def nullspace(a: BitMatrix) -> list[BitVector]:
    """Basis of ``{x : a @ x = 0}``."""
    n = a.cols
    basis, pivots = _rref(a.data)
    pivot_set = set(pivots)
    out = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = 1 << free
        for row, p in zip(basis, pivots):
            if (row >> free) & 1:
                x |= 1 << p
        out.append(BitVector(n, x))
    return out


def column_space_intersection(a: BitMatrix, b: BitMatrix) -> list[int]:
    """Basis (packed columns) of col(a) ∩ col(b), via the kernel of [a | b]."""
    if a.rows != b.rows:
        raise ParameterError("row count mismatch")
    ker = nullspace(hstack(a, b))
    vecs = []
    for x in ker:
        left = BitVector(a.cols, x.bits & _mask(a.cols))
        vecs.append(apply(a, left).bits)
    basis, _ = _rref(vecs)
    return basis
