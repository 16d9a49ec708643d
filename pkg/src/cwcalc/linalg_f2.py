"""Bit-packed linear algebra over F2.

Vectors are Python ints; bit ``i`` is the coordinate of basis element ``i``.
Reduced echelon forms use the lowest set bit of each row as its pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def bits(v: int) -> list[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def from_bits(indices) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def rref(vectors: Sequence[int]) -> list[int]:
    """Fully reduced echelon basis of the span, sorted by pivot."""
    basis: dict[int, int] = {}
    for v in vectors:
        for p, row in basis.items():
            if (v >> p) & 1:
                v ^= row
        if not v:
            continue
        p = low_bit(v)
        for q in list(basis):
            if (basis[q] >> p) & 1:
                basis[q] ^= v
        basis[p] = v
    return [basis[p] for p in sorted(basis)]


def rank(vectors: Sequence[int]) -> int:
    return len(rref(vectors))


def in_span(v: int, vectors: Sequence[int]) -> bool:
    return reduce_against(v, rref(vectors)) == 0


def reduce_against(v: int, echelon: Sequence[int]) -> int:
    for row in echelon:
        p = low_bit(row)
        if (v >> p) & 1:
            v ^= row
    return v


def same_span(a: Sequence[int], b: Sequence[int]) -> bool:
    return rref(a) == rref(b)


def solve(columns: Sequence[int], target: int) -> tuple[int | None, int]:
    """Find x with sum_{i in x} columns[i] = target.

    Returns ``(x, 0)`` on success and ``(None, residual)`` otherwise, where the
    residual is ``target`` reduced against the column space.
    """
    pivots: dict[int, tuple[int, int]] = {}
    for i, col in enumerate(columns):
        combo = 1 << i
        for p, (row, rc) in pivots.items():
            if (col >> p) & 1:
                col ^= row
                combo ^= rc
        if col:
            p = low_bit(col)
            for q in list(pivots):
                row, rc = pivots[q]
                if (row >> p) & 1:
                    pivots[q] = (row ^ col, rc ^ combo)
            pivots[p] = (col, combo)
    x = 0
    residual = target
    for p, (row, rc) in pivots.items():
        if (residual >> p) & 1:
            residual ^= row
            x ^= rc
    if residual:
        return None, residual
    return x, 0


def nullspace(columns: Sequence[int], nrows: int) -> list[int]:
    """Canonical basis of {x : sum_{i in x} columns[i] = 0}, bits over columns."""
    ncols = len(columns)
    rows = []
    for r in range(nrows):
        v = 0
        for c, col in enumerate(columns):
            if (col >> r) & 1:
                v |= 1 << c
        rows.append(v)
    ech = rref(rows)
    pivot_of = {low_bit(row): row for row in ech}
    kernel = []
    for f in range(ncols):
        if f in pivot_of:
            continue
        v = 1 << f
        for p, row in pivot_of.items():
            if (row >> f) & 1:
                v |= 1 << p
        kernel.append(v)
    return rref(kernel)


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over F2 stored by columns, with basis labels on both sides."""

    row_labels: tuple
    col_labels: tuple
    columns: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def entry(self, r: int, c: int) -> int:
        return (self.columns[c] >> r) & 1

    def to_lists(self) -> list[list[int]]:
        nr, nc = self.shape
        return [[self.entry(r, c) for c in range(nc)] for r in range(nr)]

    def rank(self) -> int:
        return rank(self.columns)

    def kernel(self) -> list[int]:
        return nullspace(self.columns, len(self.row_labels))

    def image(self) -> list[int]:
        return rref(self.columns)

    def apply(self, x: int) -> int:
        out = 0
        for c in bits(x):
            out ^= self.columns[c]
        return out

    def solve(self, target: int) -> tuple[int | None, int]:
        return solve(self.columns, target)

    def compose(self, other: "F2Matrix") -> "F2Matrix":
        """self after other."""
        if other.row_labels != self.col_labels:
            raise ValueError("incompatible matrices")
        return F2Matrix(self.row_labels, other.col_labels, tuple(self.apply(c) for c in other.columns))

    def is_zero(self) -> bool:
        return not any(self.columns)
