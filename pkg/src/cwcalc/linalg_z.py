"""Exact integer lattice algebra: Hermite and Smith normal forms."""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(rows: Matrix) -> Matrix:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above a pivot lie
    in ``[0, pivot)``.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    work = [list(r) for r in rows if any(r)]
    out: Matrix = []
    for col in range(ncols):
        nz = [r for r in work if r[col] != 0]
        if not nz:
            continue
        rest = [r for r in work if r[col] == 0]
        pivot = nz[0]
        for r in nz[1:]:
            g, x, y = _xgcd(pivot[col], r[col])
            a, b = pivot[col] // g, r[col] // g
            new_pivot = [x * p + y * q for p, q in zip(pivot, r)]
            other = [b * p - a * q for p, q in zip(pivot, r)]
            pivot = new_pivot
            if any(other):
                rest.append(other)
        if pivot[col] < 0:
            pivot = [-v for v in pivot]
        out.append(pivot)
        work = rest
    # reduce entries above each pivot
    for i, row in enumerate(out):
        col = next(c for c, v in enumerate(row) if v)
        p = row[col]
        for k in range(i):
            q = out[k][col] // p
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], row)]
    return out


def rank(rows: Matrix) -> int:
    return len(hnf(rows))


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal; ``V_inv`` is the inverse of V."""

    diagonal: list[int]
    U: Matrix
    V: Matrix
    V_inv: Matrix
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def _identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith(A: Matrix, ncols: int | None = None, transforms: bool = True) -> SmithForm:
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    M = [list(r) for r in A]
    U = _identity(m) if transforms else []
    V = _identity(n) if transforms else []
    Vi = _identity(n) if transforms else []

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if transforms:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_combo(i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj), determinant +-1
        for T in ((M, U) if transforms else (M,)):
            ri, rj = T[i], T[j]
            T[i] = [a * x + b * y for x, y in zip(ri, rj)]
            T[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_combo(i, j, a, b, c, d):
        # cols (i, j) <- (a*ci + b*cj, c*ci + d*cj)
        for T in ((M, V) if transforms else (M,)):
            for row in T:
                x, y = row[i], row[j]
                if x or y:
                    row[i], row[j] = a * x + b * y, c * x + d * y
        if not transforms:
            return
        # inverse acts on rows of Vi
        det = a * d - b * c
        ai, bi, ci, di = d * det, -c * det, -b * det, a * det
        ri, rj = Vi[i], Vi[j]
        Vi[i] = [ai * x + bi * y for x, y in zip(ri, rj)]
        Vi[j] = [ci * x + di * y for x, y in zip(ri, rj)]

    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry in the remaining block as pivot
        best = None
        for j in range(t, n):
            for i in range(t, m):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
                    if abs(M[i][j]) == 1:
                        break
            if best is not None and abs(M[best[0]][best[1]]) == 1:
                break
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if M[i][t] and M[i][t] % M[t][t] == 0:
                    row_combo(t, i, 1, 0, -(M[i][t] // M[t][t]), 1)
                elif M[i][t]:
                    g, x, y = _xgcd(M[t][t], M[i][t])
                    a, b = M[t][t] // g, M[i][t] // g
                    row_combo(t, i, x, y, -b, a)
            for j in range(t + 1, n):
                if M[t][j] and M[t][j] % M[t][t] == 0:
                    col_combo(t, j, 1, 0, -(M[t][j] // M[t][t]), 1)
                elif M[t][j]:
                    g, x, y = _xgcd(M[t][t], M[t][j])
                    a, b = M[t][t] // g, M[t][j] // g
                    col_combo(t, j, x, y, -b, a)
                    done = False
            if done and abs(M[t][t]) != 1:
                p = M[t][t]
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                    None,
                )
                if bad is not None:
                    # fold the offending row into the pivot row, then repeat
                    row_combo(t, bad[0], 1, 1, 0, 1)
                    done = False
        if M[t][t] < 0:
            M[t] = [-v for v in M[t]]
            if transforms:
                U[t] = [-v for v in U[t]]
        t += 1
    diag = [M[i][i] for i in range(min(m, n))]
    return SmithForm(diag, U, V, Vi, (m, n))


def invariant_factors(A: Matrix) -> list[int]:
    if not A or not A[0]:
        return []
    return smith(A, transforms=False).invariant_factors


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def solve_triangular_rows(basis: Matrix, v: list[int]) -> list[int] | None:
    """Coordinates of ``v`` in the row-HNF ``basis``, or None if not in the lattice."""
    coeffs = []
    v = list(v)
    for row in basis:
        col = next(c for c, x in enumerate(row) if x)
        if v[col] % row[col]:
            return None
        q = v[col] // row[col]
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs
