"""Smith normal form over the integers, with unimodular transforms.

Matrices are lists of rows of Python ints; every step is exact.
"""

from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(r == c) for c in range(n)] for r in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[r][t] * b[t][c] for t in range(len(b))) for c in range(cols)] for r in range(len(a))]


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(a: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U * A * V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with non-negative
    entries ``d1 | d2 | ...``.  The pivot is always the entry of smallest
    non-zero absolute value in the remaining block.  ``ncols`` gives the
    width when ``a`` has no rows.
    """
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    d = [list(map(int, row)) for row in a]
    if any(len(row) != cols for row in d):
        raise ValueError("ragged matrix")
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, d, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // piv))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // piv))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def invariant_factors(a: Matrix) -> list[int]:
    """Diagonal of the Smith form, trailing zeros included up to min(shape)."""
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
