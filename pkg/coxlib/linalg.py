"""Exact dense linear algebra over AlgNumber.

Matrices are tuples of row tuples (hashable, immutable). All routines are
exact; nothing here converts to float.
"""

from __future__ import annotations

from collections.abc import Sequence

from coxlib.numfield import AlgNumber, FieldSpec

Matrix = tuple[tuple[AlgNumber, ...], ...]
Vector = tuple[AlgNumber, ...]


def as_matrix(rows: Sequence[Sequence[AlgNumber]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def identity(n: int, spec: FieldSpec) -> Matrix:
    one, zero = spec.one(), spec.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int, spec: FieldSpec) -> Matrix:
    zero = spec.zero()
    return tuple((zero,) * cols for _ in range(rows))


def diagonal(values: Sequence[AlgNumber], spec: FieldSpec) -> Matrix:
    zero = spec.zero()
    n = len(values)
    return tuple(tuple(values[i] if i == j else zero for j in range(n)) for i in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m, strict=True)) if m else ()


def mat_mul(a: Matrix, b: Matrix, spec: FieldSpec) -> Matrix:
    cols = transpose(b)
    zero = spec.zero()
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col, strict=True):
                if not x.is_zero and not y.is_zero:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_pow(m: Matrix, k: int, spec: FieldSpec) -> Matrix:
    """``m**k`` for ``k >= 0`` by repeated squaring."""
    result = identity(len(m), spec)
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base, spec)
        base = mat_mul(base, base, spec)
        k >>= 1
    return result


def trace(m: Matrix, spec: FieldSpec) -> AlgNumber:
    acc = spec.zero()
    for i, row in enumerate(m):
        acc = acc + row[i]
    return acc


def principal_submatrix(m: Matrix, indices: Sequence[int]) -> Matrix:
    return tuple(tuple(m[i][j] for j in indices) for i in indices)


def determinant(m: Matrix, spec: FieldSpec) -> AlgNumber:
    """Bareiss fraction-free elimination with row pivoting."""
    n = len(m)
    if n == 0:
        return spec.one()
    work = [list(row) for row in m]
    negate = False
    prev = spec.one()
    for k in range(n - 1):
        if work[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not work[i][k].is_zero), None)
            if swap is None:
                return spec.zero()
            work[k], work[swap] = work[swap], work[k]
            negate = not negate
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) / prev
        prev = pivot
    det = work[n - 1][n - 1]
    return -det if negate else det


def row_echelon(m: Matrix, spec: FieldSpec) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan)."""
    rows = [list(r) for r in m]
    if not rows:
        return (), ()
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if not rows[i][c].is_zero), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = spec.one() / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and not rows[i][c].is_zero:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r], strict=True)]
        pivots.append(c)
        r += 1
    return as_matrix(rows), tuple(pivots)


def rank(m: Matrix, spec: FieldSpec) -> int:
    return len(row_echelon(m, spec)[1])


def inverse(m: Matrix, spec: FieldSpec) -> Matrix:
    """Exact inverse; ``ZeroDivisionError`` for singular input."""
    n = len(m)
    augmented = tuple(row + ident for row, ident in zip(m, identity(n, spec), strict=True))
    reduced, pivots = row_echelon(augmented, spec)
    if pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n:] for row in reduced)


def conjugate_by_diagonal(m: Matrix, d: Sequence[AlgNumber]) -> Matrix:
    """``D·M·D⁻¹`` for ``D = diag(d)``: entry (i, j) becomes d_i·m_ij/d_j."""
    return tuple(
        tuple(x if x.is_zero else d[i] * x / d[j] for j, x in enumerate(row))
        for i, row in enumerate(m)
    )
