"""Backend-dispatched dense matrix helpers.

Exact matrices are numpy object arrays holding ``fractions.Fraction``
entries; approximate ones are plain float64 arrays.  Functions here accept
either and dispatch on dtype.  Exact products walk nonzero entries only:
the generator matrices carry at most two entries per row, and a naive cubic
loop over a few-hundred-dimensional tensor space in Python-level Fraction
arithmetic would dominate the runtime of the whole suite.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_ZERO = Fraction(0)
_ONE = Fraction(1)


def zeros(rows: int, cols: int | None = None, exact: bool = True) -> np.ndarray:
    cols = rows if cols is None else cols
    if exact:
        return np.full((rows, cols), _ZERO, dtype=object)
    return np.zeros((rows, cols))


def eye(n: int, exact: bool = True) -> np.ndarray:
    if exact:
        out = np.full((n, n), _ZERO, dtype=object)
        for i in range(n):
            out[i, i] = _ONE
        return out
    return np.eye(n)


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def to_float(m: np.ndarray) -> np.ndarray:
    return m.astype(float) if m.dtype == object else m


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product; sparsity-aware Python loop for object dtype."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.dtype != object and b.dtype != object:
        return a @ b
    m, inner = a.shape
    inner_b, ncols = b.shape
    if inner != inner_b:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    b_rows = []
    for j in range(inner):
        row = b[j]
        b_rows.append([(t, row[t]) for t in range(ncols) if row[t]])
    out = np.full((m, ncols), _ZERO, dtype=object)
    for i in range(m):
        a_row = a[i]
        out_row = out[i]
        for j in range(inner):
            x = a_row[j]
            if x:
                for t, y in b_rows[j]:
                    out_row[t] = out_row[t] + x * y
    return out


def mat_chain(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m)
    return out


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return mat_mul(a, b) - mat_mul(b, a)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def kron_chain(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def max_abs(m: np.ndarray):
    """Largest entry magnitude; the residual measure used throughout."""
    m = np.asarray(m)
    if m.dtype != object:
        return float(np.max(np.abs(m))) if m.size else 0.0
    best = _ZERO
    for x in m.flat:
        ax = -x if x < 0 else x
        if ax > best:
            best = ax
    return best


def trace(m: np.ndarray):
    n = m.shape[0]
    if m.dtype != object:
        return float(np.trace(m))
    total = _ZERO
    for i in range(n):
        total += m[i, i]
    return total


def invert(m: np.ndarray) -> np.ndarray:
    """Matrix inverse: Gauss-Jordan over Fractions, LAPACK for floats."""
    if m.dtype != object:
        return np.linalg.inv(m)
    n = m.shape[0]
    work = m.copy()
    out = eye(n)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular over the rationals")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            out[[col, pivot]] = out[[pivot, col]]
        inv_p = 1 / work[col, col]
        work[col] = work[col] * inv_p
        out[col] = out[col] * inv_p
        for r in range(n):
            if r != col and work[r, col]:
                factor = work[r, col]
                work[r] = work[r] - factor * work[col]
                out[r] = out[r] - factor * out[col]
    return out


def exact_rank(m: np.ndarray) -> int:
    """Row-echelon rank over the rationals."""
    if m.dtype != object:
        raise TypeError("exact_rank needs an exact (object dtype) matrix")
    work = m.copy()
    rows, cols = work.shape
    rank = 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if work[r, col] != 0), None)
        if pivot is None:
            continue
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        work[row] = work[row] * (1 / work[row, col])
        for r in range(rows):
            if r != row and work[r, col]:
                work[r] = work[r] - work[r, col] * work[row]
        rank += 1
        row += 1
        if row == rows:
            break
    return rank
