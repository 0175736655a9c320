"""Exact linear algebra over finite fields.

Matrices are plain lists of rows of field elements.  The reduction core
runs on an int64 numpy tensor of shape (rows, cols, k) whenever the
characteristic is small enough for overflow-free accumulation; the result
is the canonical reduced row echelon form either way, so every derived
object (rank, kernel basis, complement basis) is deterministic.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .gf import Elem, ExactAlgError, Field

Vec = list
Mat = list

# k * p^2 must stay far below 2^63 for the vectorized path
_NP_MAX_P = 1 << 20


def _to_tensor(K: Field, M: Sequence[Sequence[Elem]]) -> np.ndarray:
    return np.array([[list(e) for e in row] for row in M], dtype=np.int64)


def _from_tensor(K: Field, T: np.ndarray) -> Mat:
    return [[tuple(int(x) for x in e) for e in row] for row in T]


def _np_red_matrix(K: Field) -> np.ndarray:
    # rows for t^k .. t^(2k-2) reduced mod the field modulus
    if K.k == 1:
        return np.zeros((0, 1), dtype=np.int64)
    return np.array([list(r) for r in K._red], dtype=np.int64)


def _np_rref(K: Field, T: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """In-place Gauss-Jordan to reduced row echelon form; returns pivots."""
    p = K.p
    k = K.k
    nrows, ncols = T.shape[0], T.shape[1]
    red = _np_red_matrix(K)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        sub = T[r:, col, :]
        nz = np.nonzero(sub.any(axis=1))[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            T[[r, i]] = T[[i, r]]
        piv = tuple(int(x) for x in T[r, col])
        inv = K.inv(piv)
        # scale pivot row by inv: multiply each entry by the fixed scalar
        T[r] = _np_scale_row(K, T[r], inv, red)
        # eliminate the column from every other row at once
        f = T[:, col, :].copy()
        f[r] = 0
        mask = f.any(axis=1)
        if mask.any():
            prod = _np_outer_mul(K, f[mask], T[r], red)
            T[mask] = (T[mask] - prod) % p
        pivots.append(col)
        r += 1
    return T, pivots

def _np_scale_row(K: Field, row: np.ndarray, s: Elem, red: np.ndarray) -> np.ndarray:
    p, k = K.p, K.k
    if k == 1:
        return (row * s[0]) % p
    sv = np.array(s, dtype=np.int64)
    conv = np.zeros((row.shape[0], 2 * k - 1), dtype=np.int64)
    for i in range(k):
        if sv[i]:
            conv[:, i:i + k] += sv[i] * row
    out = conv[:, :k] + conv[:, k:] @ red
    return out % p

def _np_outer_mul(K: Field, f: np.ndarray, row: np.ndarray, red: np.ndarray) -> np.ndarray:
    """Products f[i] * row[j] for every selected row i and column j."""
    p, k = K.p, K.k
    if k == 1:
        return (f[:, None, 0, None] * row[None, :, :]) % p
    m, c = f.shape[0], row.shape[0]
    conv = np.zeros((m, c, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        fi = f[:, i]
        if not fi.any():
            continue
        conv[:, :, i:i + k] += fi[:, None, None] * row[None, :, :]
    out = conv[:, :, :k] + conv[:, :, k:] @ red
    return out % p


def _rref_generic(K: Field, M: Mat) -> tuple[Mat, list[int]]:
    rows = [list(r) for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        sel = None
        for i in range(r, nrows):
            if not K.is_zero(rows[i][col]):
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = K.inv(rows[r][col])
        rows[r] = [K.mul(inv, v) for v in rows[r]]
        for i in range(nrows):
            if i == r or K.is_zero(rows[i][col]):
                continue
            f = rows[i][col]
            ri, rr = rows[i], rows[r]
            rows[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(ri, rr)]
        pivots.append(col)
        r += 1
    return rows, pivots


def mat_rref(K: Field, M: Sequence[Sequence[Elem]]) -> tuple[Mat, list[int]]:
    """Canonical reduced row echelon form and pivot column list."""
    if not M or not M[0]:
        return [list(r) for r in M], []
    if K.p < _NP_MAX_P:
        T = _to_tensor(K, M)
        T, pivots = _np_rref(K, T)
        return _from_tensor(K, T), pivots
    return _rref_generic(K, M)


def mat_rank(K: Field, M: Sequence[Sequence[Elem]]) -> int:
    return len(mat_rref(K, M)[1])


def mat_kernel(K: Field, M: Sequence[Sequence[Elem]],
               ncols: Optional[int] = None) -> list[Vec]:
    """Canonical basis of the right kernel: one vector per free column,
    with a 1 in the free position."""
    if ncols is None:
        if not M:
            raise ExactAlgError("empty matrix needs an explicit column count")
        ncols = len(M[0])
    if not M:
        rows, pivots = [], []
    else:
        rows, pivots = mat_rref(K, M)
    pivot_set = set(pivots)
    basis: list[Vec] = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [K.zero] * ncols
        v[j] = K.one
        for r, pc in enumerate(pivots):
            v[pc] = K.neg(rows[r][j])
        basis.append(v)
    return basis


def mat_mul_vec(K: Field, M: Sequence[Sequence[Elem]], v: Sequence[Elem]) -> Vec:
    out = []
    for row in M:
        acc = K.zero
        for a, b in zip(row, v):
            acc = K.add(acc, K.mul(a, b))
        out.append(acc)
    return out


def mat_solve(K: Field, A: Sequence[Sequence[Elem]],
              b: Sequence[Elem]) -> Optional[Vec]:
    """One exact solution of A x = b, or None if inconsistent."""
    if not A:
        return None
    ncols = len(A[0])
    aug = [list(r) + [bv] for r, bv in zip(A, b)]
    rows, pivots = mat_rref(K, aug)
    if ncols in pivots:
        return None
    x = [K.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return x


def reduce_against(K: Field, rref_rows: Mat, pivots: list[int],
                   v: Sequence[Elem]) -> Vec:
    """Residue of v modulo the row space given in RREF form."""
    out = list(v)
    for r, pc in enumerate(pivots):
        f = out[pc]
        if K.is_zero(f):
            continue
        row = rref_rows[r]
        out = [K.sub(a, K.mul(f, b)) for a, b in zip(out, row)]
    return out


def complement_in(K: Field, sub: Sequence[Sequence[Elem]],
                  full: Sequence[Sequence[Elem]]) -> list[Vec]:
    """Canonical vectors extending span(sub) to span(sub + full): the RREF
    rows of full reduced modulo span(sub)."""
    if not full:
        return []
    if sub:
        srows, spiv = mat_rref(K, sub)
        reduced = [reduce_against(K, srows, spiv, v) for v in full]
    else:
        reduced = [list(v) for v in full]
    rows, pivots = mat_rref(K, reduced)
    return [rows[i] for i in range(len(pivots))]
