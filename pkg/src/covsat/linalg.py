"""Vectors and matrices over GF(q) stored as integer index arrays.

Vectors are rows of ``(..., r)`` arrays.  A vector ``(x_0, ..., x_{r-1})`` has
index ``sum(x_i * q**(r-1-i))`` so that ``x_0`` is the most significant digit;
this fixes both the syndrome addressing and the lexicographic point order.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx


def vectors_to_index(q: int, vecs) -> np.ndarray:
    vecs = np.asarray(vecs, dtype=np.int64)
    r = vecs.shape[-1]
    weights = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return vecs @ weights


def index_to_vectors(q: int, r: int, idx) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty(idx.shape + (r,), dtype=np.int64)
    v = idx.copy()
    for i in range(r - 1, -1, -1):
        v, out[..., i] = np.divmod(v, q)
    return out


def all_vectors(q: int, r: int) -> np.ndarray:
    """Every vector of GF(q)^r in index order."""
    return index_to_vectors(q, r, np.arange(q**r, dtype=np.int64))


def leading_positions(vecs) -> np.ndarray:
    """Position of the first nonzero coordinate, ``-1`` for zero rows."""
    vecs = np.asarray(vecs)
    nz = vecs != 0
    pos = np.argmax(nz, axis=-1)
    return np.where(nz.any(axis=-1), pos, -1)


def normalize(ctx: FieldCtx, vecs) -> np.ndarray:
    """Scale each row so its leftmost nonzero coordinate is 1 (zero rows unchanged)."""
    vecs = np.asarray(vecs, dtype=np.int64)
    flat = vecs.reshape(-1, vecs.shape[-1])
    pos = leading_positions(flat)
    lead = np.where(pos >= 0, flat[np.arange(len(flat)), np.maximum(pos, 0)], 1)
    lead = np.where(lead == 0, 1, lead)
    scale = ctx.inv_table[lead]
    out = np.asarray(ctx.mul(scale[:, None], flat), dtype=np.int64)
    return out.reshape(vecs.shape)


def scale(ctx: FieldCtx, c, vecs) -> np.ndarray:
    return np.asarray(ctx.mul(c, np.asarray(vecs, dtype=np.int64)), dtype=np.int64)


def add(ctx: FieldCtx, a, b) -> np.ndarray:
    return np.asarray(ctx.add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)), dtype=np.int64)


def row_reduce(ctx: FieldCtx, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = ctx.mul(ctx.inv(int(A[r, c])), A[r])
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = ctx.sub(A[i], ctx.mul(int(A[i, c]), A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(ctx: FieldCtx, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(row_reduce(ctx, M)[1])


def null_space(ctx: FieldCtx, M) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    R, pivots = row_reduce(ctx, M)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for i, pc in enumerate(pivots):
            basis[b, pc] = ctx.neg(int(R[i, f]))
    return basis


def matvec_sum(ctx: FieldCtx, cols: np.ndarray, coeffs) -> np.ndarray:
    """``sum_j coeffs[j] * cols[:, j]``."""
    acc = np.zeros(cols.shape[0], dtype=np.int64)
    for j, c in enumerate(coeffs):
        if c:
            acc = add(ctx, acc, scale(ctx, int(c), cols[:, j]))
    return acc
