"""Exhaustive searches over the syndrome space GF(q)^r.

Three passes share one addressing scheme (see :mod:`covsat._kernels`):

* :func:`distances` -- breadth-first layers; ``dist[s]`` is the least number
  of columns whose combination is ``s`` (the coset-leader weight).
* :func:`capsule_masks` -- column-by-column DP; bit ``w`` of ``W[s]`` says
  ``s`` is a combination with nonzero coefficients of exactly ``w`` distinct
  columns.
* :func:`forced_masks` -- layered DP; ``U[s]`` is the set of columns used by
  *every* representation of ``s`` with at most ``R`` columns.  A column is
  indispensable for covering radius ``R`` exactly when it lies in some
  ``U[s]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .gf import FieldCtx
from .linalg import all_vectors

DEFAULT_MAX_SYNDROMES = int(os.environ.get("COVSAT_MAX_SYNDROMES", 50_000_000))
DEFAULT_MAX_BYTES = int(os.environ.get("COVSAT_MAX_BYTES", 2 << 30))
_PLAN_CACHE_BYTES = 256 << 20


class CapExceeded(RuntimeError):
    """The requested search is larger than the configured limits."""


@lru_cache(maxsize=16)
def _block_vectors(q: int, length: int) -> np.ndarray:
    v = all_vectors(q, length)
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class ColumnPlan:
    Thi: np.ndarray
    Tlo: np.ndarray
    hi_reps: np.ndarray
    lo_reps: np.ndarray


class SyndromeSpace:
    """GF(q)^r addressed as ``hi * B + lo``."""

    def __init__(self, ctx: FieldCtx, r: int, max_syndromes: int | None = None):
        if ctx.add_table is None:
            raise CapExceeded(f"syndrome searches need tabulated fields; {ctx} is too large")
        limit = DEFAULT_MAX_SYNDROMES if max_syndromes is None else max_syndromes
        size = ctx.q**r
        if size > limit:
            raise CapExceeded(f"{ctx.q}^{r} = {size} syndromes exceeds the limit {limit}")
        self.ctx = ctx
        self.q = ctx.q
        self.r = r
        self.size = size
        self.r_lo = r // 2
        self.r_hi = r - self.r_lo
        self.B = self.q**self.r_lo
        self._hi = _block_vectors(self.q, self.r_hi)
        self._lo = _block_vectors(self.q, self.r_lo)
        self._w_hi = self.q ** np.arange(self.r_hi - 1, -1, -1, dtype=np.int64)
        self._w_lo = self.q ** np.arange(self.r_lo - 1, -1, -1, dtype=np.int64)

    def _shift_table(self, block: np.ndarray, weights: np.ndarray, part: np.ndarray) -> np.ndarray:
        q = self.q
        add, mul = self.ctx.add_table, self.ctx.mul_table
        out = np.empty((q, len(block)), dtype=np.int64)
        for c in range(q):
            v = mul[c, part].astype(np.int64)
            out[c] = add[block, v[None, :]].astype(np.int64) @ weights if len(part) else 0
        return out

    def plan(self, h: np.ndarray) -> ColumnPlan | None:
        """Addressing tables for the cosets of ``<h>``; ``None`` for a zero column."""
        h = np.asarray(h, dtype=np.int64)
        nz = np.nonzero(h)[0]
        if len(nz) == 0:
            return None
        pivot = int(nz[0])
        Thi = self._shift_table(self._hi, self._w_hi, h[: self.r_hi])
        Tlo = self._shift_table(self._lo, self._w_lo, h[self.r_hi:])
        if pivot < self.r_hi:
            hi_reps = np.nonzero(self._hi[:, pivot] == 0)[0].astype(np.int64)
            lo_reps = np.arange(len(self._lo), dtype=np.int64)
        else:
            hi_reps = np.arange(len(self._hi), dtype=np.int64)
            lo_reps = np.nonzero(self._lo[:, pivot - self.r_hi] == 0)[0].astype(np.int64)
        return ColumnPlan(Thi, Tlo, hi_reps, lo_reps)

    def plans(self, cols: np.ndarray):
        """Yield ``(j, plan)``; plans are cached when they fit in memory."""
        per = 8 * self.q * (len(self._hi) + len(self._lo))
        if per * len(cols) <= _PLAN_CACHE_BYTES:
            cached = [self.plan(h) for h in cols]
            return lambda: enumerate(cached)
        return lambda: ((j, self.plan(h)) for j, h in enumerate(cols))


def _check_bytes(nbytes: int, max_bytes: int | None):
    limit = DEFAULT_MAX_BYTES if max_bytes is None else max_bytes
    if nbytes > limit:
        raise CapExceeded(f"search needs {nbytes} bytes, limit is {limit}")


def distances(ctx: FieldCtx, cols: np.ndarray, *, max_layers: int = 254,
              max_syndromes: int | None = None) -> np.ndarray:
    """Coset-leader weight of every syndrome; ``UNREACHED`` (255) if beyond ``max_layers``.

    ``cols`` has shape ``(n, r)``.
    """
    cols = np.asarray(cols, dtype=np.int64)
    space = SyndromeSpace(ctx, cols.shape[1], max_syndromes)
    dist = np.full(space.size, K.UNREACHED, dtype=np.uint8)
    dist[0] = 0
    it = space.plans(cols)
    remaining = space.size - 1
    w = 0
    while remaining and w < max_layers:
        w += 1
        for _, pl in it():
            if pl is not None:
                K.bfs_column(dist, pl.Thi, pl.Tlo, pl.hi_reps, pl.lo_reps, space.B, w)
        left = int(np.count_nonzero(dist == K.UNREACHED))
        if left == remaining:
            break
        remaining = left
    return dist


def capsule_masks(ctx: FieldCtx, cols: np.ndarray, r_cap: int, *,
                  max_syndromes: int | None = None) -> np.ndarray:
    """Bitmask per syndrome of achievable distinct-column weights ``0..r_cap``."""
    if not 0 <= r_cap <= 7:
        raise ValueError("r_cap must be in 0..7 (masks are one byte)")
    cols = np.asarray(cols, dtype=np.int64)
    space = SyndromeSpace(ctx, cols.shape[1], max_syndromes)
    W = np.zeros(space.size, dtype=np.uint8)
    W[0] = 1
    capmask = (1 << (r_cap + 1)) - 1
    for _, pl in space.plans(cols)():
        if pl is None:
            W |= ((W.astype(np.uint16) << 1) & capmask).astype(np.uint8)
        else:
            K.capsule_column(W, pl.Thi, pl.Tlo, pl.hi_reps, pl.lo_reps, space.B, capmask)
    return W


@dataclass
class ForcedMasks:
    """Result of :func:`forced_masks`.

    ``U`` has one row of 64-bit words per syndrome; bit ``j`` marks column
    ``j`` as used by every representation with at most ``R`` columns, bit
    ``n`` (the sentinel) marks syndromes with no such representation.
    ``uncovered[w]`` counts syndromes needing more than ``w`` columns.
    """

    U: np.ndarray
    n: int
    R: int
    uncovered: list[int]

    @property
    def sentinel(self) -> tuple[int, np.uint64]:
        return self.n >> 6, np.uint64(1) << np.uint64(self.n & 63)

    def union(self) -> tuple[np.ndarray, int]:
        word, bit = self.sentinel
        return K.forced_union(self.U, word, bit)

    def indispensable(self) -> list[int]:
        mask, _ = self.union()
        return [j for j in range(self.n) if (int(mask[j >> 6]) >> (j & 63)) & 1]

    def counts(self) -> np.ndarray:
        return K.forced_counts(self.U, self.n)

    def members(self, j: int) -> np.ndarray:
        return K.forced_members(self.U, j)


_last_forced: dict = {}


def forced_masks(ctx: FieldCtx, cols: np.ndarray, R: int, *,
                 max_syndromes: int | None = None, max_bytes: int | None = None) -> ForcedMasks:
    """Forced-column masks after ``R`` layers.

    The most recent result is kept, so asking for minimality of a point set
    and local optimality of its matrix costs one pass.
    """
    cols = np.asarray(cols, dtype=np.int64)
    key = (ctx.p, ctx.modulus, cols.shape, cols.tobytes(), R)
    hit = _last_forced.get("key")
    if hit == key:
        return _last_forced["value"]
    _last_forced.clear()
    result = _forced_masks(ctx, cols, R, max_syndromes, max_bytes)
    _last_forced.update(key=key, value=result)
    return result


def _forced_masks(ctx, cols, R, max_syndromes, max_bytes) -> ForcedMasks:
    n = cols.shape[0]
    space = SyndromeSpace(ctx, cols.shape[1], max_syndromes)
    words = (n + 1 + 63) // 64
    _check_bytes(2 * 8 * words * space.size, max_bytes)
    full = np.full(words, K.ALL_ONES, dtype=np.uint64)
    if (n + 1) % 64:
        full[-1] = np.uint64((1 << ((n + 1) % 64)) - 1)
    prev = np.empty((space.size, words), dtype=np.uint64)
    prev[:] = full
    prev[0] = 0
    cur = np.empty_like(prev)
    sw, sb = n >> 6, np.uint64(1) << np.uint64(n & 63)
    uncovered = [space.size - 1]
    it = space.plans(cols)
    for _ in range(R):
        np.copyto(cur, prev)
        for j, pl in it():
            if pl is not None:
                K.forced_column(prev, cur, pl.Thi, pl.Tlo, pl.hi_reps, pl.lo_reps, space.B,
                                j >> 6, np.uint64(1) << np.uint64(j & 63))
        prev, cur = cur, prev
        uncovered.append(int(np.count_nonzero(prev[:, sw] & sb)))
    del cur
    return ForcedMasks(prev, n, R, uncovered)
