"""Compiled inner loops for the syndrome-space and point-space searches.

Every syndrome kernel walks the cosets of the line spanned by one column
``h``.  A syndrome index is split as ``hi * B + lo`` (first and last halves of
the coordinates); for each multiple ``c*h`` the tables ``Thi[c]`` and
``Tlo[c]`` give the two halves of ``s + c*h``, so a coset ``{s0 + c*h}`` is
addressed with two lookups per element.  Coset representatives are the
syndromes whose pivot coordinate (first nonzero coordinate of ``h``) is zero.

Cosets are disjoint and each kernel only touches the coset it is working on,
so the ``prange`` loops are race-free and results do not depend on the thread
count.
"""

from __future__ import annotations

import warnings

import numba
import numpy as np
from numba import njit, prange

UNREACHED = 255
ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)

# an outdated system TBB only costs us a fallback to another threading layer
warnings.filterwarnings("ignore", message="The TBB threading layer")


def set_workers(n: int | None) -> None:
    if n:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


@njit(cache=True, parallel=True)
def bfs_column(dist, Thi, Tlo, hi_reps, lo_reps, B, w):
    """Mark with ``w`` every unreached syndrome whose coset meets ``dist < w``."""
    q = Thi.shape[0]
    nlo = lo_reps.shape[0]
    for a in prange(hi_reps.shape[0]):
        hh = hi_reps[a]
        base = np.empty(q, np.int64)
        for c in range(q):
            base[c] = Thi[c, hh] * B
        for b in range(nlo):
            ll = lo_reps[b]
            hit = False
            for c in range(q):
                if dist[base[c] + Tlo[c, ll]] < w:
                    hit = True
                    break
            if hit:
                for c in range(q):
                    i = base[c] + Tlo[c, ll]
                    if dist[i] > w:
                        dist[i] = w


@njit(cache=True, parallel=True)
def capsule_column(W, Thi, Tlo, hi_reps, lo_reps, B, capmask):
    """Add one column to the weight-mask table, keeping columns distinct.

    ``W[t] |= (OR of W[t - c*h], c != 0) << 1``; all reads of a coset happen
    before its writes, so the old masks are used.
    """
    q = Thi.shape[0]
    nlo = lo_reps.shape[0]
    for a in prange(hi_reps.shape[0]):
        hh = hi_reps[a]
        base = np.empty(q, np.int64)
        idx = np.empty(q, np.int64)
        vals = np.empty(q, np.int64)
        pre = np.empty(q + 1, np.int64)
        suf = np.empty(q + 1, np.int64)
        for c in range(q):
            base[c] = Thi[c, hh] * B
        for b in range(nlo):
            ll = lo_reps[b]
            for c in range(q):
                idx[c] = base[c] + Tlo[c, ll]
                vals[c] = W[idx[c]]
            pre[0] = 0
            for c in range(q):
                pre[c + 1] = pre[c] | vals[c]
            suf[q] = 0
            for c in range(q - 1, -1, -1):
                suf[c] = suf[c + 1] | vals[c]
            for c in range(q):
                others = pre[c] | suf[c + 1]
                W[idx[c]] = vals[c] | ((others << 1) & capmask)


@njit(cache=True, parallel=True)
def forced_column(Uprev, Unew, Thi, Tlo, hi_reps, lo_reps, B, word, bit):
    """Intersect ``Unew`` on each coset with ``(AND of Uprev on the coset) | {column}``."""
    q = Thi.shape[0]
    nlo = lo_reps.shape[0]
    nw = Uprev.shape[1]
    for a in prange(hi_reps.shape[0]):
        hh = hi_reps[a]
        base = np.empty(q, np.int64)
        idx = np.empty(q, np.int64)
        acc = np.empty(nw, np.uint64)
        for c in range(q):
            base[c] = Thi[c, hh] * B
        for b in range(nlo):
            ll = lo_reps[b]
            for x in range(nw):
                acc[x] = ALL_ONES
            for c in range(q):
                i = base[c] + Tlo[c, ll]
                idx[c] = i
                for x in range(nw):
                    acc[x] &= Uprev[i, x]
            acc[word] |= bit
            for c in range(q):
                i = idx[c]
                for x in range(nw):
                    Unew[i, x] &= acc[x]


@njit(cache=True)
def forced_union(U, sentinel_word, sentinel_bit):
    """OR of all masks, and the count of masks still carrying the sentinel."""
    nw = U.shape[1]
    out = np.zeros(nw, np.uint64)
    missing = 0
    for i in range(U.shape[0]):
        if U[i, sentinel_word] & sentinel_bit:
            missing += 1
            continue
        for x in range(nw):
            out[x] |= U[i, x]
    return out, missing


@njit(cache=True)
def forced_counts(U, ncols):
    """For each column, how many syndromes have every short representation using it."""
    counts = np.zeros(ncols, np.int64)
    for i in range(U.shape[0]):
        for j in range(ncols):
            if (U[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1):
                counts[j] += 1
    return counts


@njit(cache=True)
def forced_members(U, j):
    """Syndrome indices whose forced-column mask contains column ``j``."""
    word = j >> 6
    bit = np.uint64(1) << np.uint64(j & 63)
    n = 0
    for i in range(U.shape[0]):
        if U[i, word] & bit:
            n += 1
    out = np.empty(n, np.int64)
    n = 0
    for i in range(U.shape[0]):
        if U[i, word] & bit:
            out[n] = i
            n += 1
    return out


# ---------------------------------------------------------------------------
# point space


@njit(cache=True)
def _decode_point(rank, N, q, pw, out):
    lead = N
    off = 0
    for i in range(N, -1, -1):
        cnt = pw[N - i]
        if rank < off + cnt:
            lead = i
            break
        off += cnt
    tail = rank - off
    for i in range(N + 1):
        out[i] = 0
    out[lead] = 1
    for i in range(N, lead, -1):
        out[i] = tail % q
        tail //= q


@njit(cache=True, parallel=True)
def span_expand(frontier, S, add, mul, inv, q, N, pw, mark, level):
    """Mark ``level`` on every unmarked point ``P + c*s`` for ``P`` in the frontier."""
    n = S.shape[0]
    for a in prange(frontier.shape[0]):
        P = np.empty(N + 1, np.int64)
        V = np.empty(N + 1, np.int64)
        _decode_point(frontier[a], N, q, pw, P)
        for s in range(n):
            for c in range(1, q):
                lead = -1
                for i in range(N + 1):
                    V[i] = add[P[i], mul[c, S[s, i]]]
                    if lead < 0 and V[i] != 0:
                        lead = i
                if lead < 0:
                    continue
                iv = inv[V[lead]]
                tail = 0
                for i in range(lead + 1, N + 1):
                    tail = tail * q + mul[iv, V[i]]
                r = (pw[N - lead] - 1) // (q - 1) + tail
                if mark[r] == 0:
                    mark[r] = level


@njit(cache=True, parallel=True)
def span_pull(todo, S, add, mul, inv, q, N, pw, mark, level):
    """Mark ``level`` on each point of ``todo`` equal to ``Y + c*s`` with ``Y``
    marked below ``level``; stops at the first witness per point."""
    n = S.shape[0]
    for a in prange(todo.shape[0]):
        X = np.empty(N + 1, np.int64)
        V = np.empty(N + 1, np.int64)
        _decode_point(todo[a], N, q, pw, X)
        found = False
        for s in range(n):
            for c in range(1, q):
                lead = -1
                for i in range(N + 1):
                    V[i] = add[X[i], mul[c, S[s, i]]]
                    if lead < 0 and V[i] != 0:
                        lead = i
                if lead < 0:
                    continue
                iv = inv[V[lead]]
                tail = 0
                for i in range(lead + 1, N + 1):
                    tail = tail * q + mul[iv, V[i]]
                r = (pw[N - lead] - 1) // (q - 1) + tail
                m = mark[r]
                if m != 0 and m < level:
                    found = True
                    break
            if found:
                break
        if found:
            mark[todo[a]] = level
