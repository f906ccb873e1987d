"""Linear codes given by parity-check matrices over GF(q).

A code of length ``n`` and codimension ``r`` is stored as its ``n`` parity-check
columns.  The covering radius is the largest coset-leader weight; the capsule
lower index ``ell`` is the largest value such that every syndrome is a
combination of between ``ell`` and ``R`` distinct columns with nonzero
coefficients.  A code is surface-covering when ``ell == R``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .gf import FieldCtx
from .linalg import leading_positions, normalize, null_space, rank
from .pg import PointSet
from .syndromes import CapExceeded, capsule_masks, distances, forced_masks
from . import _kernels as K

__all__ = [
    "CodeError", "RankDeficient", "ParityCheckMatrix", "CoverageProfile", "Distance",
    "LocalOptimality", "CodeParams", "covering_radius", "syndrome_distances",
    "capsule_spectrum", "min_distance_small", "is_locally_optimal", "codeword_weights",
    "analyze", "set_matrix_bridge", "matrix_set_bridge", "CapExceeded",
]


class CodeError(ValueError):
    pass


class RankDeficient(CodeError):
    pass


@dataclass(eq=False)
class ParityCheckMatrix:
    """``columns[j]`` is the ``j``-th parity-check column (an ``r``-vector)."""

    ctx: FieldCtx
    columns: np.ndarray
    provenance: str = field(default="", compare=False)
    allow_zero: bool = False

    def __post_init__(self):
        c = np.array(self.columns, dtype=np.int64)
        if c.ndim != 2:
            raise CodeError("columns must be an (n, r) array")
        if c.size and (c.min() < 0 or c.max() >= self.ctx.q):
            raise CodeError(f"entries must be field indices in [0, {self.ctx.q})")
        if not self.allow_zero and len(c) and np.any(~c.any(axis=1)):
            raise CodeError("zero column (pass allow_zero=True to keep it)")
        c.setflags(write=False)
        self.columns = c

    @classmethod
    def from_rows(cls, ctx: FieldCtx, H, provenance: str = "", allow_zero: bool = False):
        return cls(ctx, np.asarray(H, dtype=np.int64).T, provenance, allow_zero)

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def r(self) -> int:
        return self.columns.shape[1]

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def H(self) -> np.ndarray:
        """The ``r x n`` matrix."""
        return self.columns.T

    def rank(self) -> int:
        return rank(self.ctx, self.H)

    def without(self, j: int) -> "ParityCheckMatrix":
        return ParityCheckMatrix(self.ctx, np.delete(self.columns, j, axis=0),
                                 self.provenance, self.allow_zero)

    def with_columns(self, cols) -> "ParityCheckMatrix":
        extra = np.atleast_2d(np.asarray(cols, dtype=np.int64))
        return ParityCheckMatrix(self.ctx, np.vstack([self.columns, extra]),
                                 self.provenance, self.allow_zero)

    def submatrix(self, rows=None, cols=None) -> "ParityCheckMatrix":
        c = self.columns
        if cols is not None:
            c = c[list(cols)]
        if rows is not None:
            c = c[:, list(rows)]
        return ParityCheckMatrix(self.ctx, c, self.provenance, allow_zero=True)

    def __eq__(self, other):
        return (isinstance(other, ParityCheckMatrix) and self.ctx == other.ctx
                and np.array_equal(self.columns, other.columns))

    def __repr__(self):
        return f"ParityCheckMatrix(GF({self.q}), r={self.r}, n={self.n})"


def _require_full_rank(H: ParityCheckMatrix):
    rk = H.rank()
    if rk < H.r:
        raise RankDeficient(f"rank {rk} < r = {H.r}: some syndromes are unreachable")


# ---------------------------------------------------------------------------
# covering radius and capsule spectrum


def syndrome_distances(H: ParityCheckMatrix, max_syndromes: int | None = None) -> np.ndarray:
    """Coset-leader weight for every syndrome index."""
    return distances(H.ctx, H.columns, max_syndromes=max_syndromes)


def covering_radius(H: ParityCheckMatrix, max_syndromes: int | None = None) -> int:
    _require_full_rank(H)
    return int(syndrome_distances(H, max_syndromes).max())


_LOW_BIT = np.array([(v & -v).bit_length() - 1 if v else 255 for v in range(256)], dtype=np.int64)
_HIGH_BIT = np.array([v.bit_length() - 1 if v else -1 for v in range(256)], dtype=np.int64)


@dataclass
class CoverageProfile:
    """Per-syndrome masks of achievable distinct-column weights ``0..r_cap``."""

    masks: np.ndarray
    r_cap: int
    q: int
    r: int

    def histogram(self) -> np.ndarray:
        return np.bincount(self.masks, minlength=256)

    def _present(self) -> np.ndarray:
        return np.nonzero(self.histogram())[0]

    def min_weights(self) -> np.ndarray:
        """Least achievable weight per syndrome (255 when none within ``r_cap``)."""
        return _LOW_BIT[self.masks]

    @property
    def covering_radius(self) -> int | None:
        """Least ``R`` with every mask meeting ``[0, R]``; ``None`` beyond ``r_cap``."""
        if 0 in self._present():
            return None
        return int(_LOW_BIT[self._present()].max())

    def ell_max(self, R: int | None = None) -> int | None:
        """Greatest ``ell`` with every mask meeting ``[ell, R]``."""
        if R is None:
            R = self.covering_radius
        if R is None:
            return None
        clipped = self._present() & ((1 << (R + 1)) - 1)
        if np.any(clipped == 0):
            return None
        return int(_HIGH_BIT[clipped].min())

    @property
    def surface_covering(self) -> bool:
        R = self.covering_radius
        return R is not None and self.ell_max(R) == R


def capsule_spectrum(H: ParityCheckMatrix, r_cap: int | None = None,
                     max_syndromes: int | None = None) -> CoverageProfile:
    if r_cap is None:
        r_cap = min(H.r, 7)
    masks = capsule_masks(H.ctx, H.columns, r_cap, max_syndromes=max_syndromes)
    return CoverageProfile(masks, r_cap, H.q, H.r)


# ---------------------------------------------------------------------------
# minimum distance


class Distance(NamedTuple):
    """``d`` exactly when ``exact``; otherwise ``d`` is a lower bound."""

    d: int
    exact: bool

    def __str__(self):
        return str(self.d) if self.exact else f">={self.d}"


def _row_keys(q: int, vecs: np.ndarray) -> np.ndarray:
    r = vecs.shape[-1]
    if r * np.log2(q) < 62:
        return vecs @ (q ** np.arange(r - 1, -1, -1, dtype=np.int64))
    v = np.ascontiguousarray(vecs.astype(np.int64))
    return v.view(np.dtype((np.void, v.dtype.itemsize * r))).ravel()


def min_distance_small(H: ParityCheckMatrix, cap_d: int = 4, time_cap: float = 120.0,
                       max_pair_sums: int = 30_000_000) -> Distance:
    """Minimum distance when it is at most ``cap_d`` (``cap_d <= 4``)."""
    cap_d = min(cap_d, 4)
    ctx, cols = H.ctx, H.columns
    if H.n == 0:
        return Distance(cap_d + 1, False)
    if np.any(~cols.any(axis=1)):
        return Distance(1, True)
    if cap_d < 2:
        return Distance(2, False)
    pts = normalize(ctx, cols)
    keys = _row_keys(ctx.q, pts)
    if len(np.unique(keys)) < H.n:
        return Distance(2, True)
    if cap_d < 3:
        return Distance(3, False)
    start = time.monotonic()
    n, q = H.n, ctx.q
    add, mul = ctx.add_table, ctx.mul_table
    key_set = np.sort(keys)
    nonzero = np.arange(1, q)
    scaled = mul[nonzero[:, None, None], cols[None, :, :]]  # (q-1, n, r)
    for i in range(n - 1):
        s = normalize(ctx, add[cols[i][None, None, :], scaled[:, i + 1:, :]])
        k = _row_keys(q, s.reshape(-1, H.r))
        pos = np.searchsorted(key_set, k)
        pos = np.minimum(pos, n - 1)
        if np.any(key_set[pos] == k):
            return Distance(3, True)
        if time.monotonic() - start > time_cap:
            return Distance(3, False)
    if cap_d < 4:
        return Distance(4, False)
    if n * (n - 1) // 2 * (q - 1) > max_pair_sums:
        return Distance(4, False)
    chunks = []
    for i in range(n - 1):
        s = normalize(ctx, add[cols[i][None, None, :], scaled[:, i + 1:, :]])
        chunks.append(_row_keys(q, s.reshape(-1, H.r)))
        if time.monotonic() - start > time_cap:
            return Distance(4, False)
    if not chunks:
        return Distance(5, False)
    allk = np.concatenate(chunks)
    # with no three columns dependent, equal pair sums come from disjoint pairs
    if len(np.unique(allk)) < len(allk):
        return Distance(4, True)
    return Distance(5, False)


def codeword_weights(H: ParityCheckMatrix, max_codewords: int = 20_000_000) -> np.ndarray:
    """Number of codewords of each weight ``0..n``, by full enumeration."""
    ctx = H.ctx
    G = null_space(ctx, H.H)
    k, n = G.shape
    total = ctx.q**k
    if total > max_codewords:
        raise CapExceeded(f"{total} codewords exceeds the limit {max_codewords}")
    add, mul = ctx.add_table, ctx.mul_table
    counts = np.zeros(n + 1, dtype=np.int64)
    chunk = 1 << 18
    w = ctx.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        coef = (idx[:, None] // w[None, :]) % ctx.q
        word = np.zeros((len(idx), n), dtype=np.int64)
        for b in range(k):
            word = add[word, mul[coef[:, b:b + 1], G[b][None, :]]]
        counts += np.bincount(np.count_nonzero(word, axis=1), minlength=n + 1)
    return counts


# ---------------------------------------------------------------------------
# local optimality


class LocalOptimality(NamedTuple):
    optimal: bool
    removable: list


def is_locally_optimal(H: ParityCheckMatrix, R: int | None = None, method: str = "forced",
                       max_syndromes: int | None = None) -> LocalOptimality:
    """Whether deleting any single column raises the covering radius (or drops the rank).

    ``method="forced"`` does one forced-column pass: column ``j`` is
    indispensable iff some syndrome has all its weight-``<= R`` representations
    through ``j``.  ``"brute"`` recomputes the covering radius per deletion.
    """
    _require_full_rank(H)
    if method == "forced":
        if R is None:
            R = covering_radius(H, max_syndromes)
        F = forced_masks(H.ctx, H.columns, R, max_syndromes=max_syndromes)
        if F.uncovered[R] != 0 or (R > 0 and F.uncovered[R - 1] == 0):
            raise CodeError(f"covering radius is not {R}")
        keep = set(F.indispensable())
        removable = [j for j in range(H.n) if j not in keep]
    elif method == "brute":
        actual = covering_radius(H, max_syndromes)
        if R is not None and actual != R:
            raise CodeError(f"covering radius is {actual}, not {R}")
        R = actual
        removable = []
        for j in range(H.n):
            Hj = H.without(j)
            if Hj.rank() == H.r and covering_radius(Hj, max_syndromes) <= R:
                removable.append(j)
    else:
        raise ValueError(f"unknown method {method!r}")
    return LocalOptimality(not removable, removable)


# ---------------------------------------------------------------------------
# summary


@dataclass
class CodeParams:
    n: int
    r: int
    rank: int
    d: Distance | None = None
    R: int | None = None
    ell: int | None = None
    surface_covering: bool | None = None
    locally_optimal: bool | None = None

    @property
    def k(self) -> int:
        return self.n - self.r

    def notation(self) -> str:
        d = f", {self.d}" if self.d is not None else ""
        tail = ""
        if self.R is not None:
            tail = f" R={self.R}" + (f", l={self.ell}" if self.ell is not None else "")
        return f"[{self.n}, {self.k}{d}]_q{tail}"


def analyze(H: ParityCheckMatrix, *, local_opt: bool = True, cap_d: int = 4,
            max_syndromes: int | None = None, check_consistency: bool = True) -> CodeParams:
    """Measure ``d``, ``R``, ``ell`` and (optionally) local optimality."""
    params = CodeParams(H.n, H.r, H.rank(), d=min_distance_small(H, cap_d))
    if params.rank < H.r:
        return params
    dist = syndrome_distances(H, max_syndromes)
    R = int(dist.max())
    params.R = R
    if R <= 7:
        prof = capsule_spectrum(H, r_cap=min(7, max(R, 1)), max_syndromes=max_syndromes)
        if check_consistency:
            check_profile(prof, dist)
        params.ell = prof.ell_max(R)
        params.surface_covering = params.ell == R
    if local_opt:
        params.locally_optimal = is_locally_optimal(H, R, max_syndromes=max_syndromes).optimal
    return params


def check_profile(prof: CoverageProfile, dist: np.ndarray) -> None:
    """The least weight in each mask must equal the BFS coset-leader weight."""
    low = prof.min_weights()
    within = dist <= prof.r_cap
    if not np.array_equal(low[within], dist[within].astype(np.int64)):
        raise AssertionError("capsule masks disagree with BFS distances")
    if np.any(low[~within] != K.UNREACHED):
        raise AssertionError("capsule masks reach syndromes BFS places beyond the cap")


# ---------------------------------------------------------------------------
# points <-> columns


def set_matrix_bridge(S: PointSet, provenance: str | None = None) -> ParityCheckMatrix:
    """Parity-check matrix whose columns are the points of S, in order."""
    return ParityCheckMatrix(S.ctx, S.coords, S.label if provenance is None else provenance)


def matrix_set_bridge(H: ParityCheckMatrix) -> PointSet:
    """Inverse of :func:`set_matrix_bridge`; columns are normalized."""
    if np.any(leading_positions(H.columns) < 0):
        raise CodeError("a zero column is not a point")
    return PointSet(H.ctx, normalize(H.ctx, H.columns), H.provenance)
