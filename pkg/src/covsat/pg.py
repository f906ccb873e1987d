"""Projective spaces PG(N, q): points, saturation, minimality, blocking.

Points carry normalized homogeneous coordinates (leftmost nonzero coordinate
equal to 1).  The canonical order is lexicographic on those coordinates, so
points with more leading zeros come first; a point's position in that order is
its *rank*, and rank arrays stand in for bitsets of PG(N, q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _kernels as K
from .gf import FieldCtx, FieldElement, subfield_embed
from .linalg import index_to_vectors, leading_positions, normalize
from .syndromes import forced_masks

DEFAULT_MAX_POINTS = 20_000_000


class GeometryError(ValueError):
    pass


def theta(N: int, q: int) -> int:
    """Number of points of PG(N, q)."""
    return (q ** (N + 1) - 1) // (q - 1)


def point_ranks(q: int, coords) -> np.ndarray:
    """Canonical ranks of normalized coordinate rows."""
    coords = np.asarray(coords, dtype=np.int64)
    N = coords.shape[-1] - 1
    lead = leading_positions(coords)
    if np.any(lead < 0):
        raise GeometryError("zero vector is not a point")
    w = q ** np.arange(N, -1, -1, dtype=np.int64)
    idx = coords @ w
    # idx = q^(N-lead) + tail for a normalized vector
    top = q ** (N - lead)
    return (top - 1) // (q - 1) + (idx - top)


def points_from_ranks(q: int, N: int, ranks) -> np.ndarray:
    ranks = np.asarray(ranks, dtype=np.int64)
    starts = np.array([theta(N - i - 1, q) if i < N else 0 for i in range(N, -1, -1)], dtype=np.int64)
    # starts[k] is the first rank with lead position N-k
    k = np.searchsorted(starts, ranks, side="right") - 1
    lead = N - k
    tail = ranks - starts[k]
    top = q ** (N - lead)
    return index_to_vectors(q, N + 1, top + tail)


def vector_index_to_rank(q: int, N: int, idx) -> np.ndarray:
    """Rank of the points given by vector indices of already-normalized vectors."""
    idx = np.asarray(idx, dtype=np.int64)
    return point_ranks(q, index_to_vectors(q, N + 1, idx))


@dataclass(frozen=True)
class ProjPoint:
    ctx: FieldCtx
    coords: tuple[int, ...]

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=np.int64)
        lead = leading_positions(c[None])[0]
        if lead < 0:
            raise GeometryError("zero vector is not a point")
        if c[lead] != 1:
            raise GeometryError(f"{self.coords} is not normalized")

    @classmethod
    def of(cls, ctx: FieldCtx, coords: Sequence) -> "ProjPoint":
        c = normalize(ctx, np.asarray([int(x) for x in coords], dtype=np.int64))
        return cls(ctx, tuple(int(x) for x in c))

    @property
    def N(self) -> int:
        return len(self.coords) - 1

    @property
    def elements(self) -> tuple[FieldElement, ...]:
        return tuple(self.ctx(x) for x in self.coords)

    def rank(self) -> int:
        return int(point_ranks(self.ctx.q, self.coords))

    def __repr__(self):
        return "P(" + " ".join(map(str, self.coords)) + ")"


@dataclass(eq=False)
class PointSet:
    """Ordered set of distinct points; row ``i`` of ``coords`` is point ``i``."""

    ctx: FieldCtx
    coords: np.ndarray
    label: str = field(default="", compare=False)

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.int64)
        if c.ndim != 2 or c.shape[1] < 1:
            raise GeometryError("coords must be a 2-D array with N+1 columns")
        if len(c) and not np.array_equal(normalize(self.ctx, c), c):
            raise GeometryError("coordinates must be normalized")
        if len(c) and np.any(leading_positions(c) < 0):
            raise GeometryError("zero vector is not a point")
        if len(c) and len(np.unique(point_ranks(self.ctx.q, c))) != len(c):
            raise GeometryError("points must be distinct")
        c.setflags(write=False)
        self.coords = c

    @classmethod
    def from_vectors(cls, ctx: FieldCtx, vecs, label: str = "") -> "PointSet":
        """Normalize arbitrary nonzero vectors; the first occurrence of each point wins."""
        v = normalize(ctx, np.asarray(vecs, dtype=np.int64))
        _, first = np.unique(point_ranks(ctx.q, v), return_index=True)
        return cls(ctx, v[np.sort(first)], label)

    @property
    def N(self) -> int:
        return self.coords.shape[1] - 1

    @property
    def q(self) -> int:
        return self.ctx.q

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[ProjPoint]:
        for row in self.coords:
            yield ProjPoint(self.ctx, tuple(int(x) for x in row))

    def __getitem__(self, i: int) -> ProjPoint:
        return ProjPoint(self.ctx, tuple(int(x) for x in self.coords[i]))

    def __eq__(self, other):
        return (isinstance(other, PointSet) and self.ctx == other.ctx
                and np.array_equal(self.coords, other.coords))

    def ranks(self) -> np.ndarray:
        return point_ranks(self.q, self.coords)

    def without(self, i: int) -> "PointSet":
        return PointSet(self.ctx, np.delete(self.coords, i, axis=0), self.label)

    def with_points(self, pts) -> "PointSet":
        extra = normalize(self.ctx, np.atleast_2d(np.asarray(pts, dtype=np.int64)))
        return PointSet(self.ctx, np.vstack([self.coords, extra]), self.label)


def enumerate_points(N: int, ctx: FieldCtx, max_points: int = DEFAULT_MAX_POINTS) -> PointSet:
    n = theta(N, ctx.q)
    if n > max_points:
        raise GeometryError(f"PG({N},{ctx.q}) has {n} points, above the cap {max_points}")
    return PointSet(ctx, points_from_ranks(ctx.q, N, np.arange(n, dtype=np.int64)), f"PG({N},{ctx.q})")


# ---------------------------------------------------------------------------
# saturation


def _tables(ctx: FieldCtx):
    if ctx.add_table is None:
        raise GeometryError(f"{ctx} is too large for tabulated searches")
    return (ctx.add_table.astype(np.int64), ctx.mul_table.astype(np.int64),
            ctx.inv_table.astype(np.int64))


def coverage_levels(S: PointSet, max_level: int | None = None,
                    max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """``level[rank]`` = least ``k`` with the point a combination of ``k`` points of S (0 = never)."""
    q, N = S.q, S.N
    total = theta(N, q)
    if total > max_points:
        raise GeometryError(f"PG({N},{q}) has {total} points, above the cap {max_points}")
    if max_level is None:
        max_level = N + 1
    add, mul, inv = _tables(S.ctx)
    pw = q ** np.arange(N + 2, dtype=np.int64)
    mark = np.zeros(total, dtype=np.uint8)
    if len(S) == 0:
        return mark
    frontier = S.ranks()
    mark[frontier] = 1
    Sc = np.ascontiguousarray(S.coords)
    unmarked = total - len(frontier)
    for level in range(2, max_level + 1):
        if unmarked == 0:
            break
        # push from the frontier while it is small, pull into the rest afterwards
        if len(frontier) * len(S) <= unmarked:
            K.span_expand(frontier, Sc, add, mul, inv, q, N, pw, mark, level)
        else:
            todo = np.nonzero(mark == 0)[0].astype(np.int64)
            K.span_pull(todo, Sc, add, mul, inv, q, N, pw, mark, level)
        frontier = np.nonzero(mark == level)[0].astype(np.int64)
        if len(frontier) == 0:
            break
        unmarked -= len(frontier)
    return mark


def saturation_level(S: PointSet, max_points: int = DEFAULT_MAX_POINTS) -> int | None:
    """Least ``rho`` with every point a combination of at most ``rho+1`` points of S.

    ``None`` when S spans a proper subspace (never saturating).
    """
    if len(S) == 0:
        return None
    mark = coverage_levels(S, max_points=max_points)
    if np.any(mark == 0):
        return None
    return int(mark.max()) - 1


@dataclass
class Minimality:
    minimal: bool
    removable: list[int]


def _forced(S: PointSet, rho: int):
    F = forced_masks(S.ctx, S.coords, rho + 1)
    if F.uncovered[rho + 1] != 0:
        raise GeometryError(f"the set is not {rho}-saturating")
    if F.uncovered[rho] == 0:
        raise GeometryError(f"the set is already {rho - 1}-saturating")
    return F


def essential_points(S: PointSet, rho: int) -> list[np.ndarray]:
    """Witness ranks per point: the points left uncovered once that point is removed.

    A point is essential iff its witness array is nonempty.  Ranks are sorted,
    i.e. in canonical point order.
    """
    F = _forced(S, rho)
    q, N = S.q, S.N
    out = []
    for j in range(len(S)):
        idx = F.members(j)
        vecs = index_to_vectors(q, N + 1, idx)
        lead = leading_positions(vecs)
        keep = vecs[np.arange(len(vecs)), lead] == 1
        out.append(point_ranks(q, vecs[keep]) if keep.any() else np.zeros(0, dtype=np.int64))
    return out


def is_minimal_saturating(S: PointSet, rho: int, method: str = "forced") -> Minimality:
    """Whether no single point can be dropped while staying ``rho``-saturating.

    ``method="forced"`` reads the answer off one forced-column pass over the
    vector space; ``"brute"`` reruns the saturation search for every deletion.
    Dropping one point suffices: subsets of a set that is not ``rho``-saturating
    are not either.
    """
    if method == "forced":
        F = _forced(S, rho)
        essential = set(F.indispensable())
        removable = [j for j in range(len(S)) if j not in essential]
    elif method == "brute":
        if saturation_level(S) != rho:
            raise GeometryError(f"the set is not {rho}-saturating")
        removable = []
        for j in range(len(S)):
            lvl = saturation_level(S.without(j))
            if lvl is not None and lvl <= rho:
                removable.append(j)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Minimality(not removable, removable)


# ---------------------------------------------------------------------------
# planes


def incidence_counts(S: PointSet) -> np.ndarray:
    """Number of points of S on each line of PG(2,q), lines in dual canonical order."""
    if S.N != 2:
        raise GeometryError("lines are only enumerated in PG(2, q)")
    lines = enumerate_points(2, S.ctx).coords
    add, mul, _ = _tables(S.ctx)
    if len(S) == 0:
        return np.zeros(len(lines), dtype=np.int64)
    prod = mul[lines[:, None, :], S.coords[None, :, :]]
    dot = add[add[prod[..., 0], prod[..., 1]], prod[..., 2]]
    return np.count_nonzero(dot == 0, axis=1)


def is_blocking(S: PointSet, t: int = 1) -> bool:
    return bool(np.all(incidence_counts(S) >= t))


def is_double_blocking(S: PointSet) -> bool:
    return is_blocking(S, 2)


def baer_embed(S: PointSet, big: FieldCtx) -> PointSet:
    """Map a set of PG(N, sqrt(q)) into PG(N, q) through the subfield embedding."""
    small = S.ctx
    if big.p != small.p or big.k != 2 * small.k:
        raise GeometryError(f"GF({big.q}) is not a quadratic extension of GF({small.q})")
    emb = subfield_embed(small, big)
    return PointSet(big, np.asarray(emb(S.coords), dtype=np.int64), S.label)
