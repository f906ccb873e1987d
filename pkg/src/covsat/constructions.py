"""Explicit saturating sets and covering codes.

* :func:`construction_s` -- the "line plus ovals" ``((rho+1)q+1)``-set in
  PG(2rho+1, q): a truncated line, ``rho`` truncated conics each with the
  point ``T_u`` (nucleus or tangent intersection), and one extra point.
* :func:`qm1`, :func:`qm2` -- the q^m-concatenating liftings that raise the
  codimension of a seed code by ``R*m`` while keeping the covering radius.
* :func:`direct_sum`, :func:`plane_saturating_set`,
  :func:`triangle_double_blocking` and the fixed-radius families of
  :func:`family_codimension_tR`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .codes import CodeError, ParityCheckMatrix, capsule_spectrum, covering_radius
from .gf import FieldCtx, build_extension, build_field, prime_power, subfield_embed
from .pg import PointSet, enumerate_points, theta
from .syndromes import DEFAULT_MAX_SYNDROMES


class ConstructionError(ValueError):
    pass


class PreconditionError(ConstructionError):
    """The seed does not have the properties a lifting needs."""


# ---------------------------------------------------------------------------
# Construction S


@dataclass(frozen=True)
class ConstructionSRecipe:
    rho: int
    q: int

    @property
    def N(self) -> int:
        return 2 * self.rho + 1

    @property
    def size(self) -> int:
        return (self.rho + 1) * self.q + 1


def construction_s(rho: int, ctx: FieldCtx) -> PointSet:
    """Points in order: A_0^0, the line points (1, a, 0...), then per ``u`` the
    conic points (.., 1, a, a^2, ..) followed by ``T_u``, and finally the last
    unit point.  ``a`` runs over the nonzero field elements in index order."""
    q = ctx.q
    if q < 3:
        raise ConstructionError("construction S needs q >= 3")
    if rho < 0:
        raise ConstructionError("rho must be >= 0")
    N = 2 * rho + 1
    a = np.arange(1, q, dtype=np.int64)
    pts = np.zeros(((rho + 1) * q + 1, N + 1), dtype=np.int64)
    pts[0, 0] = 1
    pts[1:q, 0] = 1
    pts[1:q, 1] = a
    for u in range(1, rho + 1):
        block = slice(u * q, u * q + q - 1)
        pts[block, 2 * u - 1] = 1
        pts[block, 2 * u] = a
        pts[block, 2 * u + 1] = ctx.mul(a, a)
        pts[(u + 1) * q - 1, 2 * u] = 1
    pts[-1, N] = 1
    return PointSet(ctx, pts, f"construction-s q={q} rho={rho}")


def construction_s_matrix(rho: int, ctx: FieldCtx) -> ParityCheckMatrix:
    S = construction_s(rho, ctx)
    return ParityCheckMatrix(ctx, S.coords, S.label)


def component_blocks(rho: int, q: int) -> dict[str, tuple[list[int], list[int]]]:
    """Row and column index sets (0-based) of the component codes of the
    construction S matrix, keyed by name."""
    out = {"L0": ([0, 1], list(range(q)))}
    for u in range(1, rho + 1):
        rows = [2 * u - 1, 2 * u, 2 * u + 1]
        conic = list(range(u * q, u * q + q - 1))
        out[f"C{u}"] = (rows, conic)
        out[f"C{u}+T"] = (rows, conic + [(u + 1) * q - 1])
    if rho >= 1:
        rows = [2 * rho - 1, 2 * rho, 2 * rho + 1]
        conic = list(range(rho * q, rho * q + q - 1))
        last = (rho + 1) * q
        out[f"C{rho}+inf"] = (rows, conic + [last])
        out[f"C{rho}+inf+T"] = (rows, conic + [(rho + 1) * q - 1, last])
    return out


# ---------------------------------------------------------------------------
# q^m-concatenating constructions


@dataclass
class QMRecipe:
    """A seed with its covering radius ``R`` and capsule index ``ell``.

    ``ell_source`` records whether ``ell`` was measured or taken as known.
    """

    seed: ParityCheckMatrix
    m: int
    R: int
    ell: int
    variant: str = "qm1"
    w_variant: str = "literal"
    ell_source: str = "measured"

    @classmethod
    def measured(cls, seed: ParityCheckMatrix, m: int, variant: str = "qm1",
                 w_variant: str = "literal", max_syndromes: int | None = None) -> "QMRecipe":
        R = covering_radius(seed, max_syndromes)
        if R > 7:
            raise ConstructionError(f"capsule masks cover weights up to 7, seed has R={R}")
        ell = capsule_spectrum(seed, r_cap=R, max_syndromes=max_syndromes).ell_max(R)
        return cls(seed, m, R, ell, variant, w_variant, "measured")

    @property
    def n0(self) -> int:
        return self.seed.n

    @property
    def r(self) -> int:
        return self.seed.r + self.R * self.m

    @property
    def w_columns(self) -> int:
        q = self.seed.q
        if self.w_variant == "literal":
            return theta(self.m, q)
        return theta(self.m - 1, q)

    @property
    def n(self) -> int:
        base = self.seed.q**self.m * self.n0
        return base + (self.w_columns if self.variant == "qm2" else 0)

    def uses_star(self) -> bool:
        return self.variant == "qm1" and self.seed.q**self.m == self.n0 - 1

    def check(self) -> None:
        q, m, R = self.seed.q, self.m, self.R
        if m < 1:
            raise ConstructionError("m must be >= 1")
        if R < 2:
            raise PreconditionError(f"liftings need R >= 2, seed has R={R}")
        if self.variant == "qm1":
            if self.ell != R:
                raise PreconditionError(
                    f"QM1 needs a surface-covering seed (ell = R = {R}); seed has ell={self.ell}")
            if q**m < self.n0 - 1:
                raise PreconditionError(f"QM1 needs q^m >= n0-1: {q}^{m} < {self.n0 - 1}")
        elif self.variant == "qm2":
            if self.ell != R - 1:
                raise PreconditionError(f"QM2 needs ell = R-1 = {R - 1}; seed has ell={self.ell}")
            if q**m < self.n0:
                raise PreconditionError(f"QM2 needs q^m >= n0: {q}^{m} < {self.n0}")
            if self.w_variant not in ("literal", "reduced"):
                raise ConstructionError(f"unknown W variant {self.w_variant!r}")
        else:
            raise ConstructionError(f"unknown variant {self.variant!r}")

    def provenance(self) -> str:
        extra = f" w={self.w_variant}" if self.variant == "qm2" else ""
        return (f"{self.variant} m={self.m} R={self.R} ell={self.ell}({self.ell_source})"
                f"{extra} seed=[{self.seed.provenance or 'unnamed'}]")


def _blocks(recipe: QMRecipe) -> np.ndarray:
    """The ``B_j`` column blocks, stacked: shape ``(q^m * n0, r0 + R m)``."""
    seed, m, R = recipe.seed, recipe.m, recipe.R
    E = build_extension(seed.ctx, m)
    ext = E.ext
    Q = ext.q
    xi = np.arange(Q, dtype=np.int64)
    star = recipe.uses_star()
    out = np.zeros((Q * seed.n, seed.r + R * m), dtype=np.int64)
    for j in range(seed.n):
        rows = out[j * Q:(j + 1) * Q]
        rows[:, :seed.r] = seed.columns[j]
        if star and j == seed.n - 1:
            rows[:, seed.r + (R - 1) * m:] = E.rep(xi)
            continue
        beta = j  # the (j+1)-th column takes the element of index j
        power = 1
        for v in range(R):
            rows[:, seed.r + v * m: seed.r + (v + 1) * m] = E.rep(np.asarray(ext.mul(power, xi)))
            power = int(ext.mul(power, beta))
    return out


def qm1(recipe: QMRecipe) -> ParityCheckMatrix:
    if recipe.variant != "qm1":
        recipe = QMRecipe(recipe.seed, recipe.m, recipe.R, recipe.ell, "qm1",
                          recipe.w_variant, recipe.ell_source)
    recipe.check()
    return ParityCheckMatrix(recipe.seed.ctx, _blocks(recipe), recipe.provenance())


def hamming_block(ctx: FieldCtx, m: int, variant: str = "literal") -> np.ndarray:
    """Columns of the ``W`` block of QM2, shape ``(ncols, m)``.

    ``literal``: every point of PG(m, q) in canonical order with its first
    coordinate dropped (this includes a zero column and repeated columns);
    ``reduced``: the points of PG(m-1, q), the Hamming parity check.
    """
    if variant == "literal":
        return enumerate_points(m, ctx).coords[:, 1:].copy()
    if variant == "reduced":
        return enumerate_points(m - 1, ctx).coords.copy()
    raise ConstructionError(f"unknown W variant {variant!r}")


def qm2(recipe: QMRecipe) -> ParityCheckMatrix:
    if recipe.variant != "qm2":
        recipe = QMRecipe(recipe.seed, recipe.m, recipe.R, recipe.ell, "qm2",
                          recipe.w_variant, recipe.ell_source)
    recipe.check()
    seed, m, R = recipe.seed, recipe.m, recipe.R
    W = hamming_block(seed.ctx, m, recipe.w_variant)
    C = np.zeros((len(W), seed.r + R * m), dtype=np.int64)
    C[:, seed.r + (R - 1) * m:] = W
    cols = np.vstack([C, _blocks(recipe)])
    return ParityCheckMatrix(seed.ctx, cols, recipe.provenance(),
                             allow_zero=recipe.w_variant == "literal")


def direct_sum(H1: ParityCheckMatrix, H2: ParityCheckMatrix) -> ParityCheckMatrix:
    if H1.ctx != H2.ctx:
        raise ConstructionError("direct sum needs matrices over the same field")
    cols = np.zeros((H1.n + H2.n, H1.r + H2.r), dtype=np.int64)
    cols[:H1.n, :H1.r] = H1.columns
    cols[H1.n:, H1.r:] = H2.columns
    return ParityCheckMatrix(H1.ctx, cols, f"({H1.provenance}) + ({H2.provenance})",
                             allow_zero=H1.allow_zero or H2.allow_zero)


# ---------------------------------------------------------------------------
# planes


def _square_root_field(big: FieldCtx) -> FieldCtx:
    if big.k % 2:
        raise ConstructionError(f"q = {big.q} is not a square")
    return build_field(big.p, big.k // 2)


def plane_saturating_set(big: FieldCtx) -> PointSet:
    """``{(1,0,x)} + {(1,0,c*beta)} + {(0,1,x)}`` with ``x`` in the subfield of
    order sqrt(q), ``c`` nonzero in it and ``beta`` the primitive element:
    ``3 sqrt(q) - 1`` points of PG(2, q)."""
    small = _square_root_field(big)
    sub = np.asarray(subfield_embed(small, big).image, dtype=np.int64)
    beta = big.primitive
    s = len(sub)
    a = np.zeros((s, 3), dtype=np.int64)
    a[:, 0], a[:, 2] = 1, sub
    b = np.zeros((s - 1, 3), dtype=np.int64)
    b[:, 0], b[:, 2] = 1, big.mul(sub[1:], beta)
    c = np.zeros((s, 3), dtype=np.int64)
    c[:, 1], c[:, 2] = 1, sub
    return PointSet(big, np.vstack([a, b, c]), f"plane-sat q={big.q}")


def triangle_double_blocking(ctx: FieldCtx) -> PointSet:
    """Union of the three coordinate lines ``x_i = 0`` of PG(2, q): ``3q`` points."""
    pts = enumerate_points(2, ctx).coords
    keep = (pts == 0).any(axis=1)
    return PointSet(ctx, pts[keep], f"triangle q={ctx.q}")


# ---------------------------------------------------------------------------
# families with r = tR


def ceil_log(q: int, x: int) -> int:
    """Least ``e >= 0`` with ``q**e >= x``."""
    e, v = 0, 1
    while v < x:
        v *= q
        e += 1
    return e


def even_m1(q: int, R: int) -> int:
    return ceil_log(q, R + 1) + 1


@dataclass
class FamilyStep:
    variant: str
    m: int
    n: int
    r: int
    ell: int | None = None
    ell_source: str = ""


@dataclass
class FamilyCode:
    """A family member described by its lifting steps; the matrix is built on demand."""

    q: int
    R: int
    t: int
    steps: list[FamilyStep]
    case: str
    w_variant: str = "literal"
    max_columns: int = 200_000
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.steps[-1].n

    @property
    def r(self) -> int:
        return self.steps[-1].r

    def provenance(self) -> str:
        chain = " -> ".join(f"{s.variant}(m={s.m})" if s.m else s.variant for s in self.steps)
        return f"family q={self.q} R={self.R} t={self.t} case={self.case}: {chain}"

    def constructible(self) -> bool:
        return self.n <= self.max_columns and self.q ** max(s.m for s in self.steps) <= 1 << 22

    def matrix(self, measure_ell: bool = True, max_syndromes: int | None = None) -> ParityCheckMatrix:
        """Build the matrix, re-measuring intermediate ``ell`` values when the
        syndrome space is small enough, else using the known values."""
        if "H" in self._cache:
            return self._cache["H"]
        if not self.constructible():
            raise ConstructionError(f"n = {self.n} is above the materialization cap {self.max_columns}")
        ctx = build_field(*prime_power(self.q))
        limit = DEFAULT_MAX_SYNDROMES if max_syndromes is None else max_syndromes
        H = construction_s_matrix(self.R - 1, ctx)
        ell, src = self.steps[0].ell, "known"
        for step in self.steps[1:]:
            if measure_ell and self.q**H.r <= limit:
                rec = QMRecipe.measured(H, step.m, step.variant, self.w_variant, max_syndromes=limit)
            else:
                rec = QMRecipe(H, step.m, self.R, ell, step.variant, self.w_variant, src)
            H = qm1(rec) if step.variant == "qm1" else qm2(rec)
            # both liftings yield surface-covering codes
            ell, src = self.R, "lifting"
        H.provenance = self.provenance()
        self._cache["H"] = H
        return H


def family_codimension_tR(q: int, R: int, t: int, w_variant: str = "literal") -> FamilyCode:
    """Fixed-radius family member of codimension ``r = tR``.

    Odd ``q >= 7``: the construction S seed alone (``t = 2``) or lifted by
    QM1 with ``m = t-2`` (``t >= ceil(log_q R) + 3``).  Even ``q >= 8``, with
    ``m1 = ceil(log_q (R+1)) + 1``: QM2 with ``m = t-2`` for
    ``m1+2 <= t < 3m1+2``, and QM2 with ``m1`` followed by QM1 with
    ``t-2-m1`` for ``t >= 3m1+2``.  ``t = 2`` is also allowed for ``q = 4``
    and for ``q = 5`` with ``R`` in {4, 5}, where the seed alone is known to have
    covering radius ``R``.
    """
    p, _ = prime_power(q)
    if R < 2:
        raise ConstructionError("R must be >= 2")
    n0, r0 = R * q + 1, 2 * R
    seed_ell = R if q % 2 else R - 1
    seed = FamilyStep("seed", 0, n0, r0, seed_ell, "known")
    if t == 2:
        if not ((R >= 4 and (q == 4 or q >= 7)) or (q == 5 and R in (4, 5))):
            raise ConstructionError(f"t=2 is not covered for q={q}, R={R}")
        return FamilyCode(q, R, t, [seed], "seed", w_variant)
    if R < 4 or q < 7:
        raise ConstructionError(f"liftings to t={t} need q >= 7 and R >= 4")
    if q % 2:
        lo = ceil_log(q, R) + 3
        if t < lo:
            raise ConstructionError(f"t={t} is inadmissible for odd q={q}, R={R}: need t=2 or t>={lo}")
        m = t - 2
        step = FamilyStep("qm1", m, q**m * n0, r0 + R * m, R, "lifting")
        return FamilyCode(q, R, t, [seed, step], "odd", w_variant)
    m1 = even_m1(q, R)
    wcols = (lambda m: theta(m, q)) if w_variant == "literal" else (lambda m: theta(m - 1, q))
    if t < m1 + 2:
        raise ConstructionError(f"t={t} is inadmissible for even q={q}, R={R}: need t=2 or t>={m1 + 2}")
    if t < 3 * m1 + 2:
        m = t - 2
        step = FamilyStep("qm2", m, q**m * n0 + wcols(m), r0 + R * m, R, "lifting")
        return FamilyCode(q, R, t, [seed, step], "even-qm2", w_variant)
    mid = FamilyStep("qm2", m1, q**m1 * n0 + wcols(m1), r0 + R * m1, R, "lifting")
    m2 = t - 2 - m1
    if q**m2 < mid.n - 1:  # pragma: no cover - implied by t >= 3 m1 + 2
        raise ConstructionError("QM1 step is too short")
    step = FamilyStep("qm1", m2, q**m2 * mid.n, mid.r + R * m2, R, "lifting")
    return FamilyCode(q, R, t, [seed, mid, step], "even-qm2-qm1", w_variant)


def admissible_t(q: int, R: int, t_max: int) -> list[int]:
    out = []
    for t in range(2, t_max + 1):
        try:
            family_codimension_tR(q, R, t)
        except ConstructionError:
            continue
        out.append(t)
    return out
