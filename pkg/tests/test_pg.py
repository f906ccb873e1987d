import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from covsat.codes import covering_radius, set_matrix_bridge
from covsat.constructions import construction_s, triangle_double_blocking
from covsat.gf import gf
from covsat.linalg import normalize
from covsat.pg import (GeometryError, PointSet, ProjPoint, baer_embed, coverage_levels,
                       enumerate_points, essential_points, incidence_counts, is_double_blocking,
                       is_minimal_saturating, point_ranks, points_from_ranks, saturation_level,
                       theta)


@pytest.mark.parametrize("N,q", [(1, 2), (2, 3), (2, 4), (3, 5), (4, 2), (2, 9), (5, 3)])
def test_enumeration_counts_and_order(N, q):
    P = enumerate_points(N, gf(q))
    assert len(P) == theta(N, q) == sum(q**i for i in range(N + 1))
    assert list(P.ranks()) == list(range(len(P)))
    ref = list(oracle.all_points(oracle.PolyField(gf(q).p, gf(q).modulus), N + 1))
    assert {tuple(int(x) for x in row) for row in P.coords} == set(ref)


@given(st.sampled_from([2, 3, 4, 5, 7, 8]), st.integers(1, 4), st.data())
@settings(max_examples=80, deadline=None)
def test_rank_roundtrip(q, N, data):
    total = theta(N, q)
    ranks = np.array(data.draw(st.lists(st.integers(0, total - 1), min_size=1, max_size=20)))
    pts = points_from_ranks(q, N, ranks)
    assert (point_ranks(q, pts) == ranks).all()


@given(st.sampled_from([3, 4, 5, 7, 9]), st.data())
@settings(max_examples=60, deadline=None)
def test_normalize_is_idempotent_and_scale_invariant(q, data):
    ctx = gf(q)
    v = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=3, max_size=3)))
    if not v.any():
        v[0] = 1
    c = data.draw(st.integers(1, q - 1))
    n1 = normalize(ctx, v)
    assert (normalize(ctx, n1) == n1).all()
    assert (normalize(ctx, ctx.mul(c, v)) == n1).all()
    assert ProjPoint.of(ctx, v).coords == tuple(int(x) for x in n1)


def test_point_set_validation():
    ctx = gf(3)
    with pytest.raises(GeometryError):
        PointSet(ctx, [[2, 0, 0]])
    with pytest.raises(GeometryError):
        PointSet(ctx, [[0, 0, 0]])
    with pytest.raises(GeometryError):
        PointSet(ctx, [[1, 0, 0], [1, 0, 0]])
    S = PointSet.from_vectors(ctx, [[2, 0, 0], [1, 0, 0], [0, 2, 1]])
    assert S.coords.tolist() == [[1, 0, 0], [0, 1, 2]]
    assert len(S.without(0)) == 1 and len(S.with_points([[0, 0, 2]])) == 3
    with pytest.raises(ValueError):
        S.coords[0, 0] = 0  # coordinates are read-only


def _random_set(data, q, N, max_size=7):
    total = theta(N, q)
    ranks = data.draw(st.lists(st.integers(0, total - 1), min_size=1, max_size=max_size, unique=True))
    return PointSet(gf(q), points_from_ranks(q, N, np.array(ranks)))


@given(st.sampled_from([(2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (2, 4)]), st.data())
@settings(max_examples=60, deadline=None)
def test_coverage_levels_match_enumeration(qN, data):
    q, N = qN
    S = _random_set(data, q, N)
    F = oracle.PolyField(S.ctx.p, S.ctx.modulus)
    ref = oracle.coverage_levels(F, [tuple(int(x) for x in p) for p in S.coords])
    got = coverage_levels(S)
    pts = enumerate_points(N, S.ctx).coords
    for rank, p in enumerate(pts):
        assert got[rank] == ref.get(tuple(int(x) for x in p), 0)


@given(st.sampled_from([(2, 3), (3, 2), (3, 3), (4, 2), (5, 2), (2, 4), (7, 2)]), st.data())
@settings(max_examples=40, deadline=None)
def test_saturation_covering_duality(qN, data):
    """rho-saturating set <=> its points as columns give covering radius rho + 1."""
    q, N = qN
    S = _random_set(data, q, N, max_size=9)
    lvl = saturation_level(S)
    H = set_matrix_bridge(S)
    if lvl is None:
        assert H.rank() < H.r
    else:
        assert covering_radius(H) == lvl + 1


@given(st.sampled_from([(2, 3), (3, 2), (4, 2), (3, 3)]), st.data())
@settings(max_examples=40, deadline=None)
def test_minimality_forced_matches_brute(qN, data):
    q, N = qN
    S = _random_set(data, q, N, max_size=8)
    lvl = saturation_level(S)
    if lvl is None:
        return
    assert is_minimal_saturating(S, lvl, "forced") == is_minimal_saturating(S, lvl, "brute")
    ess = essential_points(S, lvl)
    for j in range(len(S)):
        rest = coverage_levels(S.without(j))
        lost = np.nonzero((rest == 0) | (rest > lvl + 1))[0]
        assert list(ess[j]) == list(lost)


def test_minimality_rejects_wrong_level():
    S = construction_s(1, gf(4))
    with pytest.raises(GeometryError):
        is_minimal_saturating(S, 2)
    with pytest.raises(GeometryError):
        is_minimal_saturating(S, 0)


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_triangle_is_double_blocking(q):
    T = triangle_double_blocking(gf(q))
    assert len(T) == 3 * q
    assert is_double_blocking(T)
    F = oracle.PolyField(gf(q).p, gf(q).modulus)
    ref = oracle.lines_hit(F, [tuple(int(x) for x in p) for p in T.coords])
    assert list(incidence_counts(T)) == ref
    # minimal: every deletion leaves a line with a single point
    assert not any(is_double_blocking(T.without(j)) for j in range(len(T)))


def test_line_is_blocking_not_double():
    ctx = gf(5)
    line = PointSet(ctx, [p for p in enumerate_points(2, ctx).coords if p[0] == 0])
    counts = incidence_counts(line)
    assert counts.min() == 1 and counts.max() == 6
    assert not is_double_blocking(line)


@pytest.mark.parametrize("small,big", [(2, 4), (3, 9), (4, 16)])
def test_baer_embedding_of_double_blocking_set_saturates(small, big):
    T = triangle_double_blocking(gf(small))
    B = baer_embed(T, gf(big))
    assert len(B) == len(T)
    assert saturation_level(B) == 1


def test_baer_embedding_needs_quadratic_extension():
    with pytest.raises(GeometryError):
        baer_embed(triangle_double_blocking(gf(3)), gf(27))
