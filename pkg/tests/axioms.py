"""Exhaustive field-axiom check over the full addition and multiplication tables."""

from __future__ import annotations

import numpy as np

from covsat.gf import FieldCtx


def full_tables(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    x = ctx.elements()
    A = np.asarray(ctx.add(x[:, None], x[None, :]), dtype=np.int64)
    M = np.asarray(ctx.mul(x[:, None], x[None, :]), dtype=np.int64)
    return A, M


def axiom_failures(ctx: FieldCtx) -> list[str]:
    """Names of the violated axioms; every pair and triple is checked."""
    q = ctx.q
    A, M = full_tables(ctx)
    x = np.arange(q)
    bad = []
    if not (A == A.T).all():
        bad.append("add commutative")
    if not (M == M.T).all():
        bad.append("mul commutative")
    if not (A[0] == x).all():
        bad.append("add identity")
    if not (M[1] == x).all():
        bad.append("mul identity")
    if not (M[0] == 0).all():
        bad.append("zero absorbs")
    if not ((A == 0).sum(axis=1) == 1).all():
        bad.append("additive inverse")
    if not ((M[1:, 1:] == 1).sum(axis=1) == 1).all():
        bad.append("multiplicative inverse")
    # latin-square rows: no zero divisors, unique solutions
    if not all(len(np.unique(M[a])) == q for a in range(1, q)):
        bad.append("no zero divisors")
    for a in range(q):
        # (a+b)+c == a+(b+c) and (ab)c == a(bc) and a(b+c) == ab+ac, all b, c
        if not (A[A[a]][:, :] == A[a][A]).all():
            bad.append("add associative")
            break
        if not (M[M[a]] == M[a][M]).all():
            bad.append("mul associative")
            break
        if not (M[a][A] == A[M[a][:, None], M[a][None, :]]).all():
            bad.append("distributive")
            break
    if not (ctx.inv(x[1:]) == np.argmax(M[1:, 1:] == 1, axis=1) + 1).all():
        bad.append("inverse table")
    return bad
