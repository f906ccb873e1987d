import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from axioms import axiom_failures
from oracle import PolyField
from covsat.gf import (FieldError, build_extension, build_field, field_from_modulus, gf,
                       is_irreducible_mod_p, is_prime, prime_power, smallest_irreducible,
                       subfield_embed)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 64]


def test_prime_power_decomposition():
    assert prime_power(81) == (3, 4)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power(bad)
    assert [n for n in range(30) if is_prime(n)] == list(sympy.primerange(0, 30))


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (2, 8), (3, 2), (3, 5), (5, 3), (7, 2)])
def test_smallest_irreducible_matches_sympy(p, k):
    mod = smallest_irreducible(p, k)
    assert len(mod) == k + 1 and mod[-1] == 1
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(mod)), x, modulus=p)
    assert poly.is_irreducible
    # nothing lexicographically smaller (as an integer code) is irreducible
    code = sum(c * p**i for i, c in enumerate(mod[:-1]))
    for smaller in range(code):
        cand = [(smaller // p**i) % p for i in range(k)] + [1]
        assert not sympy.Poly(list(reversed(cand)), x, modulus=p).is_irreducible


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (5, 2)])
def test_irreducibility_test_agrees_with_sympy(p, k):
    x = sympy.symbols("x")
    for code in range(p**k):
        cand = [(code // p**i) % p for i in range(k)] + [1]
        expect = sympy.Poly(list(reversed(cand)), x, modulus=p).is_irreducible
        assert is_irreducible_mod_p(cand, p) == expect


@pytest.mark.parametrize("q", SMALL_Q)
def test_tables_match_polynomial_arithmetic(q):
    ctx = gf(q)
    ref = PolyField(ctx.p, ctx.modulus)
    pairs = [(a, b) for a in range(q) for b in range(q)] if q <= 32 else \
        [(a, b) for a in range(0, q, 3) for b in range(0, q, 5)]
    a = np.array([x for x, _ in pairs])
    b = np.array([y for _, y in pairs])
    assert list(ctx.add(a, b)) == [ref.add(x, y) for x, y in pairs]
    assert list(ctx.mul(a, b)) == [ref.mul(x, y) for x, y in pairs]


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_small(q):
    assert axiom_failures(gf(q)) == []


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27, 32])
def test_primitive_element_generates(q):
    ctx = gf(q)
    powers = {int(ctx.pow(ctx.primitive, e)) for e in range(q - 1)}
    assert powers == set(range(1, q))
    assert (ctx.exp[ctx.log[1:]] == np.arange(1, q)).all()


def test_prime_field_is_integers_mod_p():
    ctx = gf(7)
    assert ctx.modulus == (0, 1)
    x = np.arange(7)
    assert (ctx.add(x[:, None], x[None, :]) == (x[:, None] + x[None, :]) % 7).all()
    assert (ctx.mul(x[:, None], x[None, :]) == (x[:, None] * x[None, :]) % 7).all()


@given(st.sampled_from(SMALL_Q), st.data())
@settings(max_examples=60, deadline=None)
def test_element_operators(q, data):
    ctx = gf(q)
    a = ctx(data.draw(st.integers(0, q - 1)))
    b = ctx(data.draw(st.integers(1, q - 1)))
    assert (a / b) * b == a
    assert a - a == ctx(0)
    assert (a + b) - b == a
    assert -(-a) == a
    assert b ** (q - 1) == ctx(1)
    assert b * b.inverse() == ctx(1)
    assert a ** q == a


def test_element_errors():
    ctx = gf(5)
    with pytest.raises(FieldError):
        ctx(5)
    with pytest.raises(ZeroDivisionError):
        ctx(1) / ctx(0)
    with pytest.raises(FieldError):
        ctx(1) + gf(7)(1)


def test_frobenius_is_automorphism():
    ctx = gf(27)
    x = ctx.elements()
    F = ctx.frobenius(x)
    assert len(np.unique(F)) == 27
    assert (ctx.frobenius(x, 3) == x).all()
    y = x[::-1]
    assert (ctx.frobenius(ctx.mul(x, y)) == ctx.mul(F, ctx.frobenius(y))).all()


@pytest.mark.parametrize("small,big", [(2, 4), (2, 16), (4, 16), (3, 9), (3, 27), (5, 25), (9, 81)])
def test_subfield_embedding_is_homomorphism(small, big):
    s, b = gf(small), gf(big)
    emb = subfield_embed(s, b)
    x = s.elements()
    assert len(np.unique(emb(x))) == small
    X, Y = np.meshgrid(x, x)
    assert (emb(s.add(X, Y)) == b.add(emb(X), emb(Y))).all()
    assert (emb(s.mul(X, Y)) == b.mul(emb(X), emb(Y))).all()
    # image is the fixed field of y -> y^small
    fixed = {int(y) for y in b.elements() if int(b.pow(int(y), small)) == int(y)}
    assert fixed == set(int(v) for v in emb(x))
    back = emb.preimage()
    assert (back[emb(x)] == x).all()


def test_subfield_errors():
    with pytest.raises(FieldError):
        subfield_embed(gf(4), gf(8))
    with pytest.raises(FieldError):
        subfield_embed(gf(3), gf(8))


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (4, 2), (5, 2), (2, 1)])
def test_extension_coordinates_are_linear(q, m):
    base = gf(q)
    E = build_extension(base, m)
    z = E.ext.elements()
    assert (E.from_rep(E.rep(z)) == z).all()
    assert len({tuple(v) for v in E.rep(z)}) == q**m
    Z1, Z2 = np.meshgrid(z, z)
    assert (E.rep(E.ext.add(Z1, Z2)) == base.add(E.rep(Z1), E.rep(Z2))).all()
    c = base.elements()[:, None]
    assert (E.rep(E.ext.mul(E.embed(c), z[None, :])) == base.mul(c[..., None], E.rep(z)[None])).all()


def test_field_from_modulus_roundtrip_and_rejects_reducible():
    ctx = field_from_modulus(2, (1, 1, 0, 1))  # x^3 + x + 1
    assert ctx.q == 8 and ctx.modulus == (1, 1, 0, 1)
    assert axiom_failures(ctx) == []
    with pytest.raises(FieldError):
        field_from_modulus(2, (1, 0, 1))  # (x+1)^2
    assert build_field(2, 3) is build_field(2, 3)
