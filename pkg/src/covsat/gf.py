"""Finite fields GF(p^k) with index-encoded elements.

An element of GF(p^k) is stored as an integer in ``0..q-1``: the base-``p``
digits of the index are the coefficients of its polynomial residue, constant
term first.  With this encoding addition is digit-wise addition modulo ``p``
(plain XOR when ``p == 2``), and a vector over GF(q) written as a base-``q``
number is simultaneously a base-``p`` number, which the syndrome kernels rely
on.

Fields up to ``TABLE_LIMIT`` elements carry full ``q x q`` addition and
multiplication tables; larger fields (up to ``MAX_FIELD_ORDER``) fall back on
digit arithmetic for addition and log/antilog tables for multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_FIELD_ORDER = 1 << 22
TABLE_LIMIT = 4096


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise if ``q`` is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists constant term first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree in lexicographic order.

    The order compares the non-leading coefficients from the top down, i.e.
    it is the order of the integer ``sum(c_i * p**i)``.
    """
    for code in range(p**degree):
        coeffs = []
        for _ in range(degree):
            code, c = divmod(code, p)
            coeffs.append(c)
        yield coeffs + [1]


def is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _trim(_poly_mod(poly, g, p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for poly in _monic_polys(p, k):
        if is_irreducible_mod_p(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


# ---------------------------------------------------------------------------


def _digits(values: np.ndarray, base: int, ndigits: int) -> np.ndarray:
    """Base-``base`` digits, least significant first: shape ``values.shape + (ndigits,)``."""
    values = np.asarray(values, dtype=np.int64)
    out = np.empty(values.shape + (ndigits,), dtype=np.int64)
    v = values.copy()
    for i in range(ndigits):
        v, out[..., i] = np.divmod(v, base)
    return out


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(p^k) realised modulo a monic irreducible polynomial.

    Build instances through :func:`build_field` (or :func:`field_from_modulus`
    when the modulus is read back from a file).  All array-valued methods work
    elementwise on integer indices and broadcast like numpy ufuncs.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    primitive: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    add_table: np.ndarray | None = field(repr=False, default=None)
    mul_table: np.ndarray | None = field(repr=False, default=None)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def dtype(self):
        return np.uint8 if self.q <= 256 else (np.uint16 if self.q <= 65536 else np.uint32)

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __str__(self):
        return f"GF({self.q})"

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, int(value))

    # -- arithmetic on indices ------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        if self.p == 2:
            return np.bitwise_xor(a, b)
        s = 0
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        for i in range(self.k):
            w = self.p**i
            s = s + (((a // w) + (b // w)) % self.p) * w
        return s

    def neg(self, a):
        if self.p == 2:
            return a
        a = np.asarray(a, dtype=np.int64)
        s = 0
        for i in range(self.k):
            w = self.p**i
            s = s + ((-(a // w)) % self.p) * w
        return s

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log[a]
        lb = self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + str(self))
        out = self.exp[(-self.log[a]) % (self.q - 1)]
        return out if out.ndim else int(out)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a) if a.ndim else 1
        if e < 0:
            a = np.asarray(self.inv(a))
            e = -e
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        out = np.where(a == 0, 0, out)
        return out if out.ndim else int(out)

    @property
    def inv_table(self) -> np.ndarray:
        """Inverse of every index; entry 0 is set to 0 as a placeholder."""
        t = np.zeros(self.q, dtype=np.int64)
        t[1:] = self.exp[(-self.log[1:]) % (self.q - 1)]
        return t

    # -- polynomial view --------------------------------------------------------

    def to_poly(self, a: int) -> list[int]:
        return [int(d) for d in _digits(np.int64(a), self.p, self.k)]

    def from_poly(self, coeffs: Sequence[int]) -> int:
        coeffs = _poly_mod(list(coeffs), self.modulus, self.p) if len(coeffs) > self.k else coeffs
        return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs)))

    def frobenius(self, a, power: int = 1):
        """``a ** (p ** power)``."""
        return self.pow(a, self.p**power)


@dataclass(frozen=True)
class FieldElement:
    """A single element of a :class:`FieldCtx`, with operator overloading."""

    owner: FieldCtx
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.owner.q:
            raise FieldError(f"{self.value} is not an element index of {self.owner}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.owner != self.owner:
                raise FieldError(f"cannot mix {self.owner} and {other.owner} elements")
            return other.value
        if isinstance(other, (int, np.integer)) and other in (0, 1):
            return int(other)
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.owner, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.owner.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.owner.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.owner.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.owner.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in " + str(self.owner))
        return self._wrap(self.owner.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.owner.neg(self.value))

    def __pow__(self, e: int):
        if self.value == 0 and e < 0:
            raise ZeroDivisionError("inverse of zero in " + str(self.owner))
        return self._wrap(self.owner.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.owner.inv(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.owner}({self.value})"


# ---------------------------------------------------------------------------


def _mul_by(coeffs_a: list[int], b: int, p: int, k: int, modulus) -> int:
    db = [int(d) for d in _digits(np.int64(b), p, k)]
    prod = _poly_mod(_poly_mul(coeffs_a, db, p), modulus, p)
    return sum(c * p**i for i, c in enumerate(prod))


def _poly_pow_index(a: int, e: int, p: int, k: int, modulus) -> int:
    result = 1
    base = a
    while e:
        if e & 1:
            result = _mul_by([int(d) for d in _digits(np.int64(result), p, k)], base, p, k, modulus)
        base = _mul_by([int(d) for d in _digits(np.int64(base), p, k)], base, p, k, modulus)
        e >>= 1
    return result


def _multiplication_map(p: int, k: int, modulus, g: int) -> np.ndarray:
    """Index table of ``x -> g*x`` on all of GF(p^k), built column by column."""
    q = p**k
    # images of the basis monomials 1, x, ..., x^{k-1}, as digit vectors
    images = []
    for i in range(k):
        mono = [0] * i + [1]
        images.append(_digits(np.int64(_mul_by(mono, g, p, k, modulus)), p, k))
    images = np.array(images, dtype=np.int64)  # (k, k)
    digits = _digits(np.arange(q), p, k)  # (q, k)
    prod = (digits @ images) % p
    weights = p ** np.arange(k, dtype=np.int64)
    return prod @ weights


def field_from_modulus(p: int, modulus: Sequence[int]) -> FieldCtx:
    """Field defined by an explicit monic irreducible ``modulus`` over GF(p)."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    modulus = tuple(int(c) % p for c in modulus)
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        raise FieldError("modulus must be monic of degree >= 1")
    q = p**k
    if q > MAX_FIELD_ORDER:
        raise FieldError(f"GF({p}^{k}) exceeds the supported order {MAX_FIELD_ORDER}")
    if not is_irreducible_mod_p(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")

    factors = prime_factors(q - 1) if q > 2 else []
    primitive = None
    for g in range(1, q):
        if all(_poly_pow_index(g, (q - 1) // f, p, k, modulus) != 1 for f in factors):
            primitive = g
            break
    assert primitive is not None

    step = _multiplication_map(p, k, modulus, primitive)
    exp = np.empty(2 * (q - 1), dtype=np.int64)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        x = int(step[x])
    exp[q - 1:] = exp[: q - 1]
    log = np.zeros(q, dtype=np.int64)
    log[exp[: q - 1]] = np.arange(q - 1)
    if len(np.unique(exp[: q - 1])) != q - 1:  # pragma: no cover - guarded by the order test
        raise FieldError("primitive element search failed")

    add_table = mul_table = None
    if q <= TABLE_LIMIT:
        dt = np.uint8 if q <= 256 else np.uint16
        idx = np.arange(q, dtype=np.int64)
        if p == 2:
            add_table = np.bitwise_xor.outer(idx, idx).astype(dt)
        else:
            acc = np.zeros((q, q), dtype=np.int64)
            for i in range(k):
                w = p**i
                d = (idx // w) % p
                acc += ((d[:, None] + d[None, :]) % p) * w
            add_table = acc.astype(dt)
        lg = log[1:]
        mul_table = np.zeros((q, q), dtype=dt)
        mul_table[1:, 1:] = exp[(lg[:, None] + lg[None, :]) % (q - 1)]
        add_table.setflags(write=False)
        mul_table.setflags(write=False)
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldCtx(p, k, modulus, primitive, exp, log, add_table, mul_table)


@lru_cache(maxsize=None)
def build_field(p: int, k: int = 1) -> FieldCtx:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus.

    >>> F = build_field(3, 2)
    >>> F.q, F.modulus, F.primitive
    (9, (1, 0, 1), 4)
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError("degree must be >= 1")
    if p**k > MAX_FIELD_ORDER:
        raise FieldError(f"GF({p}^{k}) exceeds the supported order {MAX_FIELD_ORDER}")
    return field_from_modulus(p, smallest_irreducible(p, k))


def gf(q: int) -> FieldCtx:
    """Shorthand: the canonical field with ``q`` elements."""
    return build_field(*prime_power(q))


# ---------------------------------------------------------------------------
# subfields and extensions


@dataclass(frozen=True, eq=False)
class Embedding:
    """Injective ring homomorphism ``small -> big`` given by an index table."""

    small: FieldCtx
    big: FieldCtx
    image: np.ndarray = field(repr=False)

    def __call__(self, a):
        return self.image[a]

    def preimage(self) -> np.ndarray:
        """Table big-index -> small-index, -1 outside the image."""
        back = np.full(self.big.q, -1, dtype=np.int64)
        back[self.image] = np.arange(self.small.q)
        return back


def _poly_eval(ctx: FieldCtx, coeffs: Sequence[int], x):
    """Evaluate a polynomial with coefficients in ``ctx`` at ``x`` (Horner)."""
    acc = np.zeros_like(np.asarray(x, dtype=np.int64))
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def subfield_embed(small: FieldCtx, big: FieldCtx) -> Embedding:
    """Embed GF(p^a) into GF(p^b) for ``a | b``.

    The generator of ``small`` goes to the smallest-index root of its modulus
    in ``big``; the image is the fixed field of ``x -> x^(p^a)``.
    """
    if small.p != big.p:
        raise FieldError(f"characteristic mismatch: {small} vs {big}")
    if big.k % small.k:
        raise FieldError(f"{small} is not a subfield of {big}")
    xs = big.elements()
    roots = np.nonzero(_poly_eval(big, small.modulus, xs) == 0)[0]
    if small.k == 1:
        gen = 0
    else:
        gen = int(roots[0])
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(int(big.mul(powers[-1], gen)))
    digits = _digits(small.elements(), small.p, small.k)
    image = np.zeros(small.q, dtype=np.int64)
    for i, pw in enumerate(powers):
        # digit d times the basis element: repeated addition of the prime-field constant
        image = big.add(image, big.mul(digits[:, i], pw))
    image = np.asarray(image, dtype=np.int64)
    image.setflags(write=False)
    return Embedding(small, big, image)


def _base_poly_mod(ctx: FieldCtx, a: list[int], m: Sequence[int]) -> list[int]:
    """Remainder of ``a`` modulo monic ``m``, coefficients in ``ctx``."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        shift = len(a) - 1 - dm
        c = a[-1]
        for i, mi in enumerate(m):
            a[shift + i] = int(ctx.sub(a[shift + i], ctx.mul(c, mi)))
    return a


def is_irreducible_over(ctx: FieldCtx, poly: Sequence[int]) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(ctx.q**d):
            g = [int(x) for x in _digits(np.int64(code), ctx.q, d)] + [1]
            if not any(_base_poly_mod(ctx, list(poly), g)):
                return False
    return deg >= 1


@dataclass(frozen=True, eq=False)
class ExtensionMap:
    """GF(q^m) as an m-dimensional vector space over GF(q).

    ``basis`` holds ``1, g, g^2, ..., g^(m-1)`` for a root ``g`` of the
    extension modulus; ``coords[z]`` is the coordinate vector of ``z``.
    """

    base: FieldCtx
    ext: FieldCtx
    m: int
    modulus: tuple[int, ...]
    embedding: Embedding = field(repr=False)
    basis: np.ndarray = field(repr=False)
    coords: np.ndarray = field(repr=False)

    def embed(self, a):
        return self.embedding(a)

    def rep(self, z) -> np.ndarray:
        """Coordinate vector(s) of ``z`` over the base field, length ``m``."""
        return self.coords[z]

    def from_rep(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=np.int64)
        acc = np.zeros(vec.shape[:-1], dtype=np.int64)
        for i in range(self.m):
            acc = self.ext.add(acc, self.ext.mul(self.embedding(vec[..., i]), self.basis[i]))
        return acc


def build_extension(base: FieldCtx, m: int) -> ExtensionMap:
    """Realise GF(q^m) over ``base`` modulo the smallest monic irreducible of degree ``m``."""
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    if base.q**m > MAX_FIELD_ORDER:
        raise FieldError(f"GF({base.q}^{m}) exceeds the supported order {MAX_FIELD_ORDER}")
    ext = build_field(base.p, base.k * m)
    emb = subfield_embed(base, ext)
    modulus = None
    for code in range(base.q**m):
        cand = [int(x) for x in _digits(np.int64(code), base.q, m)] + [1]
        if m == 1 or is_irreducible_over(base, cand):
            modulus = tuple(cand)
            break
    assert modulus is not None
    if m == 1:
        root = 0
    else:
        lifted = [int(emb(c)) for c in modulus]
        roots = np.nonzero(_poly_eval(ext, lifted, ext.elements()) == 0)[0]
        root = int(roots[0])
    basis = [1]
    for _ in range(m - 1):
        basis.append(int(ext.mul(basis[-1], root)))
    basis = np.array(basis, dtype=np.int64)

    vecs = _digits(np.arange(base.q**m), base.q, m)  # every coordinate vector
    values = np.zeros(len(vecs), dtype=np.int64)
    for i in range(m):
        values = ext.add(values, ext.mul(emb(vecs[:, i]), basis[i]))
    values = np.asarray(values, dtype=np.int64)
    if len(np.unique(values)) != ext.q:  # pragma: no cover - basis is independent by construction
        raise FieldError("extension basis is not independent")
    coords = np.empty((ext.q, m), dtype=np.int64)
    coords[values] = vecs
    coords.setflags(write=False)
    basis.setflags(write=False)
    return ExtensionMap(base, ext, m, modulus, emb, basis, coords)
