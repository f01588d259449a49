"""Arithmetic in GF(2^kappa).

Elements are plain Python ints holding the residue polynomial in their bits
(bit i is the coefficient of X^i).  A :class:`FieldCtx` carries the degree and
the reduction polynomial.  Scalar operations work for any kappa up to 64; the
numpy helpers (:func:`mul_array`, :func:`field_tables`) use log/antilog tables
and are limited to kappa <= 16, which covers graphs with up to 2^15 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError

# Least irreducible polynomial over GF(2) of each degree 1..64, read as an
# integer.  Degree 8 gives 0x11b; degree 2 gives X^2+X+1.
IRREDUCIBLE = (
    0x2, 0x7, 0xb, 0x13,
    0x25, 0x43, 0x83, 0x11b,
    0x203, 0x409, 0x805, 0x1009,
    0x201b, 0x4021, 0x8003, 0x1002b,
    0x20009, 0x40009, 0x80027, 0x100009,
    0x200005, 0x400003, 0x800021, 0x100001b,
    0x2000009, 0x400001b, 0x8000027, 0x10000003,
    0x20000005, 0x40000003, 0x80000009, 0x10000008d,
    0x20000004b, 0x40000001b, 0x800000005, 0x1000000035,
    0x200000003f, 0x4000000063, 0x8000000011, 0x10000000039,
    0x20000000009, 0x40000000027, 0x80000000059, 0x100000000021,
    0x20000000001b, 0x400000000003, 0x800000000021, 0x100000000002d,
    0x2000000000071, 0x400000000001d, 0x800000000004b, 0x10000000000009,
    0x20000000000047, 0x4000000000007d, 0x80000000000047, 0x100000000000095,
    0x200000000000011, 0x400000000000063, 0x80000000000007b, 0x1000000000000003,
    0x2000000000000027, 0x4000000000000069, 0x8000000000000003, 0x1000000000000001b,
)

MAX_KAPPA = len(IRREDUCIBLE)
TABLE_KAPPA = 16


@dataclass(frozen=True)
class FieldCtx:
    kappa: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.kappa <= MAX_KAPPA:
            raise InvalidInputError(f"kappa must lie in 1..{MAX_KAPPA}, got {self.kappa}")
        if self.modulus.bit_length() != self.kappa + 1:
            raise InvalidInputError("modulus degree does not match kappa")

    @property
    def order(self) -> int:
        return 1 << self.kappa

    # ring interface used by the generic determinant/permanent routines
    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return mul(self, a, b)

    def inv(self, a: int) -> int:
        return inv(self, a)

    def sample(self, rng) -> int:
        return sample(self, rng)


def field_for_order(n: int) -> FieldCtx:
    """Field GF(2^(1 + ceil(log2 n))) used for an n-vertex graph."""
    if n < 1:
        raise InvalidInputError(f"graph order must be positive, got {n}")
    kappa = 1 + (n - 1).bit_length()
    return make_field(kappa)


def make_field(kappa: int) -> FieldCtx:
    if not 1 <= kappa <= MAX_KAPPA:
        raise InvalidInputError(f"kappa must lie in 1..{MAX_KAPPA}, got {kappa}")
    return FieldCtx(kappa, IRREDUCIBLE[kappa - 1])


def add(ctx: FieldCtx, a: int, b: int) -> int:
    return a ^ b


def mul(ctx: FieldCtx, a: int, b: int) -> int:
    """Carry-less product of ``a`` and ``b`` reduced modulo ``ctx.modulus``."""
    top = 1 << ctx.kappa
    mod = ctx.modulus
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


def power(ctx: FieldCtx, a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = mul(ctx, r, a)
        a = mul(ctx, a, a)
        e >>= 1
    return r


def inv(ctx: FieldCtx, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return power(ctx, a, ctx.order - 2)


def sample(ctx: FieldCtx, rng: np.random.Generator) -> int:
    """Uniform element of the field drawn from ``rng``."""
    return int(rng.integers(0, ctx.order, dtype=np.uint64, endpoint=False))


def sample_array(ctx: FieldCtx, rng: np.random.Generator, size) -> np.ndarray:
    return rng.integers(0, ctx.order, size=size, dtype=np.uint64, endpoint=False)


@lru_cache(maxsize=None)
def field_tables(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    """Log and antilog tables with respect to the least primitive element.

    ``exp`` has length ``2*(q-1)`` so that ``exp[log[a] + log[b]]`` needs no
    reduction of the exponent.  ``log[0]`` is meaningless and set to 0.
    """
    if ctx.kappa > TABLE_KAPPA:
        raise InvalidInputError(f"table arithmetic supports kappa <= {TABLE_KAPPA}")
    q1 = ctx.order - 1
    for g in range(1, ctx.order):
        exp = np.zeros(2 * q1, dtype=np.int64)
        x = 1
        seen = 0
        for i in range(q1):
            exp[i] = x
            x = mul(ctx, x, g)
            if x == 1:
                seen = i + 1
                break
        if seen == q1:
            break
    exp[q1:] = exp[:q1]
    log = np.zeros(ctx.order, dtype=np.int64)
    log[exp[:q1]] = np.arange(q1)
    exp.flags.writeable = False
    log.flags.writeable = False
    return log, exp


def mul_array(ctx: FieldCtx, a, b) -> np.ndarray:
    """Elementwise field product of two broadcastable integer arrays."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if ctx.kappa <= TABLE_KAPPA:
        log, exp = field_tables(ctx)
        ai = a.astype(np.int64)
        bi = b.astype(np.int64)
        out = exp[log[ai] + log[bi]].astype(np.uint64)
        return np.where((ai == 0) | (bi == 0), np.uint64(0), out)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    b = b.copy()
    out = np.zeros(a.shape, dtype=np.uint64)
    top = np.uint64(1 << (ctx.kappa - 1))
    mod = np.uint64(ctx.modulus & ((1 << ctx.kappa) - 1))
    one = np.uint64(1)
    for _ in range(ctx.kappa):
        out ^= np.where(b & one, a, np.uint64(0))
        b >>= one
        carry = (a & top) != 0
        a = (a << one) & np.uint64((1 << ctx.kappa) - 1) if ctx.kappa < 64 else a << one
        a ^= np.where(carry, mod, np.uint64(0))
    return out
