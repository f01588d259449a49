"""Truncated polynomials in W, Y, Z over GF(2^kappa).

A :class:`TriPoly` stores a dense cube of coefficients indexed by the exponent
triple ``(dW, dY, dZ)``.  Every exponent is capped per variable; products drop
terms beyond the caps, which makes the set of such polynomials a quotient ring
of F[W, Y, Z] by a monomial ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .gf2k import FieldCtx, mul_array

Caps = tuple[int, int, int]


class TriPoly:
    __slots__ = ("ctx", "caps", "coeffs")

    def __init__(self, ctx: FieldCtx, caps: Caps, coeffs: np.ndarray):
        caps = tuple(int(c) for c in caps)
        shape = tuple(c + 1 for c in caps)
        if coeffs.shape != shape:
            raise InvalidInputError(f"coefficient cube has shape {coeffs.shape}, expected {shape}")
        coeffs = coeffs.astype(np.uint64, copy=False)
        coeffs.flags.writeable = False
        self.ctx = ctx
        self.caps = caps
        self.coeffs = coeffs

    def _check(self, other: "TriPoly"):
        if not isinstance(other, TriPoly):
            raise InvalidInputError("operand is not a TriPoly")
        if other.ctx != self.ctx or other.caps != self.caps:
            raise InvalidInputError("operands live in different rings (field or caps differ)")

    def __add__(self, other: "TriPoly") -> "TriPoly":
        return poly_add(self, other)

    def __mul__(self, other: "TriPoly") -> "TriPoly":
        return poly_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriPoly):
            return NotImplemented
        return (self.ctx == other.ctx and self.caps == other.caps
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.ctx, self.caps, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def terms(self) -> dict[tuple[int, int, int], int]:
        return {tuple(int(i) for i in idx): int(self.coeffs[idx])
                for idx in zip(*np.nonzero(self.coeffs))}

    def __repr__(self):
        if self.is_zero():
            return "TriPoly(0)"
        parts = []
        for (w, y, z), c in sorted(self.terms().items()):
            mono = "".join(f"{v}^{d}" if d > 1 else v
                           for v, d in (("W", w), ("Y", y), ("Z", z)) if d)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "TriPoly(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class PolyRing:
    """Ring interface (zero/one/add/mul) over TriPoly for generic routines."""

    ctx: FieldCtx
    caps: Caps

    @property
    def zero(self) -> TriPoly:
        return poly_zero(self.ctx, self.caps)

    @property
    def one(self) -> TriPoly:
        return poly_one(self.ctx, self.caps)

    def add(self, p: TriPoly, q: TriPoly) -> TriPoly:
        return poly_add(p, q)

    def mul(self, p: TriPoly, q: TriPoly) -> TriPoly:
        return poly_mul(p, q)

    def constant(self, c: int) -> TriPoly:
        return monomial(self.ctx, self.caps, c, 0, 0, 0)


def _validate_caps(caps) -> Caps:
    caps = tuple(int(c) for c in caps)
    if len(caps) != 3 or min(caps) < 0:
        raise InvalidInputError(f"caps must be three non-negative integers, got {caps}")
    return caps


def poly_zero(ctx: FieldCtx, caps: Caps) -> TriPoly:
    caps = _validate_caps(caps)
    return TriPoly(ctx, caps, np.zeros(tuple(c + 1 for c in caps), dtype=np.uint64))


def poly_one(ctx: FieldCtx, caps: Caps) -> TriPoly:
    return monomial(ctx, caps, 1, 0, 0, 0)


def monomial(ctx: FieldCtx, caps: Caps, coeff: int, dW: int, dY: int, dZ: int) -> TriPoly:
    caps = _validate_caps(caps)
    _check_exponents(caps, dW, dY, dZ)
    if not 0 <= coeff < ctx.order:
        raise InvalidInputError(f"coefficient {coeff} is not an element of GF(2^{ctx.kappa})")
    c = np.zeros(tuple(x + 1 for x in caps), dtype=np.uint64)
    c[dW, dY, dZ] = coeff
    return TriPoly(ctx, caps, c)


def _check_exponents(caps: Caps, dW: int, dY: int, dZ: int):
    for d, cap, name in zip((dW, dY, dZ), caps, "WYZ"):
        if not 0 <= d <= cap:
            raise InvalidInputError(f"exponent {d} of {name} outside 0..{cap}")


def poly_add(p: TriPoly, q: TriPoly) -> TriPoly:
    p._check(q)
    return TriPoly(p.ctx, p.caps, p.coeffs ^ q.coeffs)


def poly_mul(p: TriPoly, q: TriPoly) -> TriPoly:
    """Truncated product; terms with any exponent above its cap are dropped."""
    p._check(q)
    if np.count_nonzero(p.coeffs) > np.count_nonzero(q.coeffs):
        p, q = q, p
    cw, cy, cz = p.caps
    out = np.zeros_like(p.coeffs)
    for i, j, l in zip(*np.nonzero(p.coeffs)):
        block = q.coeffs[: cw + 1 - i, : cy + 1 - j, : cz + 1 - l]
        out[i:, j:, l:] ^= mul_array(p.ctx, p.coeffs[i, j, l], block)
    return TriPoly(p.ctx, p.caps, out)


def coeff(p: TriPoly, dW: int, dY: int, dZ: int) -> int:
    _check_exponents(p.caps, dW, dY, dZ)
    return int(p.coeffs[dW, dY, dZ])


def coeff_slice_W(p: TriPoly, t: int) -> np.ndarray:
    """All coefficients of W^t as a (dY, dZ) array (a bivariate view in Y, Z)."""
    if not 0 <= t <= p.caps[0]:
        raise InvalidInputError(f"W exponent {t} outside 0..{p.caps[0]}")
    return p.coeffs[t].copy()
