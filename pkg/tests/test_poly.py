import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from longcycle.errors import InvalidInputError
from longcycle.gf2k import make_field, mul
from longcycle.poly import (PolyRing, TriPoly, coeff, coeff_slice_W, monomial, poly_add, poly_mul,
                            poly_one, poly_zero)

CTX = make_field(4)
CAPS = (3, 2, 3)


@st.composite
def polys(draw, ctx=CTX, caps=CAPS):
    shape = tuple(c + 1 for c in caps)
    flat = draw(st.lists(st.integers(0, ctx.order - 1), min_size=int(np.prod(shape)),
                         max_size=int(np.prod(shape))))
    # keep many coefficients zero so products stay interesting after truncation
    mask = draw(st.lists(st.booleans(), min_size=len(flat), max_size=len(flat)))
    flat = [c if m else 0 for c, m in zip(flat, mask)]
    return TriPoly(ctx, caps, np.array(flat, dtype=np.uint64).reshape(shape))


def naive_mul(p: TriPoly, q: TriPoly) -> dict:
    out: dict = {}
    for (a, b, c), x in p.terms().items():
        for (d, e, f), y in q.terms().items():
            key = (a + d, b + e, c + f)
            if all(k <= cap for k, cap in zip(key, p.caps)):
                out[key] = out.get(key, 0) ^ mul(p.ctx, x, y)
    return {k: v for k, v in out.items() if v}


W = monomial(CTX, CAPS, 1, 1, 0, 0)
Y = monomial(CTX, CAPS, 1, 0, 1, 0)
Z = monomial(CTX, CAPS, 1, 0, 0, 1)
ONE = poly_one(CTX, CAPS)


def test_monomial_w():
    assert W.terms() == {(1, 0, 0): 1}


def test_examples_from_definitions():
    assert (W + Y) + (Y + Z) == W + Z
    assert (Y * Z).terms() == {(0, 1, 1): 1}
    assert (W + ONE) * (W + ONE) == W * W + ONE
    w3 = W * W * W
    assert (w3 * W).is_zero()
    yz = Y * Z
    assert coeff(yz, 0, 1, 1) == 1
    assert coeff(yz, 1, 0, 0) == 0
    assert np.array_equal(coeff_slice_W(W * Y + Z, 1), coeff_slice_W(Y, 0))


@given(polys())
def test_additive_identities(p):
    assert poly_zero(CTX, CAPS) + p == p
    assert p + p == poly_zero(CTX, CAPS)
    assert poly_one(CTX, CAPS) * p == p


@given(polys(), polys())
def test_product_matches_naive_expansion(p, q):
    assert poly_mul(p, q).terms() == naive_mul(p, q)
    assert p * q == q * p


@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


def test_mixing_rings_is_an_error():
    other = poly_one(make_field(3), CAPS)
    with pytest.raises(InvalidInputError):
        poly_add(ONE, other)
    with pytest.raises(InvalidInputError):
        ONE * poly_one(CTX, (3, 3, 3))


def test_exponent_and_coefficient_guards():
    with pytest.raises(InvalidInputError):
        monomial(CTX, CAPS, 1, 4, 0, 0)
    with pytest.raises(InvalidInputError):
        monomial(CTX, CAPS, 16, 0, 0, 0)
    with pytest.raises(InvalidInputError):
        coeff_slice_W(ONE, 5)


def test_ring_interface_and_hashing():
    ring = PolyRing(CTX, CAPS)
    assert ring.add(ring.one, ring.zero) == ring.one
    assert ring.constant(7) * ring.constant(1) == ring.constant(7)
    assert len({ring.one, poly_one(CTX, CAPS), ring.zero}) == 2
    assert repr(ring.zero) == "TriPoly(0)"
    assert "W" in repr(W + Y)
