import random

import pytest

from loopzip.errors import InsufficientPrecision, NotAUnit, NotIntegral
from loopzip.gf import FieldSpec
from loopzip.witt import (
    IntPoly,
    WittCtx,
    WittFraction,
    ghost_poly,
    ghost_selftest,
    witt_neg_polys,
    witt_structure_polys,
)

F2 = FieldSpec.get(2, 1)
F3 = FieldSpec.get(3, 1)
F4 = FieldSpec.get(2, 2)


# -- independent integer oracle: W_N(F_p) = Z/p^N via Teichmuller digits ---------


def teich(a, p, mod):
    x = a % mod
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


def oracle_int_to_coords(n, p, length):
    coords = []
    rem = n % p**length
    for i in range(length):
        a = rem % p
        coords.append(a)
        rem = (rem - teich(a, p, p ** (length - i))) // p
    return tuple(coords)


def oracle_coords_to_int(coords, p):
    mod = p ** len(coords)
    return sum(p**i * teich(a, p, mod) for i, a in enumerate(coords)) % mod


# -- structure polynomials --------------------------------------------------------


def test_structure_poly_base_cases():
    for p in (2, 3, 5):
        sums, prods = witt_structure_polys(p, 2)
        nv = 4
        x0, x1 = IntPoly.var(nv, 0), IntPoly.var(nv, 1)
        y0, y1 = IntPoly.var(nv, 2), IntPoly.var(nv, 3)
        assert sums[0] == x0 + y0
        assert prods[0] == x0 * y0
    # ghost recursion over Z forces the minus sign at p=2
    sums, _ = witt_structure_polys(2, 2)
    nv = 4
    x0, x1 = IntPoly.var(nv, 0), IntPoly.var(nv, 1)
    y0, y1 = IntPoly.var(nv, 2), IntPoly.var(nv, 3)
    assert sums[1] == x1 + y1 - x0 * y0


@pytest.mark.parametrize("p,length", [(2, 4), (3, 4), (5, 2)])
def test_ghost_identities_exact(p, length):
    sums, prods = witt_structure_polys(p, length)
    nv = 2 * length
    for n in range(length):
        gx = ghost_poly(p, n, nv, 0)
        gy = ghost_poly(p, n, nv, length)
        acc_s = IntPoly(nv, {})
        acc_p = IntPoly(nv, {})
        for i in range(n + 1):
            acc_s = acc_s + sums[i].power(p ** (n - i)).scaled(p**i)
            acc_p = acc_p + prods[i].power(p ** (n - i)).scaled(p**i)
        assert acc_s == gx + gy
        assert acc_p == gx * gy
    negs = witt_neg_polys(p, length)
    for n in range(length):
        acc = IntPoly(length, {})
        for i in range(n + 1):
            acc = acc + negs[i].power(p ** (n - i)).scaled(p**i)
        assert acc == -ghost_poly(p, n, length, 0)


def test_structure_polys_deterministic():
    a = witt_structure_polys.__wrapped__(3, 3)
    b = witt_structure_polys.__wrapped__(3, 3)
    assert a == b


def test_length_cap():
    with pytest.raises(ValueError):
        witt_structure_polys(2, 5)
    with pytest.raises(ValueError):
        witt_structure_polys(5, 3)


def test_p5_short_length():
    rep = ghost_selftest(5, 2, 200, seed=0)
    assert rep["passed_samples"] == 200


# -- arithmetic against the integer oracle ----------------------------------------


@pytest.mark.parametrize("p,length", [(2, 2), (2, 3), (3, 2)])
def test_prime_field_arith_exhaustive(p, length):
    spec = FieldSpec.get(p, 1)
    ctx = WittCtx.get(spec, length)
    mod = p**length
    for x in range(mod):
        for y in range(mod):
            wx = ctx.from_coords([spec.element(c) for c in oracle_int_to_coords(x, p, length)])
            wy = ctx.from_coords([spec.element(c) for c in oracle_int_to_coords(y, p, length)])
            assert tuple(c.code for c in (wx + wy).coords) == oracle_int_to_coords(
                (x + y) % mod, p, length
            )
            assert tuple(c.code for c in (wx * wy).coords) == oracle_int_to_coords(
                (x * y) % mod, p, length
            )
            assert tuple(c.code for c in (-wx).coords) == oracle_int_to_coords(
                -x % mod, p, length
            )


def test_ghost_selftest_500():
    for p in (2, 3):
        for length in (2, 3, 4):
            rep = ghost_selftest(p, length, 500, seed=0)
            assert rep["passed_samples"] == rep["samples"] == 500


def test_oracle_is_bijective():
    for p, length in [(2, 4), (3, 3)]:
        seen = {oracle_int_to_coords(n, p, length) for n in range(p**length)}
        assert len(seen) == p**length
        for n in range(p**length):
            assert oracle_coords_to_int(oracle_int_to_coords(n, p, length), p) == n


def test_two_in_w2_f2():
    ctx = WittCtx.get(F2, 2)
    one = ctx.one()
    assert (one + one).coords == (F2.zero(), F2.one())


def test_teichmuller_multiplicative():
    ctx = WittCtx.get(F4, 3)
    for a in F4.elements():
        for b in F4.elements():
            prod = ctx.teichmuller(a) * ctx.teichmuller(b)
            assert prod == ctx.teichmuller(a * b)


def test_additive_identity():
    ctx = WittCtx.get(F3, 3)
    rng = random.Random(1)
    for _ in range(20):
        w = ctx.from_coords([F3.element(rng.randrange(3)) for _ in range(3)])
        assert w + ctx.zero() == w
        assert w - w == ctx.zero()


def test_frobenius_examples_and_hom():
    ctx = WittCtx.get(F4, 2)
    w = F4.gen()
    elt = ctx.from_coords([w, F4.one()])
    assert elt.frobenius().coords == (w + F4.one(), F4.one())
    tm = ctx.teichmuller(w)
    assert tm.frobenius() == ctx.teichmuller(w * w)
    rng = random.Random(2)
    for _ in range(40):
        a = ctx.from_coords([F4.element(rng.randrange(4)) for _ in range(2)])
        b = ctx.from_coords([F4.element(rng.randrange(4)) for _ in range(2)])
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_w1_is_the_field():
    ctx = WittCtx.get(F4, 1)
    for a in F4.elements():
        for b in F4.elements():
            assert (ctx.teichmuller(a) + ctx.teichmuller(b)).coords == (a + b,)
            assert (ctx.teichmuller(a) * ctx.teichmuller(b)).coords == (a * b,)


def test_inverse():
    ctx = WittCtx.get(F3, 4)
    rng = random.Random(4)
    for _ in range(30):
        coords = [F3.element(rng.randrange(1, 3))] + [
            F3.element(rng.randrange(3)) for _ in range(3)
        ]
        w = ctx.from_coords(coords)
        assert w * w.inverse() == ctx.one()
    with pytest.raises(NotAUnit):
        ctx.from_coords([F3.zero()] * 4).inverse()


def test_times_p_matches_ring_multiplication():
    for spec, length in [(F2, 3), (F3, 3), (F4, 3)]:
        ctx = WittCtx.get(spec, length)
        p_elt = ctx.from_int(spec.p)
        rng = random.Random(6)
        for _ in range(25):
            w = ctx.from_coords([spec.element(rng.randrange(spec.q)) for _ in range(length)])
            assert w.times_p() == p_elt * w
        assert p_elt.valuation() == 1


def test_int_embedding_matches_oracle():
    ctx = WittCtx.get(F2, 4)
    for n in range(16):
        assert tuple(c.code for c in ctx.from_int(n).coords) == oracle_int_to_coords(n, 2, 4)


# -- fractions ----------------------------------------------------------------------


def test_fraction_p_inverse_times_p():
    ctx = WittCtx.get(F2, 3)
    pinv = WittFraction.p_power(ctx, -1)
    p = WittFraction.p_power(ctx, 1)
    prod = pinv * p
    assert prod.known == 2
    assert prod == WittFraction.one(ctx)
    # the numerator of p is the image of 2, cross-checked by the oracle
    assert tuple(c.code for c in ctx.p_elt(1).coords) == oracle_int_to_coords(2, 2, 3)


def test_fraction_shift_is_exact_bookkeeping():
    ctx = WittCtx.get(F3, 3)
    rng = random.Random(8)
    w = ctx.from_coords([F3.element(rng.randrange(1, 3)) for _ in range(3)])
    frac = WittFraction(ctx, 1, w)  # p^-1 w at precision N-1
    shifted = frac.shifted(2)  # times p^2: p w at full storable precision
    assert shifted.e == 0
    assert shifted.known == 3
    assert shifted == WittFraction.integral(w.times_p())


def test_fraction_add_mul_inverse():
    ctx = WittCtx.get(F3, 4)
    a = WittFraction(ctx, 1, ctx.from_int(5))
    b = WittFraction.integral(ctx.from_int(7))
    total = a + b  # (5 + 7p)/p
    assert total.e == 1
    assert total * WittFraction.p_power(ctx, 1) == WittFraction.integral(
        ctx.from_int(5 + 7 * 3)
    )
    inv = b.inverse()
    assert inv * b == WittFraction.one(ctx)
    # inverting p^j * unit costs 2j digits of certainty
    c = WittFraction.integral(ctx.from_int(3))
    cinv = c.inverse()
    assert cinv.e == 1 and cinv.known == 2
    assert (c * cinv).congruent_mod(WittFraction.one(ctx), 2)


def test_fraction_precision_guards():
    ctx = WittCtx.get(F2, 3)
    with pytest.raises(InsufficientPrecision):
        WittFraction(ctx, 3, ctx.one())
    pinv2 = WittFraction(ctx, 2, ctx.one())
    with pytest.raises(InsufficientPrecision):
        pinv2 * pinv2
    with pytest.raises(NotAUnit):
        WittFraction.zero(ctx).inverse()


def test_untrusted_digits_do_not_prove_anything():
    ctx = WittCtx.get(F2, 3)
    # value = p^2 * unit with only one trusted digit: valuation unprovable
    junk = WittFraction(ctx, 0, ctx.p_elt(2), known=1)
    assert junk.valuation() is None
    with pytest.raises(NotAUnit):
        junk.inverse()
    trusted = WittFraction(ctx, 0, ctx.p_elt(2))
    assert trusted.valuation() == 2


def test_fraction_reduce_and_integrality():
    ctx = WittCtx.get(F2, 3)
    two = WittFraction(ctx, 1, ctx.from_int(4))  # 4/2 = 2
    assert two.is_integral()
    assert two.reduce_mod_p() == F2.zero()
    half = WittFraction(ctx, 1, ctx.one())
    with pytest.raises(NotIntegral):
        half.reduce_mod_p()


def test_fraction_json():
    ctx = WittCtx.get(F2, 3)
    frac = WittFraction(ctx, 1, ctx.from_int(2))
    data = frac.to_json()
    # canonical form strips the shared p factor
    assert data["e"] == 0
    assert data["p"] == 2 and data["N"] == 3
