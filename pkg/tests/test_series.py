import random

import pytest

from loopzip.errors import InsufficientPrecision, NotAUnit, NotIntegral
from loopzip.gf import FieldSpec
from loopzip.series import LaurentElt

F2 = FieldSpec.get(2, 1)
F3 = FieldSpec.get(3, 1)
F4 = FieldSpec.get(2, 2)


def rand_elt(spec, rng, vmin=-3, prec_max=8):
    v = rng.randrange(vmin, 3)
    prec = rng.randrange(v + 1, v + prec_max)
    return LaurentElt(
        spec, v, prec, [spec.element(rng.randrange(spec.q)) for _ in range(prec - v)]
    )


def test_mul_shifts_precision_window():
    t = LaurentElt.t_power(F2, 1, 5)
    tinv = LaurentElt.t_power(F2, -1, 3)
    prod = t * tinv
    assert prod.coeff(0) == F2.one()
    # precision follows min(prec_a + v_b, prec_b + v_a)
    assert prod.prec == min(5 - 1, 3 + 1)


def test_char2_square():
    one_plus_t = LaurentElt.from_coeff_list(F2, 0, [1, 1], 4)
    sq = one_plus_t * one_plus_t
    expect = LaurentElt.from_coeff_list(F2, 0, [1, 0, 1], 4)
    assert sq == expect


def test_mul_precision_rule():
    a = LaurentElt.from_coeff_list(F3, 0, [1, 1], 3)  # 1 + t + O(t^3)
    b = LaurentElt.from_coeff_list(F3, 0, [1], 2)  # 1 + O(t^2)
    prod = a * b
    assert prod.prec == 2
    assert prod.coeff(0) == F3.one() and prod.coeff(1) == F3.one()


def test_geometric_series_inverse():
    one_minus_t = LaurentElt.from_coeff_list(F3, 0, [1, 2], 4)
    inv = one_minus_t.inverse()
    assert inv == LaurentElt.from_coeff_list(F3, 0, [1, 1, 1, 1], 4)


def test_inverse_of_t():
    t = LaurentElt.t_power(F2, 1, 4)
    assert t.inverse().v == -1
    assert (t * t.inverse()).coeff(0) == F2.one()


def test_inverse_frozen_value():
    # multiply out and confirm the product is 1 within the window
    a = LaurentElt.from_coeff_list(F3, 0, [2, 1], 3)  # 2 + t
    inv = a.inverse()
    assert inv == LaurentElt.from_coeff_list(F3, 0, [2, 2, 2], 3)
    assert (a * inv).congruent_mod(LaurentElt.one(F3, 3), 3)


def test_inverse_errors():
    empty = LaurentElt(F2, 3, 3, ())
    with pytest.raises(InsufficientPrecision):
        empty.inverse()
    zero_window = LaurentElt.from_coeff_list(F2, 0, [0, 0, 0], 3)
    with pytest.raises(NotAUnit):
        zero_window.inverse()
    with pytest.raises(InsufficientPrecision):
        empty * LaurentElt.one(F2, 3)


def test_sigma_examples():
    w = F4.gen()
    f = LaurentElt(F4, 0, 3, [F4.one(), w, F4.zero()])  # 1 + w t
    assert f.sigma() == LaurentElt(F4, 0, 3, [F4.one(), w + F4.one(), F4.zero()])
    t = LaurentElt.t_power(F4, 1, 4)
    assert t.sigma() == t
    g = LaurentElt.from_coeff_list(F3, 0, [2, 1, 2], 4)
    assert g.sigma() == g  # prime field fixed


def test_sigma_order():
    rng = random.Random(5)
    for _ in range(50):
        f = rand_elt(F4, rng)
        assert f.sigma().sigma() == f


def test_phi_examples():
    t = LaurentElt.t_power(F2, 1, 4)
    ph = t.phi()
    assert ph.coeff(2) == F2.one() and ph.valuation() == 2
    assert ph.prec == 8
    w = F4.gen()
    f = LaurentElt(F4, 0, 2, [w, F4.one()])  # w + t
    fp = f.phi()
    assert fp.coeff(0) == w + F4.one() and fp.coeff(2) == F4.one()
    one = LaurentElt.one(F2, 3)
    assert one.phi().coeff(0) == F2.one()


def test_phi_multiplicative():
    rng = random.Random(11)
    for _ in range(40):
        a = rand_elt(F4, rng)
        b = rand_elt(F4, rng)
        lhs = (a * b).phi()
        rhs = a.phi() * b.phi()
        k = min(lhs.prec, rhs.prec)
        if k > max(lhs.v, rhs.v):
            assert lhs.congruent_mod(rhs, k)


def test_ring_axioms_random():
    rng = random.Random(3)
    for spec in (F2, F3, FieldSpec.get(3, 2)):
        for _ in range(60):
            a, b, c = (rand_elt(spec, rng) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            lhs = a * (b + c)
            rhs = a * b + a * c
            k = min(lhs.prec, rhs.prec)
            lo = min(lhs.v, rhs.v)
            if k > lo:
                assert lhs.congruent_mod(rhs, k)


def test_reduce_examples():
    f = LaurentElt.from_coeff_list(F2, 0, [1, 1], 3)
    assert f.reduce_mod_t() == F2.one()
    t = LaurentElt.t_power(F2, 1, 3)
    assert t.reduce_mod_t() == F2.zero()
    pole = LaurentElt(F2, -1, 2, [F2.one(), F2.one(), F2.zero()])
    with pytest.raises(NotIntegral):
        pole.reduce_mod_t()
    shallow = LaurentElt.zero(F2, 0)
    with pytest.raises(InsufficientPrecision):
        shallow.reduce_mod_t()


def test_reduce_is_ring_hom_on_integrals():
    rng = random.Random(9)
    for _ in range(60):
        a = rand_elt(F3, rng, vmin=0)
        b = rand_elt(F3, rng, vmin=0)
        assert (a + b).reduce_mod_t() == a.reduce_mod_t() + b.reduce_mod_t()
        assert (a * b).reduce_mod_t() == a.reduce_mod_t() * b.reduce_mod_t()


def test_equality_is_strict_about_precision():
    a = LaurentElt.from_coeff_list(F2, 0, [1], 2)
    b = LaurentElt.from_coeff_list(F2, 0, [1], 3)
    assert a != b
    assert a.congruent_mod(b, 2)
    with pytest.raises(InsufficientPrecision):
        a.congruent_mod(b, 3)
    # leading stored zeros do not affect equality
    c = LaurentElt.from_coeff_list(F2, -2, [0, 0, 1], 2)
    d = LaurentElt.from_coeff_list(F2, 0, [1], 2)
    assert c == d and hash(c) == hash(d)


def test_trim_and_valuation():
    f = LaurentElt.from_coeff_list(F2, -1, [0, 0, 1], 3)
    assert f.valuation() == 1
    assert f.trimmed().v == 1
    assert LaurentElt.zero(F2, 4).valuation() is None


def test_json_roundtrip():
    f = LaurentElt.from_coeff_list(F4, -1, [2, 3, 1], 3)
    assert LaurentElt.from_json(F4, f.to_json()) == f


def test_text_form():
    f = LaurentElt.from_coeff_list(F3, -1, [2, 0, 1], 2)
    assert repr(f) == "2*t^-1 + t + O(t^2)"
