"""Field tower tests: construction, arithmetic, conjugation, squares, orders."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from miquel.gf import (AlphaIsSquare, DivisionByZero, EvenCharacteristic,
                       FieldError, Fq2, MixedFields, NotPrime,
                       ReducibleModulus, ZeroElement, field_make, parse_fq,
                       parse_fq2, sqrt_in_ext)

F31 = field_make(31)
F31I = field_make(31, alpha=30)      # extension by sqrt(-1), as in the worked example
F13 = field_make(13)
F7 = field_make(7)
F9 = field_make(3, 2)


def brute_squares(p):
    return {x * x % p for x in range(1, p)}


# -- construction -------------------------------------------------------------

def test_default_alpha_is_smallest_nonsquare_mod_31():
    nonsquares = sorted(set(range(1, 31)) - brute_squares(31))
    assert F31.alpha == F31.fq(nonsquares[0]) == F31.fq(3)
    assert pow(3, 15, 31) == 30  # Euler criterion: 3^((q-1)/2) = -1


def test_default_alpha_mod_7():
    assert brute_squares(7) == {1, 2, 4}
    assert F7.alpha == F7.fq(3)


def test_gf9_default_modulus_is_lex_smallest_irreducible():
    # oracle: enumerate monic quadratics over GF(3) low-degree-first, drop
    # any with a root
    def has_root(a0, a1):
        return any((x * x + a1 * x + a0) % 3 == 0 for x in range(3))
    expected = next((a0, a1, 1) for a0 in range(3) for a1 in range(3)
                    if not has_root(a0, a1))
    assert F9.modulus == expected == (1, 0, 1)
    assert F9.q == 9


def test_construction_errors():
    with pytest.raises(NotPrime):
        field_make(15)
    with pytest.raises(EvenCharacteristic):
        field_make(2)
    with pytest.raises(ReducibleModulus):
        field_make(3, 2, modulus=(0, 0, 1))  # x^2 has root 0
    with pytest.raises(AlphaIsSquare):
        field_make(7, alpha=2)  # 2 = 3^2 mod 7
    with pytest.raises(AlphaIsSquare):
        field_make(7, alpha=0)


def test_explicit_alpha_override():
    assert F31I.alpha == F31I.fq(30)
    assert not F31I.fq(30).is_square()


# -- arithmetic ---------------------------------------------------------------

def test_division_examples_from_worked_values():
    assert F31.fq(16) / F31.fq(19) == F31.fq(9)
    assert F31.fq(7) / F31.fq(28) == F31.fq(8)


@given(a=st.integers(0, 12))
def test_additive_identity(a):
    x = F13.fq(a)
    assert x + F13.zero == x


@given(a=st.integers(0, 12), b=st.integers(0, 12), c=st.integers(0, 12))
def test_field_axioms_gf13(a, b, c):
    x, y, z = F13.fq(a), F13.fq(b), F13.fq(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not y.is_zero():
        assert (x / y) * y == x


@given(a0=st.integers(0, 2), a1=st.integers(0, 2),
       b0=st.integers(0, 2), b1=st.integers(0, 2))
def test_field_axioms_gf9(a0, a1, b0, b1):
    x, y = F9.fq((a0, a1)), F9.fq((b0, b1))
    assert x + y == y + x
    assert x * y == y * x
    if not y.is_zero():
        assert (x * y) / y == x


def test_inverse_and_pow():
    for a in range(1, 13):
        x = F13.fq(a)
        assert x * x.inverse() == F13.one
        assert x ** 12 == F13.one     # Fermat
    with pytest.raises(DivisionByZero):
        F13.zero.inverse()
    with pytest.raises(DivisionByZero):
        F13.fq(5) / F13.zero


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        F13.fq(1) + F7.fq(1)
    with pytest.raises(MixedFields):
        F31.fq2(1, 1) * F31I.fq2(1, 1)


# -- conjugation, norm, trace -------------------------------------------------

def test_conj_worked_example():
    assert F31I.fq2(8, 3).conj() == F31I.fq2(8, 28)


def test_conj_is_involution_and_fixes_base():
    for z in F9.ext_elements():
        assert z.conj().conj() == z
    fixed = [z for z in F9.ext_elements() if z.conj() == z]
    assert len(fixed) == 9
    assert all(z.in_base() for z in fixed)


def test_conj_flips_sqrt_alpha():
    w = F7.fq2(0, 1)
    assert w.conj() == -w


def test_norm_trace_worked_values():
    assert F31I.fq2(12, 5).norm() == F31I.fq(14)   # 144 + 25 = 169 = 14 mod 31
    assert F31I.fq2(12, 0).trace() == F31I.fq(24)
    assert F7.ext_one.norm() == F7.one


@given(ax=st.integers(0, 6), ay=st.integers(0, 6),
       bx=st.integers(0, 6), by=st.integers(0, 6))
def test_norm_multiplicative_trace_additive(ax, ay, bx, by):
    z, w = F7.fq2(ax, ay), F7.fq2(bx, by)
    assert (z * w).norm() == z.norm() * w.norm()
    assert (z + w).trace() == z.trace() + w.trace()
    assert z.norm() == (z * z.conj()).x and (z * z.conj()).y.is_zero()
    assert z.trace() == (z + z.conj()).x and (z + z.conj()).y.is_zero()


# -- squares and roots --------------------------------------------------------

def test_is_square_worked_values():
    assert F31.fq(2).is_square()       # 8^2 = 64 = 2 mod 31
    assert 8 * 8 % 31 == 2
    assert 11 not in brute_squares(31)
    assert not F31.fq(11).is_square()
    assert F31.fq(0).is_square()       # documented convention


def test_minus_one_square_iff_q_1_mod_4():
    for spec in (F31, F7, field_make(11)):
        assert spec.q % 4 == 3
        assert not spec.fq(-1).is_square()
    for spec in (F13, F9, field_make(5)):
        assert spec.q % 4 == 1
        assert spec.fq(-1).is_square()


def test_sqrt_worked_values():
    assert F31.fq(10).sqrt() == F31.fq(14)
    assert F31.fq(25).sqrt() == F31.fq(5)   # canonical root of {5, 26}
    assert F31.zero.sqrt() == F31.zero


def test_sqrt_roundtrip_and_residue_count():
    with_root = 0
    for a in range(1, 13):
        x = F13.fq(a)
        r = x.sqrt()
        if r is not None:
            with_root += 1
            assert r * r == x
            assert r.key() <= (-r).key()
    assert with_root == 6  # (q-1)/2


def test_every_base_element_has_root_in_extension():
    for spec in (F13, F9):
        for x in spec.elements():
            r = sqrt_in_ext(x)
            assert r * r == spec.embed(x)


def test_nonsquare_product_law_exhaustive_gf13():
    elems = [F13.fq(a) for a in range(1, 13)]
    for x in elems:
        for y in elems:
            expected = not (x.is_square() ^ y.is_square())
            assert (x * y).is_square() == expected


def test_ext_sqrt_roundtrip_and_nonsquares():
    non = 0
    for z in F9.ext_elements():
        r = z.sqrt()
        if r is None:
            non += 1
            assert not z.is_square()
        else:
            assert r * r == z
    assert non == (81 - 1) // 2


# -- multiplicative orders ----------------------------------------------------

def test_mult_order_worked_values():
    assert F31.fq(9).mult_order() == 15
    assert F31.fq(8).mult_order() == 5
    assert F31.one.mult_order() == 1
    with pytest.raises(ZeroElement):
        F31.zero.mult_order()


def test_orders_divide_group_order():
    for a in range(1, 13):
        assert 12 % F13.fq(a).mult_order() == 0
    for z in itertools.islice((z for z in F9.ext_elements() if not z.is_zero()), 30):
        k = z.mult_order()
        assert 80 % k == 0
        assert z ** k == F9.ext_one


# -- text grammar -------------------------------------------------------------

def test_text_roundtrip_m1():
    for a in range(13):
        x = F13.fq(a)
        assert parse_fq(F13, x.text()) == x
    z = F13.fq2(5, 7)
    assert z.text() == "5+7*w"
    assert parse_fq2(F13, z.text()) == z


def test_text_roundtrip_m2():
    x = F9.fq((2, 1))
    assert x.text() == "2,1"
    assert parse_fq(F9, x.text()) == x
    z = Fq2(F9.fq((1, 2)), F9.fq((0, 1)))
    assert z.text() == "1,2+0,1*w"
    assert parse_fq2(F9, z.text()) == z


def test_parse_rejects_bad_literals():
    for bad in ("", "x", "5+", "1,2", "-3", "13"):
        with pytest.raises(FieldError):
            parse_fq(F13, bad)
    for bad in ("5", "5+7", "5+7*v", "5+7*w+1"):
        with pytest.raises(FieldError):
            parse_fq2(F13, bad)
