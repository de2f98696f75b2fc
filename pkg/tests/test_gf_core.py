import itertools

import pytest
from hypothesis import given, strategies as st

from fqcensus.gf_core import FieldElement, field_of_order, make_field, prime_power, smallest_irreducible

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (13, 1)]


def test_prime_fields_use_the_canonical_linear_modulus():
    assert make_field(2, 1).modulus == (0, 1)
    assert make_field(3, 1).modulus == (0, 1)
    assert make_field(3, 1, modulus=(2, 1)).modulus == (0, 1)


def test_f4_modulus_is_the_only_irreducible_quadratic():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_modulus_order_is_low_degree_first():
    # x^3 + x + 1 -> (1, 1, 0, 1); x^3 + x^2 + 1 -> (1, 0, 1, 1)
    assert smallest_irreducible(2, 3) == (1, 0, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)


def test_field_arith_examples():
    F2, F5, F4 = make_field(2), make_field(5), make_field(2, 2)
    assert F2.add(1, 1) == 0
    assert F5.inv(2) == 3
    alpha = F4(2)
    assert alpha * alpha == F4(3)  # alpha + 1


def test_enumerate_elements_order():
    assert [e.code for e in make_field(2).elements()] == [0, 1]
    assert [e.code for e in make_field(3).elements()] == [0, 1, 2]
    assert [e.code for e in make_field(2, 2).elements()] == [0, 1, 2, 3]


@pytest.mark.parametrize("p,e", [(4, 1), (1, 1), (6, 2)])
def test_non_prime_characteristic_rejected(p, e):
    with pytest.raises(ValueError):
        make_field(p, e)


def test_bad_degree_and_size_bound():
    with pytest.raises(ValueError):
        make_field(2, 0)
    with pytest.raises(ValueError):
        make_field(2, 9)
    with pytest.raises(ValueError):
        make_field(2, 2, modulus=(1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_explicit_modulus_override_gives_isomorphic_field():
    a = make_field(2, 3)
    b = make_field(2, 3, modulus=(1, 1, 0, 1))
    assert a != b
    # same multiplicative group order, Frobenius still fixes everything
    for x in range(8):
        assert b.power(x, 8) == x


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        make_field(2, 2)(0).inverse()


def test_mixed_contexts():
    with pytest.raises(ValueError):
        make_field(2)(1) + make_field(3)(1)


def test_prime_power_split():
    assert prime_power(4) == (2, 2)
    assert prime_power(27) == (3, 3)
    assert field_of_order(4) == make_field(2, 2)
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, e):
    F = make_field(p, e)
    q = F.q
    if q > 16:
        pytest.skip("exhaustive axioms only for q <= 16")
    els = range(q)
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_frobenius_fixes_every_element(p, e):
    F = make_field(p, e)
    for a in range(F.q):
        assert F.power(a, F.q) == a


@given(st.sampled_from([(2, 2), (3, 2), (2, 3), (5, 1)]), st.data())
def test_division_roundtrip(pe, data):
    F = make_field(*pe)
    a = F(data.draw(st.integers(0, F.q - 1)))
    b = F(data.draw(st.integers(1, F.q - 1)))
    assert (a / b) * b == a
    assert -(-a) == a
    assert a - a == F(0)


def test_field_element_code_range():
    with pytest.raises(ValueError):
        FieldElement(4, make_field(2, 2))
