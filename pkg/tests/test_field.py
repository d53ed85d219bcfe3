import pytest
from hypothesis import given
from hypothesis import strategies as st

from icosa.field import (OMEGA, ONE, ZERO, BadPrime, FieldElement, ModularImage, fe, fe_reduce, lift_pair,
                         omega_roots, parse_element, rational_reconstruction, valid_primes)

from strategies import elements, nonzero

PRIMES = [p for p, _ in zip(valid_primes(), range(5))]


def test_omega_squared():
    assert OMEGA * OMEGA == FieldElement(1, 1)


def test_omega_times_omega_minus_one():
    assert OMEGA * (OMEGA - 1) == FieldElement(1, 0)


def test_division_example():
    assert FieldElement(1, 1) / OMEGA == OMEGA


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_canonical_rationals():
    x = FieldElement("2/4", "-3/6")
    assert str(x) == "1/2-1/2*w"
    assert x == parse_element("1/2-1/2*w")
    assert hash(x) == hash(parse_element("1/2 - 1/2*w"))


@pytest.mark.parametrize("text", ["0", "1", "-3/7", "w", "-w", "2/3+5/4*w", "-1-w", "7*w"])
def test_text_round_trip(text):
    x = parse_element(text)
    assert parse_element(str(x)) == x


@given(elements)
def test_text_round_trip_random(x):
    assert parse_element(str(x)) == x


@given(elements, elements, elements)
def test_field_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO


@given(nonzero)
def test_inverse(x):
    assert x * (1 / x) == ONE
    assert x.norm() == (x * x.conjugate()).a


@pytest.mark.parametrize("p", PRIMES)
@given(x=elements, y=elements)
def test_reduction_homomorphism(p, x, y):
    for img in ModularImage.pair(p):
        try:
            rx, ry = img.reduce(x), img.reduce(y)
        except BadPrime:
            continue
        assert img.reduce(x * y) == rx * ry % p
        assert img.reduce(x + y) == (rx + ry) % p


def test_reduce_examples():
    img = ModularImage(11, 4)
    assert fe_reduce(OMEGA, img) == 4
    assert fe_reduce(fe("1/2"), img) == 6
    assert fe_reduce(OMEGA - 1, img) == 3


def test_bad_prime():
    with pytest.raises(BadPrime):
        ModularImage(11, 4).reduce(fe("1/11"))


def test_invalid_root():
    with pytest.raises(ValueError):
        ModularImage(11, 5)


def test_valid_primes():
    ps = PRIMES
    assert ps[0] >= 10007
    assert all(p % 10 in (1, 9) for p in ps)
    for p in ps:
        r1, r2 = omega_roots(p)
        assert (r1 * r1 - r1 - 1) % p == 0 and r1 != r2


@given(elements.filter(lambda x: x.denominator % PRIMES[0]))
def test_lift_pair(x):
    i1, i2 = ModularImage.pair(PRIMES[0])
    a, b = lift_pair(i1.reduce(x), i2.reduce(x), i1, i2)
    assert a == i1.reduce_rational(x.a) and b == i1.reduce_rational(x.b)


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=1000))
def test_rational_reconstruction(q):
    m = 2**61 - 1
    u = q.numerator * pow(q.denominator, -1, m) % m
    r = rational_reconstruction(u, m)
    assert r is not None and (int(r.numerator), int(r.denominator)) == (q.numerator, q.denominator)
