import random
from fractions import Fraction

import pytest

from wreathkit import Field, FieldMismatchError, Scalar


Q = Field.rationals()
GF5 = Field.prime(5)
GF7 = Field.prime(7)


def test_rational_examples():
    assert Q.scalar(Fraction(1, 2)) + Q.scalar(Fraction(1, 3)) == Q.scalar(Fraction(5, 6))
    assert Q.scalar(Fraction(2, 3)) * Q.scalar(Fraction(3, 4)) == Q.scalar(Fraction(1, 2))
    assert Q.scalar(Fraction(2, 3)).inv() == Q.scalar(Fraction(3, 2))


def test_prime_field_examples():
    assert GF5.scalar(3) + GF5.scalar(4) == GF5.scalar(2)
    assert GF5.scalar(2) * GF5.scalar(3) == GF5.scalar(1)
    assert GF7.scalar(3).inv() == GF7.scalar(5)


def test_identity_cases():
    a = Q.scalar(Fraction(7, 3))
    assert a + Q.scalar(0) == a
    assert a * Q.scalar(1) == a
    b = GF5.scalar(4)
    assert b + GF5.scalar(0) == b
    assert b * GF5.scalar(1) == b


def test_zero_inverse_signaled():
    with pytest.raises(ZeroDivisionError):
        Q.scalar(0).inv()
    with pytest.raises(ZeroDivisionError):
        GF5.scalar(0).inv()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Q.scalar(1) + GF5.scalar(1)
    with pytest.raises(FieldMismatchError):
        GF5.scalar(1) * GF7.scalar(1)


def test_field_validation():
    with pytest.raises(ValueError):
        Field.prime(4)
    with pytest.raises(ValueError):
        Field.prime(1)
    with pytest.raises(ValueError):
        Field.prime(2**31 + 11)
    Field.prime(2)  # smallest prime is fine


@pytest.mark.parametrize("field", [Q, GF5, GF7], ids=repr)
def test_field_axioms_randomized(field):
    rng = random.Random(20240601)
    f = field
    for _ in range(10_000):
        a, b, c = f.sample(rng), f.sample(rng), f.sample(rng)
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        if not f.is_zero(a):
            assert f.mul(a, f.inv(a)) == f.one


def test_representatives_always_reduced():
    rng = random.Random(7)
    for _ in range(2000):
        a, b = Q.sample(rng), Q.sample(rng)
        s = Q.add(a, b)
        assert s.denominator > 0
        assert Fraction(s.numerator, s.denominator) == s
        x, y = GF7.sample(rng), GF7.sample(rng)
        assert 0 <= GF7.mul(x, y) < 7
        assert 0 <= GF7.sub(x, y) < 7


def test_parse_and_format():
    assert Q.parse("2/3") == Fraction(2, 3)
    assert Q.parse("-4") == Fraction(-4)
    assert Q.fmt(Fraction(2, 3)) == "2/3"
    assert Q.fmt(Fraction(5)) == "5"
    assert GF5.parse("12") == 2
    with pytest.raises(ValueError):
        GF5.parse("1/2")


def test_scalar_operations():
    a = Scalar(Q, Fraction(3, 4))
    assert (a - a) == Q.scalar(0)
    assert -a + a == Q.scalar(0)
    assert a / a == Q.scalar(1)
    assert bool(a) and not bool(Q.scalar(0))
    assert repr(GF5.scalar(9)) == "4"
