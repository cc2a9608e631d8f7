from fractions import Fraction

import pytest

from leavitt.algebra import Element
from leavitt.field import GF, FieldError, characteristic, field_name, parse_field_spec, reciprocal, scalar, using_field
from leavitt.graph import rose
from leavitt.parse import parse_element


def test_rational_default():
    assert characteristic() == 0 and field_name() == "Q"
    assert scalar(Fraction(4, 2)) == 2 and isinstance(scalar(Fraction(4, 2)), int)
    assert reciprocal(scalar(3)) == Fraction(1, 3)


def test_prime_field():
    with using_field("fp:5"):
        assert field_name() == "F_5"
        assert scalar(7) == GF(2, 5)
        assert scalar(Fraction(1, 2)) == GF(3, 5)
        assert reciprocal(scalar(2)) * 2 == scalar(1)
        g = rose(2)
        assert parse_element("5*e1", g) == Element.zero(g)
        assert parse_element("1/2*e1 + 1/2*e1", g) == parse_element("e1", g)
    assert characteristic() == 0


@pytest.mark.parametrize("spec", ["fp:4", "fp:1", "fp:x", "reals", "fp:"])
def test_bad_specs(spec):
    with pytest.raises(FieldError):
        parse_field_spec(spec)


def test_mixing_primes_fails():
    with pytest.raises(FieldError):
        GF(1, 5) + GF(1, 7)
    with using_field("fp:5"):
        with pytest.raises((FieldError, ZeroDivisionError)):
            scalar(Fraction(1, 5))
