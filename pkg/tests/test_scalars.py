from fractions import Fraction

import pytest
from hypothesis import given

from superalg import JetScalar, QQi
from superalg.scalars import format_fraction, parse_fraction

from conftest import gaussian


def test_gaussian_arithmetic():
    z = QQi(Fraction(1, 2), 3)
    assert z * z.conjugate() == QQi(Fraction(37, 4))
    assert QQi(0, 1) * QQi(0, 1) == QQi(-1)
    assert QQi(1, 1) / QQi(1, -1) == QQi(0, 1)


@given(gaussian(), gaussian(), gaussian())
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


def test_eps_squares_to_zero():
    e, f = JetScalar.eps("e"), JetScalar.eps("f")
    assert e * e == 0
    assert e * f == 0
    assert (1 + e) * (1 - e) == 1
    assert (2 + e) * (3 + f) == 6 + 3 * e + 2 * f


def test_symbols_commute_and_differentiate():
    x, y = JetScalar.symbol("x"), JetScalar.symbol("y")
    p = x * x * y + 3 * y
    assert x * y == y * x
    assert p.diff("x") == 2 * x * y
    assert p.diff("y") == x * x + 3
    assert p.subs({"y": JetScalar(2)}) == 2 * x * x + 6
    assert p.degree(["x", "y"]) == 3


def test_conjugate_keeps_eps_ids():
    v = JetScalar(QQi(1, 2)) + JetScalar.eps("e", QQi(0, 3))
    w = v.conjugate()
    assert w.body == QQi(1, -2)
    assert w.eps_terms == {"e": QQi(0, -3)}


def test_canonical_string():
    x1, x2 = JetScalar.symbol("x1"), JetScalar.symbol("x2")
    assert str(x2 * x1 - x1) == str(-x1 + x1 * x2)


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-7/4", Fraction(-7, 4)), ("0", Fraction(0))])
def test_fraction_text(text, value):
    assert parse_fraction(text) == value
    assert parse_fraction(format_fraction(value)) == value


@pytest.mark.parametrize("bad", ["1.5", "", "1/0", "a/b"])
def test_fraction_text_rejects(bad):
    with pytest.raises(ValueError):
        parse_fraction(bad)
