from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from zdense.errors import FieldError
from zdense.exact import (
    QSqrt2,
    Tower,
    canonical,
    decode_scalar,
    encode_scalar,
    field_of,
    rational_root,
    sign,
    sqrt,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
qs2 = st.builds(QSqrt2, rationals, rationals)


def sym(x):
    x = QSqrt2(0) + x
    return sympy.Rational(x.a.numerator, x.a.denominator) + sympy.Rational(
        x.b.numerator, x.b.denominator
    ) * sympy.sqrt(2)


@pytest.mark.parametrize(
    "x, expected",
    [(QSqrt2(1, 0), 1), (QSqrt2(-1, 1), 1), (QSqrt2(3, -2), 1), (QSqrt2(0), 0), (QSqrt2(-3, 2), -1)],
)
def test_sign_examples(x, expected):
    assert sign(x) == expected


@given(qs2)
def test_sign_matches_sympy(x):
    assert sign(x) == sympy.sign(sym(x))


@given(qs2, qs2)
def test_norm_and_sign_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert sign(x * y) == sign(x) * sign(y)


@given(qs2, qs2)
def test_field_ops_match_sympy(x, y):
    assert sympy.simplify(sym(x + y) - (sym(x) + sym(y))) == 0
    assert sympy.simplify(sym(x * y) - sym(x) * sym(y)) == 0
    if y:
        assert sympy.simplify(sym(x / y) - sym(x) / sym(y)) == 0


@given(qs2)
def test_conj_is_field_automorphism(x):
    assert x.conj().conj() == x
    assert x * x.conj() == x.norm()


def test_canonical_collapses_and_hash():
    assert canonical(QSqrt2(Fraction(1, 2), 0)) == Fraction(1, 2)
    assert isinstance(canonical(QSqrt2(Fraction(1, 2), 0)), Fraction)
    assert hash(QSqrt2(3)) == hash(Fraction(3))
    assert field_of(QSqrt2(1, 1)) == "Q(sqrt2)"


def test_tower_arithmetic():
    r = sqrt(QSqrt2(12))
    assert isinstance(r, Tower)
    assert r * r == 12
    lam = (QSqrt2(0, 2) + sqrt(QSqrt2(4))) / 2  # trace 2sqrt2, disc 4 -> exact
    assert canonical(lam) == QSqrt2(1, 1)
    t = Tower(QSqrt2(1), QSqrt2(0, 1), QSqrt2(3))
    assert t * t.inverse() == 1
    assert sign(Tower(QSqrt2(-2), QSqrt2(1), QSqrt2(3))) == -1  # sqrt3 < 2
    assert sign(Tower(QSqrt2(-1), QSqrt2(1), QSqrt2(3))) == 1


def test_tower_radicand_mismatch():
    with pytest.raises(FieldError):
        Tower(1, 1, 3) + Tower(1, 1, 5)
    with pytest.raises(FieldError):
        Tower(1, 1, -3)


def test_rational_root():
    assert rational_root(Fraction(32, 243), 5) == Fraction(2, 3)
    assert rational_root(Fraction(-8), 3) == -2
    assert rational_root(Fraction(2), 3) is None


@given(qs2)
def test_scalar_encoding_round_trip(x):
    x = canonical(x)
    f = field_of(x)
    assert decode_scalar(encode_scalar(x, f), f) == x


def test_rational_encoding_is_string():
    assert encode_scalar(Fraction(-1, 2), "Q") == "-1/2"
    assert encode_scalar(Fraction(3), "Q") == "3"
