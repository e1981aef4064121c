from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from acirank import FieldSpec, Scalar, enumerate_elements, scalar_arith
from acirank.errors import DivisionByZero, InfiniteField, MixedFields, UnknownField

PRIMES = [2, 3, 5, 7, 11, 65521]


def test_gf5_product():
    f = FieldSpec.gf(5)
    assert scalar_arith(f.scalar(3), f.scalar(4), "mul") == f.scalar(2)


def test_gf2_characteristic():
    f = FieldSpec.gf(2)
    assert scalar_arith(f.scalar(1), f.scalar(1), "add") == f.scalar(0)


def test_rational_sum():
    q = FieldSpec.rational()
    assert scalar_arith(q.scalar(Fraction(1, 3)), q.scalar(Fraction(1, 6)), "add") == q.scalar(Fraction(1, 2))


def test_division_by_zero():
    f = FieldSpec.gf(7)
    with pytest.raises(DivisionByZero):
        scalar_arith(f.scalar(3), f.scalar(0), "div")
    with pytest.raises(DivisionByZero):
        FieldSpec.rational().scalar(1) / 0


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        scalar_arith(FieldSpec.gf(3).scalar(1), FieldSpec.gf(5).scalar(1), "add")
    with pytest.raises(MixedFields):
        FieldSpec.gf(3).scalar(1) + FieldSpec.rational().scalar(1)


@pytest.mark.parametrize("p, expected", [(2, (0, 1)), (3, (0, 1, 2))])
def test_enumeration_order(p, expected):
    assert tuple(s.value for s in enumerate_elements(FieldSpec.gf(p))) == expected


def test_rationals_cannot_be_enumerated():
    with pytest.raises(InfiniteField):
        enumerate_elements(FieldSpec.rational())


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_enumeration_is_complete(p):
    values = [s.value for s in enumerate_elements(FieldSpec.gf(p))]
    assert len(values) == p == len(set(values))


@pytest.mark.parametrize("bad", [1, 4, 9, 65537 * 2, 131071])
def test_nonprime_or_too_large_rejected(bad):
    with pytest.raises(UnknownField):
        FieldSpec.gf(bad)


@pytest.mark.parametrize("text, p", [("gf(7)", 7), ("GF(2)", 2), (" rational ", None)])
def test_parse_spellings(text, p):
    assert FieldSpec.parse(text).p == p


@pytest.mark.parametrize("text", ["gf7", "real", "gf(6)", ""])
def test_parse_rejects(text):
    with pytest.raises(UnknownField):
        FieldSpec.parse(text)


def test_canonical_forms():
    assert FieldSpec.gf(5).scalar(-1).value == 4
    assert FieldSpec.gf(5).scalar(Fraction(1, 2)).value == 3
    q = FieldSpec.rational().scalar(Fraction(4, -6))
    assert q.value == Fraction(-2, 3) and str(q) == "-2/3"
    with pytest.raises(DivisionByZero):
        FieldSpec.gf(3).scalar(Fraction(1, 3))


def test_small_sequence_is_distinct():
    seq = list(FieldSpec.gf(5).small_sequence())
    assert seq == [0, 1, 4, 2, 3]
    q = FieldSpec.rational().small_sequence()
    assert [next(q) for _ in range(5)] == [0, 1, -1, 2, -2]


def _elements(field):
    if field.p is None:
        return st.fractions(min_value=-50, max_value=50, max_denominator=20).map(field.scalar)
    return st.integers(0, field.p - 1).map(field.scalar)


FIELDS = [FieldSpec.gf(p) for p in PRIMES] + [FieldSpec.rational()]


@pytest.mark.parametrize("field", FIELDS, ids=str)
@settings(max_examples=1000)
@given(data=st.data())
def test_field_axioms(field, data):
    a, b, c = (data.draw(_elements(field)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0 and a + (-a) == 0
    if a:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


def test_scalar_is_immutable_and_hashable():
    s = FieldSpec.gf(3).scalar(2)
    with pytest.raises(AttributeError):
        s.value = 1
    assert hash(s) == hash(FieldSpec.gf(3).scalar(5))
    assert isinstance(s, Scalar)
