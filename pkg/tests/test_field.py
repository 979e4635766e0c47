import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from planebranch.field import (DEFAULT_PRIME, QQ, CompositeModulus, ContextMismatch, FieldElement,
                               field_context, is_prime, kron_mul, random_nonzero)

ints = st.integers(min_value=-10**6, max_value=10**6)
rationals = st.fractions(max_denominator=1000)


def test_contexts():
    assert field_context(101).characteristic == 101
    assert QQ.characteristic == 0 and field_context("q") == QQ
    assert field_context("fp").p == DEFAULT_PRIME
    assert field_context("fp:5").p == 5
    with pytest.raises(CompositeModulus):
        field_context(6)
    with pytest.raises(CompositeModulus):
        field_context("fp:2147483647000")


def test_default_prime_is_prime():
    assert is_prime(DEFAULT_PRIME)
    assert all(is_prime(p) == all(p % d for d in range(2, p)) for p in range(2, 400))


def test_random_nonzero_contract():
    F = field_context(101)
    r1, r2 = random.Random(1), random.Random(1)
    a = [random_nonzero(F, r1).value for _ in range(50)]
    assert a == [random_nonzero(F, r2).value for _ in range(50)]
    assert all(1 <= v <= 100 for v in a)
    assert random_nonzero(QQ, random.Random(1)).value != 0


def test_mixing_contexts_raises():
    with pytest.raises(ContextMismatch):
        QQ.elem(1) + field_context(5).elem(1)


def test_text_forms():
    F = field_context(101)
    assert F.format(F.coerce(-1)) == "100 mod 101"
    assert F.parse("100 mod 101") == 100
    assert F.coerce(Fraction(1, 2)) == 51
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    with pytest.raises(ContextMismatch):
        F.parse("3 mod 7")


@pytest.mark.parametrize("kind", ["q", "fp:101", "fp:5", "fp"])
@given(a=rationals, b=rationals, c=rationals)
def test_field_axioms(kind, a, b, c):
    F = field_context(kind)
    if F.p:
        a, b, c = a.numerator, b.numerator, c.numerator
    a, b, c = F.elem(a), F.elem(b), F.elem(c)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == F.elem(0)
    if a:
        assert a * a.inverse() == F.elem(1)


@given(a=ints.filter(bool), b=ints.filter(bool))
def test_rational_reciprocal(a, b):
    assert QQ.elem(Fraction(a, b)) * QQ.elem(Fraction(b, a)) == QQ.elem(1)


@given(a=st.lists(ints, max_size=30), b=st.lists(ints, max_size=30))
def test_kronecker_matches_schoolbook(a, b):
    if not a or not b:
        return
    n = len(a) + len(b) - 1
    ref = [0] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            ref[i + j] += x * y
    assert kron_mul(a, b, n, signed=True) == ref
    pos_a, pos_b = [abs(t) for t in a], [abs(t) for t in b]
    ref = [0] * n
    for i, x in enumerate(pos_a):
        for j, y in enumerate(pos_b):
            ref[i + j] += x * y
    assert kron_mul(pos_a, pos_b, n, signed=False) == ref


def test_element_str():
    assert str(QQ.elem(Fraction(2, 3))) == "2/3"
    assert isinstance(field_context(7).elem(3), FieldElement)
