from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from liecohom.errors import FieldError
from liecohom.fields import (GF, QQ, Field, FieldElement, field_arithmetic, rational_root_candidates,
                             roots_with_multiplicity)


def q(x):
    return QQ.element(x)


def test_examples():
    assert field_arithmetic(q(Fraction(1, 2)), q(Fraction(1, 3)), "add") == q(Fraction(5, 6))
    F5, F7 = GF(5), GF(7)
    assert field_arithmetic(F5.element(3), F5.element(4), "mul") == F5.element(2)
    assert field_arithmetic(F7.element(1), F7.element(3), "div") == F7.element(5)


def test_errors():
    with pytest.raises(FieldError):
        q(1) / q(0)
    with pytest.raises(FieldError):
        GF(5).element(1) + GF(7).element(1)
    with pytest.raises(FieldError):
        field_arithmetic(GF(3).element(1), QQ.element(1), "add")
    with pytest.raises(FieldError):
        Field(4)
    with pytest.raises(FieldError):
        Field(1)
    with pytest.raises(FieldError):
        GF(3).parse_scalar("3")


def test_canonical_forms():
    assert QQ(Fraction(4, 2)) == 2 and isinstance(QQ(Fraction(4, 2)), int)
    assert QQ("-6/4") == Fraction(-3, 2)
    assert GF(7)(-1) == 6
    assert GF(7)(Fraction(1, 3)) == 5
    with pytest.raises(FieldError):
        GF(3)(Fraction(1, 3))


def test_field_spec_strings():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:5") == GF(5)
    assert str(GF(11)) == "Fp:11" and str(QQ) == "Q"
    with pytest.raises(FieldError):
        Field.parse("Fp:6")
    with pytest.raises(FieldError):
        Field.parse("R")


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)
primes = st.sampled_from([2, 3, 5, 7, 11, 13])


@given(rationals, rationals, rationals)
def test_rational_axioms(a, b, c):
    x, y, z = q(a), q(b), q(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == q(0)
    if x:
        assert x * (1 / x) == q(1)


@given(primes, st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * (1 / x) == F.element(1)


@given(primes, st.integers())
def test_fermat(p, a):
    x = GF(p).element(a)
    assert x ** p == x


@given(rationals)
def test_rational_string_round_trip(a):
    assert FieldElement.from_string(QQ, str(q(a))) == q(a)


def test_root_candidates_examples():
    cands = {e.value for e in rational_root_candidates([2, -3, 1])}
    assert cands == {0, 1, -1, 2, -2}
    assert roots_with_multiplicity([2, -3, 1], QQ) == {1: 1, 2: 1}
    assert {e.value for e in rational_root_candidates([1, 1, 1], GF(3))} == {0, 1, 2}
    assert {e.value for e in rational_root_candidates([-2, 0, 1])} == {0, 1, -1, 2, -2}
    assert roots_with_multiplicity([-2, 0, 1], QQ) == {}


def test_root_candidates_non_monic():
    with pytest.raises(FieldError):
        rational_root_candidates([1, 2])


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_roots_of_products(roots):
    # expand prod (x - r) and recover the multiset of roots
    poly = [1]
    for r in roots:
        poly = [(poly[i - 1] if i >= 1 else 0) - r * (poly[i] if i < len(poly) else 0)
                for i in range(len(poly) + 1)]
    expected = {}
    for r in roots:
        expected[r] = expected.get(r, 0) + 1
    assert roots_with_multiplicity(poly, QQ) == expected
