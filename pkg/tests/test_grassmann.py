import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supercalc import randomgen as rg
from supercalc.grassmann import (
    Convention,
    GeneratorMismatch,
    NotInvertible,
    Parity,
    Supernumber,
    dumps,
    format_supernumber,
    from_json_terms,
    loads,
    parse_supernumber,
    to_json_terms,
)
from supercalc.scalars import CRat, format_crat, parse_crat


def gens(n):
    return Supernumber.generators(n)


def test_generator_anticommutation():
    x1, x2 = gens(2)
    assert x1 * x2 == -(x2 * x1)
    assert (x1 * x1).is_zero()
    assert (x2 * x2).is_zero()


def test_unit_cancellation():
    x1, _ = gens(2)
    one = Supernumber.unit(2)
    assert (one + x1) * (one - x1) == one


def test_body_soul():
    x1, x2, _ = gens(3)
    z = Supernumber.scalar(3, 3) + x1 * x2 * 2
    assert z.body() == CRat(3)
    assert z.soul() == x1 * x2 * 2
    assert Supernumber.scalar(3, z.body()) + z.soul() == z


def test_soul_nilpotency_exhaustive_n3():
    rng = random.Random(1)
    for _ in range(20):
        z = rg.supernumber(rng, 3)
        assert (z.soul() ** 4).is_zero()


def test_even_odd_parity():
    x1, x2, x3 = gens(3)
    one = Supernumber.unit(3)
    z = one + x1 + x1 * x2
    assert z.even_part() == one + x1 * x2
    assert z.odd_part() == x1
    assert (x1 * x2 * x3).parity() is Parity.ODD
    assert (one + x1).parity() is Parity.MIXED
    assert (x1 * x2).parity() is Parity.EVEN


def test_inverse_example_by_direct_expansion():
    # oracle: multiply out (2 + x1x2)(1/2 - 1/4 x1x2) by hand:
    # 1 - 1/2 x1x2 + 1/2 x1x2 - 1/4 (x1x2)^2 = 1
    x1, x2 = gens(2)
    z = Supernumber.scalar(2, 2) + x1 * x2
    expected = Supernumber.from_indices(2, {(): Fraction(1, 2), (1, 2): Fraction(-1, 4)})
    assert z.inverse() == expected
    assert z * z.inverse() == Supernumber.unit(2)


def test_inverse_identity_and_errors():
    assert Supernumber.unit(2).inverse() == Supernumber.unit(2)
    with pytest.raises(NotInvertible):
        Supernumber.generator(2, 1).inverse()


def test_inverse_random():
    rng = random.Random(7)
    for k in range(50):
        n = 2 + k % 5
        z = rg.supernumber(rng, n, ensure_body=True)
        assert z * z.inverse() == Supernumber.unit(n)


def test_conjugation_examples():
    x1, x2 = gens(2)
    iz = x1 * CRat(0, 1)
    assert iz.conjugate() == x1 * CRat(0, -1)
    assert (x1 * x2).conjugate() == x1 * x2  # real stays real
    # reversing convention: (x1 x2)* = x2* x1* = x2 x1 = -x1 x2,
    # so the product of two real odd supernumbers is purely imaginary
    dewitt = (x1 * x2).conjugate(Convention.DEWITT)
    assert dewitt == -(x1 * x2)
    assert dewitt == x2 * x1


def test_conjugation_rules_random():
    rng = random.Random(9)
    for k in range(60):
        n = 2 + k % 4
        z, w = rg.supernumber(rng, n), rg.supernumber(rng, n)
        assert (z + w).conjugate() == z.conjugate() + w.conjugate()
        assert z.conjugate().conjugate() == z
        assert (z * w).conjugate() == z.conjugate() * w.conjugate()
        pa, pb = k % 2, (k // 2) % 2
        a = rg.homogeneous_supernumber(rng, n, pa)
        b = rg.homogeneous_supernumber(rng, n, pb)
        sign = -1 if pa * pb else 1
        assert (a * b).conjugate(Convention.DEWITT) == a.conjugate(
            Convention.DEWITT
        ) * b.conjugate(Convention.DEWITT) * sign


@st.composite
def small_supernumbers(draw, n=3):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        mask = draw(st.integers(0, (1 << n) - 1))
        num = draw(st.integers(-4, 4))
        den = draw(st.integers(1, 3))
        terms[mask] = CRat(Fraction(num, den))
    return Supernumber(n, terms)


@settings(max_examples=60, deadline=None)
@given(small_supernumbers(), small_supernumbers(), small_supernumbers())
def test_associativity_distributivity_property(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(small_supernumbers(), small_supernumbers())
def test_graded_commutativity_property(a, b):
    for pa in (0, 1):
        for pb in (0, 1):
            ha = a.even_part() if pa == 0 else a.odd_part()
            hb = b.even_part() if pb == 0 else b.odd_part()
            sign = -1 if pa * pb else 1
            assert ha * hb == hb * ha * sign


def test_generator_count_mismatch():
    with pytest.raises(GeneratorMismatch):
        Supernumber.generator(2, 1) * Supernumber.generator(3, 1)


def test_text_serialization_round_trip():
    x1, x2, x3 = gens(3)
    z = Supernumber.scalar(3, 3) + x1 * x2 * 2 - x3 * CRat(Fraction(1, 2), Fraction(5))
    text = format_supernumber(z)
    assert parse_supernumber(text, 3) == z
    assert format_supernumber(Supernumber.zero(3)) == "0"
    assert format_supernumber(Supernumber.scalar(2, 3) + gens(2)[0] * gens(2)[1] * 2) == "3 + 2*x1^x2"


def test_json_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        z = rg.supernumber(rng, 4)
        assert from_json_terms(to_json_terms(z), 4) == z
        assert loads(dumps(z)) == z
    simple = Supernumber.from_indices(2, {(): 3, (1, 2): 2})
    assert to_json_terms(simple) == {"": "3", "1,2": "2"}


def test_scalar_literal_round_trip():
    rng = random.Random(4)
    for _ in range(40):
        c = rg.crat(rng)
        assert parse_crat(format_crat(c)) == c
    for text, want in [("3", CRat(3)), ("-1/2", CRat(Fraction(-1, 2))), ("2i", CRat(0, 2)),
                       ("1+2i", CRat(1, 2)), ("1/2-3/4i", CRat(Fraction(1, 2), Fraction(-3, 4))),
                       ("i", CRat(0, 1)), ("-i", CRat(0, -1))]:
        assert parse_crat(text) == want
