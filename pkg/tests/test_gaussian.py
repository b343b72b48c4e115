from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from partialact.errors import MalformedInput
from partialact.gaussian import (GQ, Bounded, bmax, bsum, certainly_greater,
                                 modulus)


@pytest.mark.parametrize("text, value", [
    ("3", GQ(3)), ("1/2+3/4i", GQ(F(1, 2), F(3, 4))), ("0-1i", GQ(0, -1)),
    ("-i", GQ(0, -1)), ("2i", GQ(0, 2)), ("-5/3", GQ(F(-5, 3))),
])
def test_parse(text, value):
    assert GQ.parse(text) == value


@pytest.mark.parametrize("bad", ["", "1.5", "i2", "1+2j", "abc"])
def test_parse_rejects(bad):
    with pytest.raises(MalformedInput):
        GQ.parse(bad)


def test_float_complex_is_refused():
    with pytest.raises(MalformedInput):
        GQ.coerce(1j)


rats = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
gqs = st.builds(GQ, rats, rats)


@settings(max_examples=300, deadline=None)
@given(gqs)
def test_string_round_trip(z):
    assert GQ.parse(str(z)) == z


@settings(max_examples=300, deadline=None)
@given(gqs, gqs)
def test_arithmetic_matches_pairs(z, w):
    a, b, c, d = z.re, z.im, w.re, w.im
    assert z * w == GQ(a * c - b * d, a * d + b * c)
    assert z + w == GQ(a + c, b + d)
    assert (z * w).conj() == z.conj() * w.conj()
    assert z.abs2() == a * a + b * b


def test_modulus_exact():
    assert modulus(GQ(3, 4)) == Bounded(F(5), F(5))
    assert modulus(GQ(F(3, 5), F(4, 5))).exact
    assert modulus(0).lo == 0


@settings(max_examples=200, deadline=None)
@given(gqs)
def test_modulus_encloses(z):
    m = modulus(z)
    q = z.abs2()
    assert m.lo >= 0
    assert m.lo * m.lo <= q <= m.hi * m.hi
    assert m.hi - m.lo <= F(1, 2 ** 64)


def test_irrational_modulus_reports_rounding():
    m = modulus(GQ(1, 1))
    assert not m.exact
    js = m.to_json()
    assert js["rounding"] == "outward, 2^-64"
    assert F(js["lower"]) < F(js["upper"])


def test_sums_and_maxima():
    r2 = modulus(GQ(1, 1))
    total = bsum([r2, 1, 1])
    assert total.lo == r2.lo + 2 and total.hi == r2.hi + 2
    assert bmax([1, F(3, 2)]).settle() == F(3, 2)
    assert certainly_greater(F(3, 2), r2)
    assert not certainly_greater(r2, r2)
    assert not certainly_greater(r2, F(3, 2))
