from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fusionkit.errors import DivisionByZero, NotReal, ParseError, ZeroArgument
from fusionkit.scalars import (BigComplex, CycloNumber, E, cyclotomic_polynomial, exact_roots,
                               format_gap, format_scalar, is_totally_positive, nth_root_gauge,
                               parse_scalar, to_big)

SQRT2 = E(8) + E(8) ** 7


def test_basic_identities():
    assert SQRT2 ** 2 == 2
    assert E(3) + E(3) ** 2 == -1
    assert E(4) ** 2 == -1
    assert E(1) == 1
    assert sum((E(5) ** k for k in range(5)), CycloNumber.rational(0)) == 0


def test_canonical_conductor():
    # E(6) = -E(3)^2 lives in Q(zeta_3): conductors 2 mod 4 never appear
    assert E(6).conductor == 3
    assert (E(8) ** 2).conductor == 4
    assert (E(12) ** 4 + E(12) ** 8).conductor == 1
    assert SQRT2.conductor == 8


def test_equality_across_conductors():
    assert E(12) ** 3 == E(4)
    assert hash(E(12) ** 3) == hash(E(4))
    assert E(15) ** 5 == E(3)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_inverse_and_division():
    x = 1 + SQRT2
    assert x * x.inverse() == 1
    assert (x.inverse()) == SQRT2 - 1
    with pytest.raises(DivisionByZero):
        CycloNumber.rational(0).inverse()
    with pytest.raises(ZeroDivisionError):
        E(3) / (E(3) - E(3))


def test_galois_and_norm():
    assert SQRT2.galois(3) == -SQRT2
    assert SQRT2.conjugate() == SQRT2
    assert E(5).conjugate() == E(5) ** 4
    assert (1 + SQRT2).norm() == 1          # over Q(zeta_8): (-1)^2
    assert (1 + E(3)).norm() == 1
    assert (2 + E(4)).norm() == 5
    assert len(E(7).galois_orbit()) == 6


def test_format_and_parse():
    assert format_gap(SQRT2) == "E(8)-E(8)^3"
    assert parse_scalar("E(8)-E(8)^3") == SQRT2
    assert parse_scalar("E(8)+E(8)^7") == SQRT2
    assert parse_scalar("-2/3") == Fraction(-2, 3)
    assert parse_scalar("1/2*E(8)-3*E(8)^3") == Fraction(1, 2) * E(8) - 3 * E(8) ** 3
    assert format_scalar(Fraction(5, 2)) == "5/2"
    for bad in ["E(", "1/0", "E(0)", "2**", "x", ""]:
        with pytest.raises(ParseError):
            parse_scalar(bad)


def test_numeric_format_has_precision_suffix():
    text = format_scalar(BigComplex(2, 128))
    assert text.endswith("@p128")
    assert text.startswith("2")


def test_total_positivity():
    assert is_totally_positive(2)
    assert is_totally_positive(2 + SQRT2)
    assert not is_totally_positive(1 + SQRT2)            # its conjugate 1 - sqrt2 < 0
    assert not is_totally_positive(E(5) + E(5) ** 4)     # golden ratio conjugate is negative
    with pytest.raises(NotReal):
        is_totally_positive(E(4))


def test_nth_root_gauge_values():
    assert nth_root_gauge(2, 2) == SQRT2
    assert format_gap(nth_root_gauge(2, 2)) == "E(8)-E(8)^3"
    assert nth_root_gauge(E(4), 2) == E(8)
    assert nth_root_gauge(3, 2) ** 2 == 3
    assert nth_root_gauge(-1, 2) == E(4)
    assert nth_root_gauge(-1, 3) == E(6)          # principal, not -1
    assert nth_root_gauge(8, 3) == 2
    with pytest.raises(ZeroArgument):
        nth_root_gauge(0, 2)


def test_nth_root_gauge_falls_back_to_numeric():
    # 2^(1/3) is not cyclotomic
    r = nth_root_gauge(2, 3)
    assert r.is_numeric
    assert r ** 3 == 2


def test_exact_roots():
    roots, failed = exact_roots([Fraction(-2), Fraction(0), Fraction(1)])
    assert not failed
    assert sorted(format_gap(r) for r in roots) == ["-E(8)+E(8)^3", "E(8)-E(8)^3"]
    roots, failed = exact_roots([Fraction(-2), Fraction(0), Fraction(0), Fraction(1)])
    assert failed


def test_bigcomplex_tolerant_equality():
    a = BigComplex(1, 64)
    assert a == 1
    assert to_big(SQRT2, 64) * to_big(SQRT2, 64) == 2
    assert (a / 3) * 3 == 1


# property tests -------------------------------------------------------------

small = st.integers(-5, 5)
conductors = st.sampled_from([1, 3, 4, 5, 8, 12])


@st.composite
def cyclos(draw):
    n = draw(conductors)
    terms = draw(st.dictionaries(st.integers(0, n - 1), st.fractions(-4, 4, max_denominator=3),
                                 max_size=3))
    return CycloNumber.from_exponents(n, terms)


@settings(max_examples=60, deadline=None)
@given(cyclos(), cyclos(), cyclos())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@settings(max_examples=40, deadline=None)
@given(cyclos())
def test_inverse_property(a):
    if a.is_zero():
        return
    assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(cyclos())
def test_format_round_trip(a):
    assert parse_scalar(format_gap(a)) == a


@settings(max_examples=40, deadline=None)
@given(cyclos(), cyclos())
def test_embedding_is_ring_map(a, b):
    assert to_big(a * b) == to_big(a) * to_big(b)
    assert to_big(a + b) == to_big(a) + to_big(b)
