from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from basiscoalg.errors import InputError, ScalarError
from basiscoalg.exactnum import (
    BOOLEAN,
    DOMAINS,
    GAUSSIAN,
    I,
    INTEGER,
    NATURAL,
    RATIONAL,
    Gaussian,
    scalar_arith,
    scalar_parse,
    scalar_print,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
gaussians = st.builds(Gaussian, fractions, fractions)


def test_parse_examples():
    assert RATIONAL.parse("-3/4") == Fraction(-3, 4)
    assert GAUSSIAN.parse("2+1i") == Gaussian(2, 1)
    assert GAUSSIAN.parse("-3/4i") == Gaussian(0, Fraction(-3, 4))
    assert GAUSSIAN.parse("1/2-5/3i") == Gaussian(Fraction(1, 2), Fraction(-5, 3))
    assert BOOLEAN.parse("true") is True
    assert NATURAL.parse("7") == 7


@pytest.mark.parametrize(
    "domain,text",
    [
        (GAUSSIAN, "2+i"),
        (RATIONAL, "1/0"),
        (NATURAL, "-1"),
        (INTEGER, "1/2"),
        (RATIONAL, "1i"),
        (BOOLEAN, "yes"),
        (RATIONAL, ""),
    ],
)
def test_parse_rejects(domain, text):
    with pytest.raises((InputError, ScalarError)):
        domain.parse(text)


@given(fractions)
def test_rational_roundtrip(q):
    assert RATIONAL.parse(RATIONAL.format(q)) == q


@given(gaussians)
def test_gaussian_roundtrip(g):
    assert GAUSSIAN.parse(GAUSSIAN.format(g)) == g


@given(st.sampled_from(list(DOMAINS.values())), st.randoms(use_true_random=False))
def test_scalar_print_parse_roundtrip(domain, rng):
    x = domain.random(rng)
    s = scalar_parse(GAUSSIAN.format(x) if domain is GAUSSIAN else domain.format(x), domain)
    assert scalar_parse(scalar_print(s), domain) == s


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    if a != 0:
        assert a * a.inverse() == 1
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).im == 0


def test_gaussian_embeds_rationals():
    assert Gaussian(Fraction(1, 2), 0) == Fraction(1, 2)
    assert hash(Gaussian(3, 0)) == hash(Fraction(3))
    assert I * I == -1


def test_domain_capabilities():
    assert GAUSSIAN.is_field and RATIONAL.is_field
    assert not INTEGER.is_field and INTEGER.has_negation
    assert not NATURAL.has_negation
    assert GAUSSIAN.has_involution
    assert BOOLEAN.add(True, True) is True
    with pytest.raises(ScalarError):
        NATURAL.neg(1)
    with pytest.raises(ScalarError):
        RATIONAL.inv(Fraction(0))


def test_scalar_arith():
    a = scalar_parse("1/2+1i", "gaussian_rational")
    b = scalar_parse("2", "gaussian_rational")
    assert scalar_print(scalar_arith("mul", a, b)) == "1+2i"
    assert scalar_print(scalar_arith("conj", a)) == "1/2-1i"
    assert scalar_print(scalar_arith("inv", b)) == "1/2"
    with pytest.raises((InputError, ScalarError)):
        scalar_arith("add", a, scalar_parse("1", "rational"))
