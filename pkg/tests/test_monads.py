from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from basiscoalg.errors import InputError, PreconditionError
from basiscoalg.exactnum import INTEGER, NATURAL, RATIONAL
from basiscoalg.finstruct import all_posets, chain
from basiscoalg.monads import (
    DISTRIBUTION,
    DOWNSET,
    POWERSET,
    Coproduct,
    Distribution,
    FormalSum,
    Multiset,
    Powerset,
    check_equaliser_requirement,
    check_monad_laws,
)


@pytest.mark.parametrize("n", range(3))
def test_powerset_laws_exhaustive(n):
    rep = check_monad_laws(POWERSET, [f"x{i}" for i in range(n)])
    assert rep.passed
    assert rep.check("associativity: mu . mu = mu . T(mu)").detail == "all of T^3(X)"


def test_powerset_on_three_points_scope_is_labelled():
    rep = check_monad_laws(POWERSET, ["a", "b", "c"])
    assert rep.passed
    assert "at most two" in rep.check("associativity: mu . mu = mu . T(mu)").detail


def test_downset_laws_on_every_small_poset():
    for n in range(4):
        for p in all_posets(n):
            rep = check_monad_laws(DOWNSET, p)
            assert rep.passed, rep.to_text()


@pytest.mark.parametrize("monad", [Multiset(RATIONAL), Multiset(NATURAL), DISTRIBUTION])
def test_infinite_monads_sampled(monad):
    rep = check_monad_laws(monad, ["a", "b", "c"], samples=100, seed=0)
    assert rep.passed
    assert rep.data["checked T(X) values"] == 100


def test_coproduct_laws():
    assert check_monad_laws(Coproduct(["f", "g"]), ["a", "b"]).passed


class BrokenPowerset(Powerset):
    """Drops the smallest element of every nonempty union."""

    name = "broken powerset"

    def mult(self, tt):
        u = super().mult(tt)
        return u - {min(u)} if len(u) > 1 else u


def test_corrupted_multiplication_is_caught():
    rep = check_monad_laws(BrokenPowerset(), ["a", "b"])
    assert not rep.passed
    bad = rep.failures()[0]
    assert bad.witness["lhs"] != bad.witness["rhs"]


class BrokenMultiset(Multiset):
    def mult(self, tt):
        out = super().mult(tt)
        return FormalSum(self.domain, {k: v * 2 for k, v in out.items()})


def test_corrupted_multiset_is_caught():
    assert not check_monad_laws(BrokenMultiset(INTEGER), ["a"], samples=50).passed


def test_formal_sum_aggregates_and_drops_zeros():
    s = FormalSum(RATIONAL, [(Fraction(1, 2), "a"), (Fraction(-1, 2), "a"), (1, "b")])
    assert s.support() == frozenset({"b"})
    assert s == FormalSum(RATIONAL, {"b": 1})
    assert hash(s) == hash(FormalSum(RATIONAL, {"b": 1}))


@given(st.lists(st.tuples(st.integers(-3, 3), st.sampled_from("abc")), max_size=6))
def test_formal_sum_order_independent(pairs):
    assert FormalSum(INTEGER, pairs) == FormalSum(INTEGER, list(reversed(pairs)))


def test_distribution_validation():
    Distribution([(Fraction(1, 3), "a"), (Fraction(2, 3), "b")])
    with pytest.raises(InputError):
        Distribution([(Fraction(1, 2), "a")])
    with pytest.raises(InputError):
        Distribution([(Fraction(3, 2), "a"), (Fraction(-1, 2), "b")])


def test_downset_needs_poset():
    with pytest.raises(InputError):
        DOWNSET.unit("a")
    assert DOWNSET.unit("b", over=chain(["a", "b"])) == frozenset({"a", "b"})


def test_strength():
    assert POWERSET.strength(frozenset({1, 2}), "y") == frozenset({(1, "y"), (2, "y")})
    m = Multiset(RATIONAL)
    assert m.strength(m.unit("x"), "y") == m.unit(("x", "y"))


def test_equaliser_requirement_agreement_set_is_image_of_unit():
    rep = check_equaliser_requirement(POWERSET, ["1", "2"])
    assert sorted(map(sorted, rep.data["agreement set"])) == [["1"], ["2"]]


def test_equaliser_requirement_needs_finite_monad():
    with pytest.raises(PreconditionError):
        check_equaliser_requirement(Multiset(RATIONAL), ["a"])
