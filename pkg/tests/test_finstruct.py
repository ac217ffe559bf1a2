import itertools

import pytest
from hypothesis import given, strategies as st

from basiscoalg.errors import CycleError, GuardExceeded, InputError
from basiscoalg.finstruct import (
    FinSet,
    all_posets,
    chain,
    discrete,
    isomorphic,
    lattices_up_to_iso,
    monotone_maps,
    poset_from_pairs,
    powerset_lattice,
)

# labelled posets on n points (independent count, OEIS A001035)
LABELLED = [1, 1, 3, 19, 219]
# unlabelled lattices on n points (OEIS A006966)
LATTICES = [1, 1, 1, 2, 5, 15, 53, 222]


@pytest.mark.parametrize("n", range(5))
def test_labelled_poset_counts(n):
    assert sum(1 for _ in all_posets(n)) == LABELLED[n]


@pytest.mark.parametrize("n", range(1, 9))
def test_lattice_counts(n):
    assert len(lattices_up_to_iso(n)) == LATTICES[n - 1]


def test_poset_from_pairs_closes_transitively():
    p = poset_from_pairs(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    assert p.le("a", "c")
    assert not p.le("c", "a")


def test_cycle_rejected_with_witness():
    with pytest.raises(CycleError) as e:
        poset_from_pairs(["a", "b"], [["a", "b"], ["b", "a"]])
    assert e.value.witness


def test_unknown_label_rejected():
    with pytest.raises(InputError):
        poset_from_pairs(["a"], [["a", "z"]])


def brute_downsets(p):
    els = p.elements
    out = []
    for r in range(len(els) + 1):
        for s in itertools.combinations(els, r):
            s = frozenset(s)
            if all(y in s for x in s for y in els if p.le(y, x)):
                out.append(s)
    return out


@pytest.mark.parametrize("n", range(4))
def test_downsets_match_brute_force(n):
    for p in all_posets(n):
        assert sorted(map(sorted, p.downsets())) == sorted(map(sorted, brute_downsets(p)))


def test_downset_guard():
    with pytest.raises(GuardExceeded):
        discrete(list(range(12))).downset_masks(limit=100)


def test_powerset_lattice_join_meet():
    p = powerset_lattice([1, 2, 3])
    a, b = frozenset({1}), frozenset({2, 3})
    assert p.join([a, b]) == frozenset({1, 2, 3})
    assert p.meet([a, b]) == frozenset()
    assert p.is_lattice() and p.is_distributive()


def test_m3_is_not_distributive():
    m3 = poset_from_pairs(["0", "a", "b", "c", "1"],
                          [["0", x] for x in "abc"] + [[x, "1"] for x in "abc"])
    assert m3.is_lattice()
    assert not m3.is_distributive()


def test_non_lattice():
    v = poset_from_pairs(["a", "b"], [])
    assert not v.is_lattice()


def test_dwn_of_chain_is_longer_chain():
    assert isomorphic(chain(["a", "b", "c"]).dwn(), chain(range(4)))


@given(st.integers(0, 3), st.integers(0, 3))
def test_monotone_maps_between_chains(m, n):
    # monotone maps [m] -> [n] of chains: C(m + n - 1, m)
    from math import comb

    count = sum(1 for _ in monotone_maps(chain(range(m)), chain(range(n))))
    expected = 1 if m == 0 else comb(m + n - 1, m)
    assert count == expected


def test_finset_mask_roundtrip():
    s = FinSet(("x", "y", "z"))
    assert s.unmask(s.mask({"x", "z"})) == frozenset({"x", "z"})
    assert len(list(s.subsets())) == 8
