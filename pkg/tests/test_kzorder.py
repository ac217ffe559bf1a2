import itertools

import pytest

from basiscoalg.algebras import lattice_algebra
from basiscoalg.errors import GuardExceeded, InputError, PreconditionError
from basiscoalg.finstruct import (
    all_posets,
    chain,
    discrete,
    isomorphic,
    lattices_up_to_iso,
    poset_from_pairs,
    powerset_lattice,
)
from basiscoalg.kzorder import (
    adjoint_chain_verify,
    algebra_iff_reflection,
    canonical_chain,
    coalgebra_iff_coreflection,
    compact_freeness,
    continuity_and_stability,
    join_left_adjoint,
    kz_check,
    kz_mult_below,
    left_adjoint_of,
    sweep_algebra_iff_reflection,
    sweep_coalgebra_iff_coreflection,
    way_below,
)

VEE = poset_from_pairs(["a", "b", "c"], [["a", "c"], ["b", "c"]])


def join_structure(lat):
    return {u: lat.join(u) for u in lat.downsets()}


def test_kz_inequality_strict_somewhere():
    rep = kz_check(discrete(["a", "b"]))
    assert rep.passed
    # {a, b} is below eta({a,b}) but not under a single principal downset
    assert rep.data["strict at"]


def test_kz_guard():
    with pytest.raises(GuardExceeded):
        kz_check(discrete(range(13)))


def test_mu_below_t_of_join():
    lat = powerset_lattice([1, 2])
    assert kz_mult_below(lat, join_structure(lat)).passed


def test_join_is_algebra_and_reflection():
    lat = chain("abc")
    rep = algebra_iff_reflection(lat, join_structure(lat))
    assert rep.passed and rep.data["algebra"] and rep.data["reflection"]


def test_constant_top_is_neither():
    lat = chain("abc")
    a = {u: "c" for u in lat.downsets()}
    rep = algebra_iff_reflection(lat, a)
    assert rep.passed
    assert not rep.data["algebra"] and not rep.data["reflection"]


def test_non_monotone_structure_rejected():
    lat = chain("ab")
    a = {frozenset(): "b", frozenset("a"): "a", frozenset("ab"): "b"}
    with pytest.raises(InputError):
        algebra_iff_reflection(lat, a)


def test_sweep_counts_algebras_on_chain():
    rep = sweep_algebra_iff_reflection(chain("ab"))
    assert rep.passed
    assert rep.data["algebras"] == 1


def test_non_lattice_has_no_algebras():
    assert sweep_algebra_iff_reflection(VEE).data["algebras"] == 0


def test_coreflection_for_join_left_adjoint():
    frame = lattice_algebra(powerset_lattice([1, 2]), "frame")
    c = join_left_adjoint(frame)
    rep = coalgebra_iff_coreflection(frame, c)
    assert rep.passed and rep.data["coalgebra"] and rep.data["coreflection"]


def test_down_closure_is_not_an_algebra_map():
    frame = lattice_algebra(chain("ab"), "frame")
    c = {x: frame.poset.principal(x) for x in frame.elements}
    with pytest.raises(PreconditionError):
        coalgebra_iff_coreflection(frame, c)


def test_coreflection_sweep_on_square():
    rep = sweep_coalgebra_iff_coreflection(lattice_algebra(powerset_lattice([1, 2]), "frame"))
    assert rep.passed
    assert rep.data["coalgebras"] == 1


def brute_way_below(lat):
    """Definition with explicit directed subsets, no masks."""
    els = lat.elements

    def directed(s):
        return s and all(any(lat.le(x, z) and lat.le(y, z) for z in s) for x in s for y in s)

    subsets = [set(c) for r in range(1, len(els) + 1) for c in itertools.combinations(els, r)]
    dirs = [s for s in subsets if directed(s)]
    return {
        (x, y)
        for x in els
        for y in els
        if all(any(lat.le(x, u) for u in d) for d in dirs if lat.le(y, lat.join(d)))
    }


@pytest.mark.parametrize("n", range(1, 6))
def test_way_below_matches_definition(n):
    for lat in lattices_up_to_iso(n):
        wb = way_below(lat)
        els = lat.elements
        ours = {(els[i], els[j]) for i in range(n) for j in range(n) if wb[i][j]}
        assert ours == brute_way_below(lat)


def test_way_below_report_on_m3():
    m3 = poset_from_pairs(["0", "a", "b", "c", "1"],
                          [["0", x] for x in "abc"] + [[x, "1"] for x in "abc"])
    rep = continuity_and_stability(m3)
    assert rep.passed
    assert rep.data["equals the order"]


def test_adjoint_chain_on_lattice_and_vee():
    rep = adjoint_chain_verify(chain("ab"))
    assert rep.passed and rep.data["leftmost link"].startswith("present")
    rep = adjoint_chain_verify(VEE)
    assert rep.passed and rep.data["leftmost link"].startswith("absent")


def test_compact_freeness_recovers_a():
    lat = powerset_lattice([1, 2])
    rep = compact_freeness(canonical_chain(lat))
    assert rep.passed
    xc = rep.data["X_c"]
    assert sorted(map(len, xc)) == [1, 2, 2, 4]
    # X_c are the principal downsets, ordered like A
    assert set(xc) == {lat.principal(a) for a in lat.elements}


def test_canonical_chain_needs_lattice():
    with pytest.raises(PreconditionError):
        canonical_chain(VEE)


def test_left_adjoint_search():
    two = chain("ab")
    three = chain("xyz")
    # g collapses to the bottom: no left adjoint unless it preserves the top
    g = lambda y: "a"
    assert left_adjoint_of(g, two, three) is None
    g2 = {"x": "a", "y": "b", "z": "b"}.__getitem__
    assert left_adjoint_of(g2, two, three) == {"a": "x", "b": "y"}
