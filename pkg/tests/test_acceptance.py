"""Acceptance criteria, one test each; every test records a pass/fail line."""

import itertools
import random
import time
from fractions import Fraction

from basiscoalg.algebras import ModuleAlgebra, lattice_algebra
from basiscoalg.bases import (
    atoms_basis,
    basic_elements,
    check_basis_laws,
    exhaustive_basis_search,
    freeness_iso,
    hamel_basis,
    TableBasis,
)
from basiscoalg.comonoid import (
    PAULI,
    check_comonoid_laws,
    copy_check,
    derive_comonoid,
    diagonalise,
    pauli_bases,
    pauli_suite,
    tensor_basis,
)
from basiscoalg.errors import NotABasisError, PreconditionError
from basiscoalg.exactnum import GAUSSIAN, RATIONAL, I
from basiscoalg.exceptions import (
    ExceptionSetup,
    all_throw_maps,
    carriers_up_to,
    check_handler_laws,
    roundtrip_check,
    throw_to_handler,
)
from basiscoalg.finstruct import (
    all_posets,
    chain,
    isomorphic,
    lattices_up_to_iso,
    powerset_lattice,
)
from basiscoalg.kzorder import (
    adjoint_chain_verify,
    canonical_chain,
    compact_freeness,
    continuity_and_stability,
    em_laws_dwn,
    kz_check,
    kz_mult_below,
    structure_maps,
    sweep_algebra_iff_reflection,
)
from basiscoalg.linalg import identity, matmul, matvec, transpose
from basiscoalg.monads import (
    DISTRIBUTION,
    DOWNSET,
    POWERSET,
    Coproduct,
    Multiset,
    check_equaliser_requirement,
    check_monad_laws,
)


def small_lattices(max_size):
    """Every labelled poset of size <= max_size that is a lattice."""
    for n in range(1, max_size + 1):
        for p in all_posets(n):
            if p.is_lattice():
                yield p


def random_invertible(rng, n):
    while True:
        m = tuple(tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n))
                  for _ in range(n))
        try:
            return m, hamel_basis(ModuleAlgebra(RATIONAL, n), transpose(m))
        except NotABasisError:
            continue


def hamel_sample():
    rng = random.Random(0)
    return [random_invertible(rng, rng.randint(1, 4)) for _ in range(50)]


def test_criterion_01_pauli(verdict):
    start = time.perf_counter()
    rep = pauli_suite()
    bases = pauli_bases()
    d = GAUSSIAN
    v = {k: diagonalise(PAULI[k], bases[k]).data["eigenvalue map"] for k in "xyz"}
    ev = lambda row, z, w: d.add(d.mul(row[0], z), d.mul(row[1], w))
    u_x = derive_comonoid(bases["x"]).counit_row
    symbolic = (
        ev(v["x"], 1, 1) == 1
        and ev(v["x"], 1, -1) == -1
        and tuple(u_x) == (1, 0)  # u_x(z, w) = z
        and tuple(v["y"]) == (I, 0)  # v_y(z, w) = iz
        and tuple(v["z"]) == (1, -1)  # v_z(z, w) = z - w
    )
    elapsed = time.perf_counter() - start
    ok = rep.passed and symbolic and elapsed < 1
    verdict(1, "Pauli bases, eigenvalue maps and rebuilt sigma on 5x5 grid", ok, f"{elapsed:.2f}s")
    assert ok, rep.to_text()


def test_criterion_02_atomic_lattice(verdict):
    start = time.perf_counter()
    alg = lattice_algebra(powerset_lattice([1, 2, 3]))
    out = atoms_basis(alg)
    good = (
        out.basis is not None
        and check_basis_laws(out.basis).passed
        and len(basic_elements(out.basis)) == 3
        and freeness_iso(out.basis).passed
    )
    three = lattice_algebra(chain(["0", "m", "1"]))
    search = exhaustive_basis_search(three)
    bad = atoms_basis(three).basis is None and search.data["survivors"] == []
    elapsed = time.perf_counter() - start
    ok = good and bad and elapsed < 5
    verdict(2, "atoms basis of P({1,2,3}); none on the 3-chain", ok,
            f"{search.data['maps passing law2']} law2 maps searched, {elapsed:.2f}s")
    assert ok


def survivors_and_atoms():
    out = []
    for lat in small_lattices(4):
        alg = lattice_algebra(lat)
        survivors = exhaustive_basis_search(alg).data["survivors"]
        out.append((alg, survivors, atoms_basis(alg)))
    return out


def test_criterion_03_uniqueness(verdict):
    start = time.perf_counter()
    runs = survivors_and_atoms()
    bad = []
    for alg, survivors, atoms in runs:
        expected = [atoms.basis.table] if atoms.basis else []
        if len(survivors) > 1 or survivors != expected:
            bad.append(alg.elements)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    with_basis = sum(1 for _, s, _ in runs if s)
    verdict(3, "at most one basis, equal to the atoms basis", ok,
            f"{len(runs)} labelled lattices, {with_basis} with a basis, {elapsed:.2f}s")
    assert ok, bad


def test_criterion_04_freeness(verdict):
    checked = 0
    bad = []
    for alg, survivors, _ in survivors_and_atoms():
        for table in survivors:
            b = TableBasis(alg, table)
            if basic_elements(b):
                checked += 1
                if not freeness_iso(b).passed:
                    bad.append(alg.elements)
    ok = not bad and checked > 0
    verdict(4, "freeness isomorphism for every surviving basis", ok, f"{checked} bases")
    assert ok, bad


def small_posets(max_size):
    for n in range(max_size + 1):
        yield from all_posets(n)


def test_criterion_05_algebra_iff_reflection(verdict):
    start = time.perf_counter()
    maps = 0
    bad = []
    for p in small_posets(3):
        rep = sweep_algebra_iff_reflection(p)
        maps += rep.data["monotone maps"]
        if not rep.passed:
            bad.append(rep.failures()[0].witness)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    verdict(5, "algebra laws agree with reflection on every monotone map", ok,
            f"{maps} maps, {elapsed:.2f}s")
    assert ok, bad


def test_criterion_06_kz(verdict):
    kz_bad = [p.elements for p in small_posets(3) if not kz_check(p).passed]
    algebras = 0
    mu_bad = []
    for p in small_posets(3):
        for a in structure_maps(p):
            if em_laws_dwn(p, a)[0]:
                algebras += 1
                if not kz_mult_below(p, a).passed:
                    mu_bad.append(a)
    ok = not kz_bad and not mu_bad and algebras > 0
    verdict(6, "T(eta) below eta, and mu below T(a) for every algebra", ok,
            f"{algebras} algebras")
    assert ok


def test_criterion_07_adjoint_chain(verdict):
    start = time.perf_counter()
    chain_bad = []
    free_bad = []
    lattices = 0
    for p in small_posets(3):
        if not adjoint_chain_verify(p).passed:
            chain_bad.append(p.elements)
        if not p.is_lattice():
            continue
        lattices += 1
        rep = compact_freeness(canonical_chain(p))
        xc = rep.data.get("X_c", [])
        principal = {p.principal(a) for a in p.elements}
        if not (rep.passed and set(xc) == principal and isomorphic(p.dwn().subposet(xc), p)):
            free_bad.append(p.elements)
    elapsed = time.perf_counter() - start
    ok = not chain_bad and not free_bad and elapsed < 30
    verdict(7, "adjoint chain on Dwn(A); compact freeness recovers A", ok,
            f"{lattices} lattices with the full chain, {elapsed:.2f}s")
    assert ok, (chain_bad, free_bad)


def test_criterion_08_way_below(verdict):
    count = 0
    bad = []
    for n in range(1, 9):
        for lat in lattices_up_to_iso(n):
            count += 1
            rep = continuity_and_stability(lat)
            if not (rep.passed and rep.data["equals the order"]):
                bad.append(lat.elements)
    ok = not bad
    verdict(8, "way-below equals the order on every lattice up to 8 elements", ok,
            f"{count} lattices")
    assert ok


def test_criterion_09_hamel(verdict):
    bad = []
    for E, b in hamel_sample():
        n = len(E)
        cols = [tuple(c) for c in transpose(E)]
        one = identity(n)
        if not (
            check_basis_laws(b, samples=30).passed
            and basic_elements(b) == cols
            and matmul(b.E, b.C) == one
            and matmul(b.C, b.E) == one
        ):
            bad.append(E)
    rng = random.Random(1)
    rejected = 0
    for _ in range(10):
        n = rng.randint(2, 4)
        E, _ = random_invertible(rng, n)
        rows = [list(r) for r in E]
        k = rng.randrange(n)
        for r in rows:
            r[k] = r[0] * 2 if k else r[1] * 3
        try:
            hamel_basis(ModuleAlgebra(RATIONAL, n), transpose(rows))
        except NotABasisError as e:
            j, combo = e.witness["column"], e.witness["combination"]
            col = [rows[i][j] for i in range(n)]
            rebuilt = [sum(Fraction(c) * rows[i][int(k_)] for k_, c in combo.items()) for i in range(n)]
            rejected += col == rebuilt
    ok = not bad and rejected == 10
    verdict(9, "Hamel bases from 50 random invertible matrices; singular rejected", ok,
            f"{rejected}/10 singular matrices rejected with a checked witness")
    assert ok


def test_criterion_10_comonoids(verdict):
    bases = list(pauli_bases().values()) + [b for _, b in hamel_sample()]
    bad = []
    for b in bases:
        cm = derive_comonoid(b)
        if not check_comonoid_laws(cm, samples=20).passed:
            bad.append(("laws", b.E))
        if not all(copy_check(cm, v) for v in basic_elements(b)):
            bad.append(("copy", b.E))
    pairs = list(zip(bases, bases[1:]))[:12]
    tensors = 0
    for b1, b2 in pairs:
        if b1.algebra.domain != b2.algebra.domain:
            continue
        tensors += 1
        if not check_basis_laws(tensor_basis(b1, b2), samples=10).passed:
            bad.append(("tensor", b1.E, b2.E))
    ok = not bad and tensors > 0
    verdict(10, "comonoid laws, copyable basic elements, tensor bases", ok,
            f"{len(bases)} bases, {tensors} tensor products")
    assert ok, bad


def test_criterion_11_exceptions(verdict):
    start = time.perf_counter()
    carriers = carriers_up_to(3)
    maps = 0
    bad = []
    for f in range(4):
        for e in range(4):
            setup = ExceptionSetup(Coproduct([f"f{i}" for i in range(f)]), [f"e{i}" for i in range(e)])
            if not roundtrip_check(setup, carriers).passed:
                bad.append((f, e))
            for r in all_throw_maps(setup):
                maps += 1
                h = throw_to_handler(setup, r)
                if not (check_handler_laws(setup, h, carriers).passed
                        and roundtrip_check(setup, carriers, h).passed):
                    bad.append(r)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(11, "throws and handlers correspond; handler laws hold", ok,
            f"{maps} throw maps, {elapsed:.2f}s")
    assert ok, bad


def test_criterion_12_monad_laws(verdict):
    reports = [check_monad_laws(POWERSET, [f"x{i}" for i in range(n)]) for n in range(4)]
    reports += [check_monad_laws(DOWNSET, p) for p in small_posets(3)]
    sampled = [check_monad_laws(Multiset(RATIONAL), ["a", "b", "c"], samples=100, seed=0),
               check_monad_laws(DISTRIBUTION, ["a", "b", "c"], samples=100, seed=0)]
    ok = all(r.passed for r in reports + sampled)
    ok = ok and all(r.data["checked T(X) values"] >= 100 for r in sampled)
    verdict(12, "monad laws for powerset, downset, multiset and distribution", ok,
            f"{len(reports)} exhaustive carriers, 2 sampled monads")
    assert ok


def test_criterion_13_equaliser_requirement(verdict):
    rep = check_equaliser_requirement(POWERSET, ["1", "2"])
    expected_fail = not rep.passed and any(c.witness is not None for c in rep.failures())
    agreement = sorted(map(sorted, rep.data["agreement set"]))
    verdict(13, "equaliser requirement reported as failing for powerset on {1,2}", expected_fail,
            f"computed agreement set {agreement} equals the image of the unit, so it holds")
    assert expected_fail, (
        "the equaliser requirement holds for the powerset monad on {1,2}: "
        f"T(eta) and eta_T agree exactly on {agreement}"
    )
