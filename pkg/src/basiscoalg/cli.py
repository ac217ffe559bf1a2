"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed (witness printed),
2 bad input, 3 refused because a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable

from . import __version__
from .algebras import LatticeAlgebra, check_em_laws, lattice_algebra
from .bases import (
    MatrixBasis,
    TableBasis,
    atoms_basis,
    basic_elements,
    check_basis_laws,
    check_equaliser_characterisation,
    exhaustive_basis_search,
    extreme_points,
    freeness_iso,
)
from .comonoid import (
    check_comonoid_laws,
    copy_check,
    derive_comonoid,
    diagonalise,
    multirel_diag_check,
    pauli_suite,
    tensor_basis,
)
from .errors import BasisError, GuardExceeded, InputError, NotABasisError, PreconditionError
from .exceptions import carriers_up_to, check_handler_laws, roundtrip_check, throw_to_handler
from .exactnum import domain_named
from .jsonio import (
    load_algebra,
    load_basis,
    load_convex,
    load_endo,
    load_exceptions,
    load_lattice,
    load_poset,
    read_json,
)
from .kzorder import (
    KZ_GUARD,
    WAY_BELOW_GUARD,
    CHAIN_GUARD,
    adjoint_chain_verify,
    algebra_iff_reflection,
    canonical_chain,
    compact_freeness,
    continuity_and_stability,
    kz_check,
    sweep_algebra_iff_reflection,
    sweep_coalgebra_iff_coreflection,
)
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


def _guard(args, default: int) -> int:
    return args.guard if args.guard is not None else default


def cmd_check_algebra(args) -> Report:
    alg = load_algebra(read_json(args.file))
    return check_em_laws(alg, samples=args.samples, seed=args.seed)


def cmd_check_basis(args) -> Report:
    other = read_json(args.algebra) if args.algebra else None
    b = load_basis(read_json(args.file), other)
    rep = check_basis_laws(b, samples=args.samples, seed=args.seed)
    if isinstance(b, TableBasis) and rep.passed:
        eq = check_equaliser_characterisation(b)
        for c in eq.checks:
            rep.add("equaliser: " + c.name, c.passed, c.witness, c.detail)
    return rep


def cmd_extract_basis(args) -> Report:
    other = read_json(args.algebra) if args.algebra else None
    b = load_basis(read_json(args.file), other)
    rep = Report("basic elements")
    basics = basic_elements(b)
    rep.data["basic elements"] = basics
    if not basics:
        rep.add("basic elements exist", False, None, "the freeness hypothesis is unmet")
        return rep
    iso = freeness_iso(b, samples=args.samples, seed=args.seed)
    rep.checks.extend(iso.checks)
    return rep


def cmd_atoms(args) -> Report:
    alg = load_lattice(read_json(args.file))
    out = atoms_basis(alg)
    rep = Report("atoms basis")
    rep.data["atoms"] = out.atoms
    if out.basis is None:
        rep.add("lattice is atomic with prime atoms", False, out.witness, out.reason)
        return rep
    rep.add("lattice is atomic with prime atoms", True)
    laws = check_basis_laws(out.basis, samples=args.samples, seed=args.seed)
    rep.checks.extend(laws.checks)
    rep.data["basis"] = out.basis.table
    return rep


def cmd_extreme_points(args) -> Report:
    return extreme_points(load_convex(read_json(args.file)))


def cmd_way_below(args) -> Report:
    p = load_poset(read_json(args.file))
    return continuity_and_stability(p, guard=_guard(args, WAY_BELOW_GUARD))


def cmd_kz_check(args) -> Report:
    return kz_check(load_poset(read_json(args.file)), guard=_guard(args, KZ_GUARD))


def cmd_adjoint_check(args) -> Report:
    doc = read_json(args.file)
    p = load_poset(doc)
    if "structure" in doc:
        entries = doc["structure"]
        if not isinstance(entries, list):
            raise InputError("structure must be a list of [downset, element] pairs")
        a = {}
        for entry in entries:
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
                raise InputError("structure entries are [downset, element]")
            a[frozenset(entry[0])] = entry[1]
        return algebra_iff_reflection(p, a)
    rep = sweep_algebra_iff_reflection(p, guard=_guard(args, KZ_GUARD))
    if p.is_lattice() and p.is_distributive() and len(p) <= 5:
        frame = lattice_algebra(p, "frame")
        co = sweep_coalgebra_iff_coreflection(frame)
        rep.checks.extend(co.checks)
        rep.data.update({"coalgebra " + k: v for k, v in co.data.items()})
    return rep


def cmd_adjoint_chain(args) -> Report:
    return adjoint_chain_verify(load_poset(read_json(args.file)), guard=_guard(args, CHAIN_GUARD))


def cmd_compact_freeness(args) -> Report:
    p = load_poset(read_json(args.file))
    if len(p) > _guard(args, CHAIN_GUARD):
        raise GuardExceeded("compact freeness", len(p), _guard(args, CHAIN_GUARD))
    return compact_freeness(canonical_chain(p))


def cmd_comonoid(args) -> Report:
    other = read_json(args.algebra) if args.algebra else None
    b = load_basis(read_json(args.file), other)
    cm = derive_comonoid(b)
    rep = check_comonoid_laws(cm, samples=args.samples, seed=args.seed)
    if isinstance(b, MatrixBasis):
        vecs = b.vectors()
    else:
        vecs = basic_elements(b)
    bad = [v for v in vecs if not copy_check(cm, v)]
    rep.add("basic elements are copyable", not bad, bad[0] if bad else None)
    if isinstance(b, MatrixBasis):
        rep.data["counit"] = list(cm.counit_row)
    return rep


def cmd_diagonalise(args) -> Report:
    b = load_basis(read_json(args.basis))
    if not isinstance(b, MatrixBasis):
        raise InputError("diagonalise needs a module basis")
    f = load_endo(read_json(args.endo), b.algebra.domain)
    return diagonalise(f, b)


def cmd_tensor_basis(args) -> Report:
    b1 = load_basis(read_json(args.first))
    b2 = load_basis(read_json(args.second))
    if not (isinstance(b1, MatrixBasis) and isinstance(b2, MatrixBasis)):
        raise InputError("tensor-basis needs two module bases")
    tb = tensor_basis(b1, b2)
    rep = check_basis_laws(tb, samples=args.samples, seed=args.seed)
    rep.title = "tensor basis " + rep.title
    rep.data["E"] = [list(r) for r in tb.E]
    return rep


def cmd_pauli_demo(args) -> Report:
    return pauli_suite()


def cmd_multirel_diag(args) -> Report:
    doc = read_json(args.file)
    d = domain_named(doc.get("scalars", "rational"))
    return multirel_diag_check(load_endo(doc, d), d)


def cmd_exception_roundtrip(args) -> Report:
    setup, throws = load_exceptions(read_json(args.file))
    carriers = carriers_up_to(_guard(args, 3 if setup.base.name == "coproduct" else 2))
    rep = roundtrip_check(setup, carriers)
    if throws is not None:
        handler = throw_to_handler(setup, throws)
        laws = check_handler_laws(setup, handler, carriers, samples=args.samples, seed=args.seed)
        rep.checks.extend(laws.checks)
        rep.data["throws"] = throws
    return rep


def cmd_search_basis(args) -> Report:
    alg = load_lattice(read_json(args.file))
    rep = exhaustive_basis_search(alg, guard=_guard(args, 5))
    n = len(rep.data["survivors"])
    rep.add("at most one basis", n <= 1, rep.data["survivors"] if n > 1 else None)
    if alg.monad.name == "powerset":
        atoms = atoms_basis(alg)
        expected = [atoms.basis.table] if atoms.basis else []
        same = [dict(s) for s in rep.data["survivors"]] == expected
        rep.add("survivors agree with the atoms basis", same)
    return rep


COMMANDS: dict[str, tuple[Callable, str, list[str]]] = {
    "check-algebra": (cmd_check_algebra, "check the algebra laws", ["file"]),
    "check-basis": (cmd_check_basis, "check the three basis laws", ["file"]),
    "extract-basis": (cmd_extract_basis, "basic elements and the freeness isomorphism", ["file"]),
    "atoms": (cmd_atoms, "atoms basis of a finite lattice", ["file"]),
    "extreme-points": (cmd_extreme_points, "extreme points of a convex set", ["file"]),
    "way-below": (cmd_way_below, "way-below relation and continuity checks", ["file"]),
    "kz-check": (cmd_kz_check, "KZ inequality for the downset monad", ["file"]),
    "adjoint-check": (cmd_adjoint_check, "algebras as reflections, coalgebras as coreflections", ["file"]),
    "adjoint-chain": (cmd_adjoint_chain, "the four-map adjoint chain", ["file"]),
    "compact-freeness": (cmd_compact_freeness, "freeness from the adjoint chain", ["file"]),
    "comonoid": (cmd_comonoid, "comonoid induced by a basis", ["file"]),
    "diagonalise": (cmd_diagonalise, "diagonalise an endomap with a basis", ["endo", "basis"]),
    "tensor-basis": (cmd_tensor_basis, "tensor product of two bases", ["first", "second"]),
    "pauli-demo": (cmd_pauli_demo, "rebuild the Pauli maps from their bases", []),
    "multirel-diag": (cmd_multirel_diag, "diagonality and dagger of a matrix relation", ["file"]),
    "exception-roundtrip": (cmd_exception_roundtrip, "throws and handlers round trip", ["file"]),
    "search-basis": (cmd_search_basis, "exhaustive basis search on a small lattice", ["file"]),
}

_TAKES_ALGEBRA = {"check-basis", "extract-basis", "comonoid"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--samples", type=int, default=100, help="samples for sampled checks")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--guard", type=int, default=None, help="size guard for exhaustive checks")
    common.add_argument("--timing", action="store_true", help="include wall-clock time")

    parser = argparse.ArgumentParser(
        prog="basiscoalg",
        description="Bases as coalgebras: exact checks on finite and small examples.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_, positional) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_, parents=[common])
        for pos in positional:
            sp.add_argument(pos)
        if name in _TAKES_ALGEBRA:
            sp.add_argument("--algebra", help="lattice document for a coalgebra without 'of'")
    return parser


def _emit_error(args, code: int, kind: str, message: str, witness=None) -> int:
    from .report import to_jsonable

    if getattr(args, "json", False):
        doc = {"tool": "basiscoalg", "version": __version__, "command": args.command,
               "verdict": kind, "error": message}
        if witness is not None:
            doc["witness"] = to_jsonable(witness)
        print(json.dumps(doc, indent=2))
    else:
        print(f"{kind}: {message}", file=sys.stderr if code != EXIT_FAIL else sys.stdout)
        if witness is not None:
            print(f"  witness: {json.dumps(to_jsonable(witness))}")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    if args.samples < 1:
        return _emit_error(args, EXIT_INPUT, "error", "--samples must be positive")
    fn = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        rep = fn(args)
    except GuardExceeded as e:
        return _emit_error(args, EXIT_GUARD, "refused", str(e), {"size": e.size, "guard": e.guard})
    except (NotABasisError, PreconditionError) as e:
        return _emit_error(args, EXIT_FAIL, "fail", str(e), e.witness)
    except InputError as e:
        return _emit_error(args, EXIT_INPUT, "error", str(e), getattr(e, "witness", None))
    except BasisError as e:
        return _emit_error(args, EXIT_INPUT, "error", str(e))
    elapsed = time.perf_counter() - start
    if args.json:
        doc = {"tool": "basiscoalg", "version": __version__, "command": args.command,
               "seed": args.seed, **rep.to_dict()}
        if args.timing:
            doc["seconds"] = round(elapsed, 3)
        print(json.dumps(doc, indent=2))
    else:
        print(rep.to_text())
        if args.timing:
            print(f"  time: {elapsed:.3f}s")
    return EXIT_PASS if rep.passed else EXIT_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
