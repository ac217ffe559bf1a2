"""JSON input documents for the CLI.

Scalars are written as strings in the scalar grammar ("1/2", "-3/4i", "true");
plain JSON integers are accepted too.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebras import ConvexAlgebra, LatticeAlgebra, ModuleAlgebra, lattice_algebra
from .bases import MatrixBasis, TableBasis, basis_from_matrix
from .errors import InputError
from .exactnum import RATIONAL, ScalarDomain, domain_named
from .exceptions import ExceptionSetup, parse_throws
from .finstruct import FinPoset, poset_from_pairs
from .monads import POWERSET, Coproduct


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


def _kind(doc: dict, *allowed: str) -> str:
    k = doc.get("kind")
    if k not in allowed:
        raise InputError(f"expected kind {' or '.join(allowed)}, got {k!r}")
    return k


def _labels(xs: Any, what: str) -> list[str]:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise InputError(f"{what} must be a list of strings")
    return xs


def load_poset(doc: dict) -> FinPoset:
    _kind(doc, "poset")
    els = _labels(doc.get("elements"), "elements")
    pairs = doc.get("leq", [])
    if not isinstance(pairs, list):
        raise InputError("leq must be a list of pairs")
    return poset_from_pairs(els, pairs)


def load_lattice(doc: dict) -> LatticeAlgebra:
    p = load_poset(doc)
    if not p.is_lattice():
        raise InputError("the poset is not a lattice")
    return lattice_algebra(p, doc.get("presentation", "lattice-join"))


def load_module(doc: dict) -> ModuleAlgebra:
    _kind(doc, "module")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise InputError("dim must be a nonnegative integer")
    return ModuleAlgebra(domain_named(doc.get("scalars", "rational")), dim)


def load_convex(doc: dict) -> ConvexAlgebra:
    _kind(doc, "convex")
    pts = doc.get("points")
    if not isinstance(pts, list) or not pts:
        raise InputError("points must be a nonempty list")
    return ConvexAlgebra([[RATIONAL.coerce(c) for c in p] for p in pts])


def load_algebra(doc: dict):
    k = _kind(doc, "poset", "module", "convex")
    if k == "poset":
        if doc.get("as") != "lattice":
            raise InputError('a poset is an algebra only with "as": "lattice"')
        return load_lattice(doc)
    if k == "module":
        return load_module(doc)
    return load_convex(doc)


def _matrix(rows: Any, d: ScalarDomain, what: str) -> tuple:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what} must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise InputError(f"{what} has ragged rows")
    return tuple(tuple(d.coerce(x) for x in r) for r in rows)


def load_basis(doc: dict, algebra_doc: dict | None = None):
    """A module basis (columns of E are the vectors) or a table coalgebra."""
    k = _kind(doc, "basis", "coalgebra")
    if k == "basis":
        of = doc.get("of")
        if not isinstance(of, dict):
            raise InputError('basis needs "of": a module document')
        alg = load_module(of)
        E = _matrix(doc.get("E"), alg.domain, "E")
        if len(E) != alg.dim:
            raise InputError(f"E must have {alg.dim} rows")
        return basis_from_matrix(alg, E)
    of = doc.get("of", algebra_doc)
    if not isinstance(of, dict):
        raise InputError('coalgebra needs "of": a lattice document')
    alg = load_lattice(of)
    table = doc.get("map")
    if not isinstance(table, dict):
        raise InputError("coalgebra map must be an object")
    return TableBasis(alg, {x: _labels(v, f"map[{x}]") for x, v in table.items()})


def load_endo(doc: dict, domain: ScalarDomain | None = None) -> tuple:
    _kind(doc, "endo")
    d = domain or domain_named(doc.get("scalars", "rational"))
    return _matrix(doc.get("rows"), d, "rows")


def load_exceptions(doc: dict) -> tuple[ExceptionSetup, dict | None]:
    _kind(doc, "exceptions")
    base = doc.get("base")
    if isinstance(base, dict) and "coproduct" in base:
        monad = Coproduct(_labels(base["coproduct"], "coproduct labels"))
    elif base == "powerset":
        monad = POWERSET
    else:
        raise InputError('base must be {"coproduct": [...]} or "powerset"')
    setup = ExceptionSetup(monad, _labels(doc.get("E", []), "E"))
    throws = doc.get("throw")
    return setup, (parse_throws(setup, throws) if throws is not None else None)
