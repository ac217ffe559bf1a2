"""Bases as coalgebras b: X -> T(X), and their builders and checks.

Three representations:

* ``TableBasis``: explicit map on a finite lattice algebra
* ``MatrixBasis``: columns E of a basis of S^n and the coordinate matrix C
* ``BarycentricBasis``: barycentric coordinates for an affinely independent
  set of points

The three laws checked everywhere are
law1 ``b . a = mu . T(b)``, law2 ``a . b = id``, law3 ``T(eta) . b = T(b) . b``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .algebras import ConvexAlgebra, LatticeAlgebra, ModuleAlgebra
from .errors import GuardExceeded, InputError, NotABasisError, PreconditionError
from .finstruct import FinPoset, _bits, show
from .linalg import (
    as_matrix,
    dependent_column,
    from_columns,
    identity,
    matmul,
    matvec,
    rank,
    shape,
    solve,
    transpose,
)
from .monads import DOWNSET, POWERSET, Distribution, FormalSum
from .report import Report


class TableBasis:
    """b given pointwise on a finite lattice algebra."""

    def __init__(self, algebra: LatticeAlgebra, table: Mapping[Any, Any]):
        self.algebra = algebra
        p = algebra.poset
        t = {}
        for x in p.elements:
            if x not in table:
                raise InputError(f"basis undefined at {show(x)}")
            v = frozenset(table[x])
            for y in v:
                if y not in p:
                    raise InputError(f"b({show(x)}) mentions unknown element {show(y)}")
            if algebra.monad is DOWNSET and not p.is_downset(v):
                raise InputError(f"b({show(x)}) = {show(v)} is not a downset")
            t[x] = v
        extra = set(table) - set(p.elements)
        if extra:
            raise InputError(f"basis defined on unknown element {show(next(iter(extra)))}")
        self.table = t
        self._tposet = p.dwn() if algebra.monad is DOWNSET else None

    def __call__(self, x) -> frozenset:
        return self.table[x]

    @property
    def monad(self):
        return self.algebra.monad

    def masks(self) -> list[int]:
        p = self.algebra.poset
        return [p.mask(self.table[x]) for x in p.elements]

    # monad operations one level up, T(X) -> T(T(X))
    def t_of_b(self, t) -> frozenset:
        return self.monad.fmap(self, frozenset(t), target=self._tposet)

    def t_of_eta(self, t) -> frozenset:
        p = self.algebra.poset
        return self.monad.fmap(lambda y: self.monad.unit(y, over=p), frozenset(t), target=self._tposet)

    def unit(self, x) -> frozenset:
        return self.monad.unit(x, over=self.algebra.poset)

    def __repr__(self):
        return "TableBasis(" + ", ".join(f"{show(k)}->{show(v)}" for k, v in self.table.items()) + ")"


class MatrixBasis:
    """E holds the basis vectors as columns; C = E^-1 gives coordinates."""

    def __init__(self, algebra: ModuleAlgebra, E, C):
        self.algebra = algebra
        d = algebra.domain
        self.E = as_matrix([[d.coerce(x) for x in row] for row in E])
        self.C = as_matrix([[d.coerce(x) for x in row] for row in C])
        n = algebra.dim
        rows_e, m = shape(self.E)
        if rows_e != n or shape(self.C) != (m, n):
            raise InputError(f"E must be {n}x m and C m x {n}")
        self.size = m

    @property
    def monad(self):
        return self.algebra.monad

    def vectors(self) -> list[tuple]:
        return [tuple(c) for c in transpose(self.E)]

    def coordinates(self, x) -> tuple:
        return matvec(self.C, x)

    def __call__(self, x) -> FormalSum:
        return FormalSum(self.algebra.domain, list(zip(self.coordinates(x), self.vectors())))

    def __repr__(self):
        return f"MatrixBasis({self.algebra}, {self.size} vectors)"


class BarycentricBasis:
    """Barycentric coordinates on the simplex spanned by affinely independent points."""

    def __init__(self, algebra: ConvexAlgebra):
        self.algebra = algebra
        self._system = _affine_system(algebra.generators)

    @property
    def monad(self):
        return self.algebra.monad

    def coordinates(self, p) -> tuple:
        rhs = tuple(p) + (Fraction(1),)
        lam = solve(self._system, rhs)
        if lam is None or matvec(self._system, lam) != rhs:
            raise InputError(f"{p} is not in the affine hull")
        if any(l < 0 for l in lam):
            raise InputError(f"{p} lies outside the simplex")
        return lam

    def __call__(self, p) -> Distribution:
        return Distribution(list(zip(self.coordinates(p), self.algebra.generators)))


def _affine_system(points: Sequence[tuple]):
    # column i is (p_i, 1)
    return from_columns([tuple(p) + (Fraction(1),) for p in points])


# laws -----------------------------------------------------------------------


def check_basis_laws(b, samples: int = 100, seed: int = 0, with_freeness: bool = True) -> Report:
    if isinstance(b, TableBasis):
        rep = _table_laws(b)
    elif isinstance(b, MatrixBasis):
        rep = _matrix_laws(b, samples, seed)
    elif isinstance(b, BarycentricBasis):
        rep = _barycentric_laws(b, samples, seed)
    else:
        raise InputError(f"not a basis: {b!r}")
    basics = basic_elements(b)
    rep.data["basic elements"] = basics
    if with_freeness and rep.passed:
        if basics:
            iso = freeness_iso(b, samples=samples, seed=seed)
            for c in iso.checks:
                rep.add("freeness: " + c.name, c.passed, c.witness, c.detail)
        else:
            rep.data["freeness"] = "hypothesis unmet: no basic elements"
    return rep


def _table_laws(b: TableBasis) -> Report:
    alg = b.algebra
    p = alg.poset
    m = b.monad
    rep = Report(f"basis laws on {len(p)}-element {alg.presentation} algebra")
    w = None
    values = alg.t_values()
    for t in values:
        lhs = b(alg.structure(t))
        rhs = m.mult(b.t_of_b(t))
        if lhs != rhs:
            w = {"U": t, "b(a(U))": lhs, "mu(T(b)(U))": rhs}
            break
    rep.add("law1: b . a = mu . T(b)", w is None, w, f"all {len(values)} values of T(X)")
    w = None
    for x in p.elements:
        y = alg.structure(b(x))
        if y != x:
            w = {"x": x, "b(x)": b(x), "a(b(x))": y}
            break
    rep.add("law2: a . b = id", w is None, w, f"all {len(p)} elements")
    w = None
    for x in p.elements:
        lhs, rhs = b.t_of_eta(b(x)), b.t_of_b(b(x))
        if lhs != rhs:
            w = {"x": x, "T(eta)(b(x))": lhs, "T(b)(b(x))": rhs}
            break
    rep.add("law3: T(eta) . b = T(b) . b", w is None, w, f"all {len(p)} elements")
    return rep


def _matrix_laws(b: MatrixBasis, samples: int, seed: int) -> Report:
    alg = b.algebra
    d = alg.domain
    n, mm = alg.dim, b.size
    rep = Report(f"basis laws on {d.name}^{n}")
    rng = random.Random(seed)
    monad = b.monad

    w = None
    for _ in range(samples):
        t = alg.sample_t(rng)
        lhs = b(alg.structure(t))
        rhs = monad.mult(monad.fmap(b, t))
        if lhs != rhs:
            w = {"t": t, "b(a(t))": lhs, "mu(T(b)(t))": rhs}
            break
    rep.add("law1: b . a = mu . T(b)", w is None, w, f"linearity, {samples} seeded samples")

    ec = matmul(b.E, b.C)
    w = _identity_witness(ec)
    rep.add("law2: a . b = id  (E C = I)", w is None, w, f"{n}x{n} identity")
    ce = matmul(b.C, b.E)
    w = _identity_witness(ce)
    rep.add("law3: T(eta) . b = T(b) . b  (C E = I)", w is None, w, f"{mm}x{mm} identity")

    # the same two laws pointwise, on random vectors and on the basis itself
    pts = [alg.sample_element(rng) for _ in range(samples)] + b.vectors()
    w = next(({"x": x, "a(b(x))": alg.structure(b(x))} for x in pts if alg.structure(b(x)) != x), None)
    rep.add("law2 pointwise", w is None, w, f"{len(pts)} vectors")
    w = None
    for x in pts:
        bx = b(x)
        lhs = monad.fmap(monad.unit, bx)
        rhs = monad.fmap(b, bx)
        if lhs != rhs:
            w = {"x": x, "T(eta)(b(x))": lhs, "T(b)(b(x))": rhs}
            break
    rep.add("law3 pointwise", w is None, w, f"{len(pts)} vectors")
    return rep


def _identity_witness(m):
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x != (1 if i == j else 0):
                return {"row": i, "column": j, "entry": x}
    if len(m) and len(m) != len(m[0]):
        return {"shape": list(shape(m))}
    return None


def _barycentric_laws(b: BarycentricBasis, samples: int, seed: int) -> Report:
    alg = b.algebra
    monad = b.monad
    rng = random.Random(seed)
    rep = Report(f"basis laws on a {len(alg.generators)}-point simplex")
    w = None
    for _ in range(samples):
        t = alg.sample_t(rng)
        lhs = b(alg.structure(t))
        rhs = monad.mult(monad.fmap(b, t))
        if lhs != rhs:
            w = {"t": t, "b(a(t))": lhs, "mu(T(b)(t))": rhs}
            break
    rep.add("law1: b . a = mu . T(b)", w is None, w, f"{samples} seeded samples")
    pts = [alg.sample_element(rng) for _ in range(samples)] + list(alg.generators)
    w = next(({"x": x, "a(b(x))": alg.structure(b(x))} for x in pts if alg.structure(b(x)) != x), None)
    rep.add("law2: a . b = id", w is None, w, f"{len(pts)} points")
    w = None
    for x in pts:
        bx = b(x)
        lhs, rhs = monad.fmap(monad.unit, bx), monad.fmap(b, bx)
        if lhs != rhs:
            w = {"x": x, "T(eta)(b(x))": lhs, "T(b)(b(x))": rhs}
            break
    rep.add("law3: T(eta) . b = T(b) . b", w is None, w, f"{len(pts)} points")
    return rep


# basic elements and freeness -----------------------------------------------


def basic_elements(b) -> list:
    """The equaliser of b and eta: elements x with b(x) = eta(x)."""
    if isinstance(b, TableBasis):
        return [x for x in b.algebra.poset.elements if b(x) == b.unit(x)]
    if isinstance(b, MatrixBasis):
        # b(x) = 1.x forces x to be one of the basis columns
        return [v for v in dict.fromkeys(b.vectors()) if b(v) == b.monad.unit(v)]
    if isinstance(b, BarycentricBasis):
        return [v for v in b.algebra.generators if b(v) == b.monad.unit(v)]
    raise InputError(f"not a basis: {b!r}")


def freeness_iso(b, samples: int = 100, seed: int = 0) -> Report:
    """When X_b is nonempty, a . T(e): T(X_b) -> X is an isomorphism."""
    basics = basic_elements(b)
    if not basics:
        raise PreconditionError("hypothesis unmet: the set of basic elements is empty")
    rep = Report("freeness")
    rep.data["basic elements"] = basics
    if isinstance(b, TableBasis):
        alg = b.algebra
        p = alg.poset
        sub = p.subposet(basics)
        if alg.monad is DOWNSET:
            domain = sub.downsets()
            phi = lambda s: alg.structure(p.unmask(p.down_mask(p.mask(s))))
        else:
            domain = [sub.unmask(m) for m in range(1 << len(sub))]
            phi = lambda s: alg.structure(s)
        basic_set = frozenset(basics)
        psi = lambda x: b(x) & basic_set
        w = None
        for x in p.elements:
            back = alg.monad.fmap(lambda y: y, psi(x), target=p)
            if back != b(x):
                w = {"x": x, "b(x)": b(x), "restricted": psi(x)}
                break
        rep.add("b factors through T(X_b)", w is None, w)
        w = next(({"x": x, "psi(x)": psi(x), "phi(psi(x))": phi(psi(x))}
                  for x in p.elements if phi(psi(x)) != x), None)
        rep.add("phi . psi = id on X", w is None, w, f"{len(p)} elements")
        w = next(({"S": s, "phi(S)": phi(s), "psi(phi(S))": psi(phi(s))}
                  for s in domain if psi(phi(s)) != s), None)
        rep.add("psi . phi = id on T(X_b)", w is None, w, f"{len(domain)} values")
        return rep
    if isinstance(b, MatrixBasis):
        alg = b.algebra
        rng = random.Random(seed)
        vecs = b.vectors()
        phi = lambda lam: alg.structure(FormalSum(alg.domain, list(zip(lam, vecs))))
        psi = b.coordinates
        xs = [alg.sample_element(rng) for _ in range(samples)]
        w = next(({"x": x, "phi(psi(x))": phi(psi(x))} for x in xs if phi(psi(x)) != x), None)
        rep.add("phi . psi = id on X", w is None, w, f"{samples} seeded samples")
        lams = [tuple(alg.domain.random(rng) for _ in vecs) for _ in range(samples)]
        w = next(({"coords": l, "psi(phi(coords))": psi(phi(l))} for l in lams if psi(phi(l)) != l), None)
        rep.add("psi . phi = id on T(X_b)", w is None, w, f"{samples} seeded samples")
        return rep
    if isinstance(b, BarycentricBasis):
        alg = b.algebra
        rng = random.Random(seed)
        xs = [alg.sample_element(rng) for _ in range(samples)]
        w = next(({"x": x} for x in xs if alg.structure(b(x)) != x), None)
        rep.add("phi . psi = id on X", w is None, w, f"{samples} seeded samples")
        w = None
        for _ in range(samples):
            lam = Distribution(list(zip(alg.sample_weights(rng, len(alg.generators)), alg.generators)))
            if b(alg.structure(lam)) != lam:
                w = {"distribution": lam}
                break
        rep.add("psi . phi = id on T(X_b)", w is None, w, f"{samples} seeded samples")
        return rep
    raise InputError(f"not a basis: {b!r}")


# builders ---------------------------------------------------------------------


def canonical_basis(alg: LatticeAlgebra) -> TableBasis:
    """T(eta_A) on the free algebra over A."""
    if alg.free_on is None:
        raise InputError("canonical basis needs a free algebra")
    base = alg.free_on
    monad = alg.monad
    if monad is POWERSET:
        table = {s: frozenset(frozenset((a,)) for a in s) for s in alg.poset.elements}
    else:
        table = {
            u: monad.fmap(lambda a: monad.unit(a, over=base), u, target=alg.poset)
            for u in alg.poset.elements
        }
    return TableBasis(alg, table)


@dataclass
class AtomsOutcome:
    basis: TableBasis | None
    atoms: list
    witness: Any = None
    reason: str = ""


def atoms_basis(alg: LatticeAlgebra) -> AtomsOutcome:
    """b(x) = atoms below x, when every element is the join of its atoms.

    Atoms here are minimal nonzero elements with the prime property
    (a <= x v y implies a <= x or a <= y).
    """
    if alg.monad is not POWERSET:
        raise InputError("atoms basis is for the powerset presentation")
    p = alg.poset
    bot = p.idx(p.bottom())
    n = len(p)
    minimal = [
        i for i in range(n)
        if i != bot and p.below[i] == (1 << i) | (1 << bot)
    ]
    for a in minimal:
        for x in range(n):
            for y in range(n):
                j = alg.structure_mask((1 << x) | (1 << y))
                if p.leq[a][j] and not p.leq[a][x] and not p.leq[a][y]:
                    return AtomsOutcome(
                        None,
                        [p.elements[i] for i in minimal],
                        {"atom": p.elements[a], "x": p.elements[x], "y": p.elements[y]},
                        "minimal element is not prime",
                    )
    atoms_mask = sum(1 << i for i in minimal)
    table = {}
    for x in range(n):
        below = p.below[x] & atoms_mask
        if alg.structure_mask(below) != x:
            return AtomsOutcome(
                None,
                [p.elements[i] for i in minimal],
                p.elements[x],
                "element is not the join of the atoms below it",
            )
        table[p.elements[x]] = p.unmask(below)
    return AtomsOutcome(TableBasis(alg, table), [p.elements[i] for i in minimal])


def hamel_basis(alg: ModuleAlgebra, vectors: Sequence[Sequence]) -> MatrixBasis:
    """Coordinates with respect to the given vectors, which must form a basis."""
    d = alg.domain
    if not d.is_field:
        raise InputError(f"Hamel bases need a field, not {d.name}")
    vecs = [alg.vector(v) for v in vectors]
    n, m = alg.dim, len(vecs)
    if m == 0 and n == 0:
        return MatrixBasis(alg, (), ())
    E = from_columns(vecs) if vecs else tuple(() for _ in range(n))
    dep = dependent_column(E) if vecs else None
    if dep is not None:
        j, coeffs = dep
        raise NotABasisError(
            f"vector {j} is a combination of earlier ones",
            {"column": j, "combination": {str(k): str(v) for k, v in sorted(coeffs.items())}},
        )
    if m < n:
        # independent but not spanning: name a unit vector outside the span
        for i in range(n):
            e = alg.basis_vector(i)
            if rank(from_columns(vecs + [e])) > m:
                raise NotABasisError(
                    f"{m} vectors cannot span dimension {n}",
                    {"outside span": [str(c) for c in e]},
                )
    C = _inverse(E, d)
    return MatrixBasis(alg, E, C)


def _inverse(E, d):
    from .linalg import inverse

    inv = inverse(E)
    if inv is None:
        raise NotABasisError("matrix is singular")
    return tuple(tuple(d.coerce(x) for x in row) for row in inv)


def basis_from_matrix(alg: ModuleAlgebra, E) -> MatrixBasis:
    """Like ``hamel_basis`` but E is given by rows, columns being the vectors."""
    return hamel_basis(alg, transpose(as_matrix(E)))


def extreme_points(alg: ConvexAlgebra) -> Report:
    """Generators that are not convex combinations of the other generators."""
    gens = list(dict.fromkeys(alg.generators))
    rep = Report("extreme points")
    extreme = []
    combos = {}
    for k, v in enumerate(gens):
        others = gens[:k] + gens[k + 1:]
        lam = _convex_combination(v, others, alg.dim)
        if lam is None:
            extreme.append(v)
        else:
            combos[v] = lam
    rep.add("computed", True)
    rep.data["extreme points"] = extreme
    rep.data["non-extreme"] = [
        {"point": v, "as": [[str(w), list(u)] for w, u in lam]} for v, lam in combos.items()
    ]
    return rep


def _convex_combination(v, others, dim):
    """Nonnegative weights summing to 1 with sum w_i p_i = v, or None.

    By Caratheodory it suffices to try affinely independent subsets of size at
    most dim + 1, where the solution is unique.
    """
    target = tuple(v) + (Fraction(1),)
    for size in range(1, min(dim + 1, len(others)) + 1):
        for subset in itertools.combinations(others, size):
            sys_ = _affine_system(subset)
            if rank(sys_) < size:
                continue
            lam = solve(sys_, target)
            if lam is None or matvec(sys_, lam) != target:
                continue
            if all(l >= 0 for l in lam):
                return [(l, p) for l, p in zip(lam, subset)]
    return None


def convex_basis(alg: ConvexAlgebra) -> BarycentricBasis:
    gens = alg.generators
    dep = dependent_column(_affine_system(gens))
    if dep is not None:
        j, coeffs = dep
        raise NotABasisError(
            f"generator {j} is an affine combination of earlier ones",
            {"generator": j, "combination": {str(k): str(c) for k, c in sorted(coeffs.items())}},
        )
    return BarycentricBasis(alg)


# exhaustive search and the equaliser characterisation ------------------------


def exhaustive_basis_search(alg: LatticeAlgebra, guard: int = 5) -> Report:
    """Every map X -> T(X) satisfying the three laws.

    Law2 is pointwise, so candidates are the product of per-element choices
    b(x) in {t : a(t) = x}; that product is exactly the set of maps passing
    law2, and the other two laws are then checked on each.
    """
    p = alg.poset
    n = len(p)
    if n > guard:
        raise GuardExceeded("exhaustive basis search", n, guard)
    down = alg.monad is DOWNSET
    values = alg.domain_masks()
    choices = [[t for t in values if alg.structure_mask(t) == x] for x in range(n)]
    unit = (lambda i: p.below[i]) if down else (lambda i: 1 << i)

    def law1(bm):
        for t in values:
            u = 0
            for y in _bits(t):
                u |= bm[y]
            if bm[alg.structure_mask(t)] != u:
                return False
        return True

    def law3(bm):
        for x in range(n):
            left = [unit(y) for y in _bits(bm[x])]
            right = [bm[y] for y in _bits(bm[x])]
            if down:
                if not _same_down_closure(left, right):
                    return False
            elif set(left) != set(right):
                return False
        return True

    survivors = []
    count = 0
    for bm in itertools.product(*choices):
        count += 1
        if law1(bm) and law3(bm):
            survivors.append({p.elements[x]: p.unmask(bm[x]) for x in range(n)})
    rep = Report(f"exhaustive basis search on {n} elements")
    rep.add("search completed", True)
    rep.data["maps X -> T(X)"] = len(values) ** n
    rep.data["maps passing law2"] = count
    rep.data["survivors"] = survivors
    return rep


def _same_down_closure(f: list[int], g: list[int]) -> bool:
    inside = lambda a, fam: any(a & ~b == 0 for b in fam)
    return all(inside(a, g) for a in f) and all(inside(b, f) for b in g)


def check_equaliser_characterisation(b: TableBasis) -> Report:
    """b: X -> T(X) is the equaliser of T(b), T(eta): T(X) -> T(T(X))."""
    alg = b.algebra
    values = alg.t_values()
    agree = [t for t in values if b.t_of_b(t) == b.t_of_eta(t)]
    image = [b(x) for x in alg.poset.elements]
    rep = Report("equaliser characterisation")
    dup = len(set(image)) != len(image)
    rep.add("b is injective", not dup, _first_duplicate(b) if dup else None)
    missing = [t for t in image if t not in agree]
    rep.add("every b(x) is in the agreement set", not missing, missing[0] if missing else None)
    extra = [t for t in agree if t not in image]
    rep.add(
        "every agreeing t is some b(x)",
        not extra,
        extra[0] if extra else None,
        f"{len(values)} candidates t",
    )
    rep.data["agreement set"] = agree
    return rep


def _first_duplicate(b: TableBasis):
    seen = {}
    for x, v in b.table.items():
        if v in seen:
            return {"x": seen[v], "y": x, "b": v}
        seen[v] = x
    return None
