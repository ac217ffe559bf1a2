"""Comonoids induced by bases, diagonalisation and the Pauli example.

For a module basis with vectors E and coordinates C, the induced comonoid on
S^n copies basis vectors: d(e_j) = e_j (x) e_j and u(e_j) = 1.  In matrix form
the counit is the row 1^T C and the comultiplication the n^2 x n matrix
sum_j (e_j (x) e_j) C_j.  On a finite lattice (cartesian setting) the induced
comonoid is the diagonal with the trivial counit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

from .algebras import LatticeAlgebra, ModuleAlgebra
from .bases import MatrixBasis, TableBasis, check_basis_laws, hamel_basis
from .errors import InputError
from .exactnum import GAUSSIAN, I, ScalarDomain
from .linalg import (
    as_matrix,
    first_off_diagonal,
    identity,
    kron,
    kron_vec,
    matmul,
    matvec,
    shape,
    transpose,
)
from .report import Report


@dataclass
class ModuleComonoid:
    basis: MatrixBasis
    counit_row: tuple  # 1 x n
    comult: tuple  # n^2 x n

    @property
    def dim(self) -> int:
        return self.basis.algebra.dim

    @property
    def domain(self) -> ScalarDomain:
        return self.basis.algebra.domain

    def counit(self, x) -> Any:
        return matvec((self.counit_row,), x)[0]

    def copy(self, x) -> tuple:
        return matvec(self.comult, x)


@dataclass
class CartesianComonoid:
    basis: TableBasis

    def copy(self, x) -> tuple:
        # (a x a) . <T(pi1), T(pi2)> . T(diag) . b, evaluated literally
        alg = self.basis.algebra
        bx = self.basis(x)
        pairs = frozenset((y, y) for y in bx)
        left = frozenset(p[0] for p in pairs)
        right = frozenset(p[1] for p in pairs)
        return alg.structure(left), alg.structure(right)

    def counit(self, x) -> tuple:
        return ()


def derive_comonoid(b) -> ModuleComonoid | CartesianComonoid:
    if isinstance(b, TableBasis):
        return CartesianComonoid(b)
    if not isinstance(b, MatrixBasis):
        raise InputError(f"no comonoid construction for {type(b).__name__}")
    d = b.algebra.domain
    n, m = b.algebra.dim, b.size
    ones = tuple(d.one() for _ in range(m))
    counit = matvec(transpose(b.C), ones)
    cols = transpose(b.E)
    comult = tuple(
        tuple(
            d.total(d.mul(d.mul(cols[j][k], cols[j][l]), b.C[j][i]) for j in range(m))
            for i in range(n)
        )
        for k in range(n)
        for l in range(n)
    )
    return ModuleComonoid(b, counit, comult)


def _ident(n, d):
    return identity(n, d.one())


def check_comonoid_laws(cm, samples: int = 100, seed: int = 0) -> Report:
    if isinstance(cm, CartesianComonoid):
        return _cartesian_laws(cm)
    n = cm.dim
    d = cm.domain
    rep = Report(f"comonoid laws on {d.name}^{n}")
    I_n = _ident(n, d)
    U = (cm.counit_row,)
    D = cm.comult

    def compare(name, lhs, rhs, detail):
        w = None
        if lhs != rhs:
            w = next(
                {"row": i, "column": j, "lhs": lhs[i][j], "rhs": rhs[i][j]}
                for i in range(len(lhs))
                for j in range(len(lhs[0]))
                if lhs[i][j] != rhs[i][j]
            )
        rep.add(name, w is None, w, detail)

    compare("counit left: (u (x) id) d = id", matmul(kron(U, I_n), D), I_n, "on basis vectors")
    compare("counit right: (id (x) u) d = id", matmul(kron(I_n, U), D), I_n, "on basis vectors")
    compare(
        "coassociativity",
        matmul(kron(D, I_n), D),
        matmul(kron(I_n, D), D),
        "on basis vectors",
    )
    swap = tuple(
        tuple(d.one() if (r == (c % n) * n + c // n) else d.zero() for c in range(n * n))
        for r in range(n * n)
    )
    compare("commutativity", matmul(swap, D), D, "on basis vectors")

    rng = random.Random(seed)
    alg = cm.basis.algebra
    w = None
    for _ in range(samples):
        x = alg.sample_element(rng)
        dx = cm.copy(x)
        # (u (x) id)(d x), contracting the first tensor factor
        back = tuple(
            d.total(d.mul(cm.counit(_unit(n, d, k)), dx[k * n + l]) for k in range(n))
            for l in range(n)
        )
        if back != x:
            w = {"x": x, "recovered": back}
            break
    rep.add("counit law pointwise", w is None, w, f"{samples} seeded samples")
    return rep


def _unit(n, d, k):
    return tuple(d.one() if i == k else d.zero() for i in range(n))


def _cartesian_laws(cm: CartesianComonoid) -> Report:
    alg = cm.basis.algebra
    rep = Report("comonoid laws (cartesian)")
    w = next(({"x": x, "d(x)": cm.copy(x)} for x in alg.elements if cm.copy(x) != (x, x)), None)
    rep.add("d is the diagonal", w is None, w)
    w = next(({"x": x} for x in alg.elements if cm.copy(x)[1] != x or cm.copy(x)[0] != x), None)
    rep.add("counit laws", w is None, w)
    w = None
    for x in alg.elements:
        y, z = cm.copy(x)
        left = (cm.copy(y), z)
        right = (y, cm.copy(z))
        if (left[0][0], left[0][1], left[1]) != (right[0], right[1][0], right[1][1]):
            w = {"x": x}
            break
    rep.add("coassociativity", w is None, w)
    rep.add("commutativity", all(cm.copy(x)[::-1] == cm.copy(x) for x in alg.elements))
    return rep


def copy_check(cm, x) -> bool:
    """Is x copyable, d(x) = x (x) x?"""
    if isinstance(cm, CartesianComonoid):
        return cm.copy(x) == (x, x)
    return cm.copy(x) == kron_vec(x, x)


def eigenvalue_map(cm: ModuleComonoid, f) -> tuple:
    """v = u . f as a row vector."""
    return matvec(transpose(as_matrix(f)), cm.counit_row)


def diagonalise(f, b: MatrixBasis, candidate_v: Sequence | None = None) -> Report:
    """Is the endomap f diagonalised by b?  Checked two independent ways."""
    d = b.algebra.domain
    F = as_matrix([[d.coerce(x) for x in row] for row in f])
    n = b.algebra.dim
    if shape(F) != (n, n):
        raise InputError(f"endomap must be {n}x{n}")
    cm = derive_comonoid(b)
    M = matmul(matmul(b.C, F), b.E)
    off = first_off_diagonal(M)
    v = eigenvalue_map(cm, F)
    composite = matmul(kron((v,), _ident(n, d)), cm.comult)
    rebuilt = composite == F
    if rebuilt != (off is None):
        raise AssertionError(
            "diagonal test and rebuilt composite disagree; this is a bug"
        )
    rep = Report("diagonalisation")
    rep.add(
        "C F E is diagonal",
        off is None,
        None if off is None else {"row": off[0], "column": off[1], "entry": off[2]},
    )
    rep.add("lambda . (v (x) id) . d reproduces f", rebuilt)
    rep.data["eigenvalue map"] = list(v)
    rep.data["eigenvalues"] = [M[i][i] for i in range(n)]
    if candidate_v is not None:
        cand = tuple(d.coerce(x) for x in candidate_v)
        rep.add("candidate eigenvalue map matches", cand == v, None if cand == v else {"expected": list(v)})
    return rep


def tensor_basis(b1: MatrixBasis, b2: MatrixBasis) -> MatrixBasis:
    if b1.algebra.domain != b2.algebra.domain:
        raise InputError("tensor of bases over different scalars")
    alg = ModuleAlgebra(b1.algebra.domain, b1.algebra.dim * b2.algebra.dim)
    return MatrixBasis(alg, kron(b1.E, b2.E), kron(b1.C, b2.C))


# Pauli functions -------------------------------------------------------------

HALF = GAUSSIAN.coerce("1/2")

PAULI = {
    "x": ((0, 1), (1, 0)),
    "y": ((0, -I), (I, 0)),
    "z": ((1, 0), (0, -1)),
}

# eigenvector columns for each Pauli map
PAULI_VECTORS = {
    "x": [(1, 1), (1, -1)],
    "y": [(-I, 1), (I, 1)],
    "z": [(1, 0), (0, 1)],
}

# expected coordinate rows, counit rows and eigenvalue rows
PAULI_COORDS = {
    "x": ((HALF, HALF), (HALF, -HALF)),
    "y": ((I * HALF, HALF), (-I * HALF, HALF)),
    "z": ((1, 0), (0, 1)),
}
PAULI_COUNIT = {"x": (1, 0), "y": (0, 1), "z": (1, 1)}
PAULI_EIGEN = {"x": (0, 1), "y": (I, 0), "z": (1, -1)}

GRID = ["0", "1", "-1/2", "2+1i", "-3/4i"]


def pauli_bases() -> dict[str, MatrixBasis]:
    alg = ModuleAlgebra(GAUSSIAN, 2)
    return {k: hamel_basis(alg, vs) for k, vs in PAULI_VECTORS.items()}


def pauli_suite(grid: Sequence[str] = GRID) -> Report:
    """Rebuild each Pauli map from its basis through the comonoid."""
    d = GAUSSIAN
    rep = Report("Pauli functions")
    bases = pauli_bases()
    points = [(d.parse(z), d.parse(w)) for z in grid for w in grid]
    for k, b in bases.items():
        laws = check_basis_laws(b, samples=20)
        rep.add(f"b_{k} satisfies the basis laws", laws.passed,
                None if laws.passed else [c.name for c in laws.failures()])
        coords = tuple(tuple(d.coerce(x) for x in r) for r in PAULI_COORDS[k])
        rep.add(f"b_{k} coordinates", b.C == coords, None if b.C == coords else {"C": b.C})
        cm = derive_comonoid(b)
        u = tuple(d.coerce(x) for x in PAULI_COUNIT[k])
        rep.add(f"u_{k} counit", cm.counit_row == u, None if cm.counit_row == u else {"u": cm.counit_row})
        diag = diagonalise(PAULI[k], b, PAULI_EIGEN[k])
        rep.add(f"v_{k} eigenvalue map", diag.passed,
                None if diag.passed else [c.name for c in diag.failures()])
        sigma = as_matrix([[d.coerce(x) for x in r] for r in PAULI[k]])
        v = eigenvalue_map(cm, sigma)
        w = None
        for z, w_ in points:
            x = (z, w_)
            dx = cm.copy(x)
            # lambda . (v (x) id) applied to d(x)
            got = tuple(
                d.total(d.mul(v[a], dx[a * 2 + c]) for a in range(2)) for c in range(2)
            )
            if got != matvec(sigma, x):
                w = {"point": x, "got": got, "sigma": matvec(sigma, x)}
                break
        rep.add(f"sigma_{k} rebuilt on the {len(grid)}x{len(grid)} grid", w is None, w)
    return rep


def multirel_diag_check(r, domain: ScalarDomain) -> Report:
    """Diagonality and dagger of a square matrix relation r(x, y)."""
    R = as_matrix([[domain.coerce(x) for x in row] for row in r])
    n, m = shape(R)
    if n != m:
        raise InputError("relation matrix must be square")
    dag = tuple(tuple(domain.conj(R[j][i]) for j in range(n)) for i in range(n))
    dagdag = tuple(tuple(domain.conj(dag[j][i]) for j in range(n)) for i in range(n))
    rep = Report("multirelation")
    off = first_off_diagonal(R)
    rep.add("dagger is an involution", dagdag == R)
    rep.data["diagonal"] = off is None
    if off is not None:
        rep.data["off-diagonal witness"] = {"x": off[0], "y": off[1], "value": off[2]}
    else:
        rep.data["eigenvalue map"] = [R[i][i] for i in range(n)]
    rep.data["dagger"] = [list(row) for row in dag]
    return rep
