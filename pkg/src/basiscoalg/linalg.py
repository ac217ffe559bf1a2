"""Exact dense matrices as tuples of rows.

Entries are Fractions or Gaussians; everything here is plain Gauss-Jordan
elimination with no pivoting heuristics, since the arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .errors import InputError

Matrix = tuple  # tuple[tuple[Any, ...], ...]
Vector = tuple


def as_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    m = tuple(tuple(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise InputError("ragged matrix rows")
    return m


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def zero_like(x: Any):
    return x - x


def identity(n: int, one: Any = Fraction(1)) -> Matrix:
    z = zero_like(one)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def columns(a: Matrix) -> list[Vector]:
    return list(transpose(a))


def from_columns(cols: Sequence[Sequence[Any]]) -> Matrix:
    return transpose(as_matrix(cols))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise InputError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), start=zero_like(row[0])) for col in bt)
        for row in a
    )


def matvec(a: Matrix, v: Sequence[Any]) -> Vector:
    if a and len(a[0]) != len(v):
        raise InputError(f"vector of length {len(v)} against {len(a[0])} columns")
    return tuple(sum((x * y for x, y in zip(row, v)), start=zero_like(row[0])) for row in a)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a
        for rb in b
    )


def kron_vec(u: Sequence[Any], v: Sequence[Any]) -> Vector:
    return tuple(x * y for x in u for y in v)


def is_identity(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m and all(a[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def first_off_diagonal(a: Matrix) -> tuple[int, int, Any] | None:
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i != j and x != 0:
                return i, j, x
    return None


def _field(x: Any) -> Any:
    # ints would turn into floats under division
    return Fraction(x) if isinstance(x, int) else x


def rref(a: Matrix) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[_field(x) for x in r] for r in a]
    rows, cols = shape(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def dependent_column(a: Matrix) -> tuple[int, dict[int, Any]] | None:
    """First column lying in the span of earlier ones, with its coefficients."""
    _, cols = shape(a)
    m, pivots = rref(a)
    for c in range(cols):
        if c not in pivots:
            coeffs = {}
            for r, p in enumerate(pivots):
                if p < c and m[r][c] != 0:
                    coeffs[p] = m[r][c]
            return c, coeffs
    return None


def inverse(a: Matrix) -> Matrix | None:
    """Exact inverse, or None when ``a`` is singular or not square."""
    n, m = shape(a)
    if n != m:
        return None
    one = _field(zero_like(a[0][0])) + 1 if n else Fraction(1)
    aug = tuple(tuple(row) + identity(n, one)[i] for i, row in enumerate(a))
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in red)


def solve(a: Matrix, b: Sequence[Any]) -> Vector | None:
    """Some solution of ``a x = b`` (free variables set to zero), or None."""
    rows, cols = shape(a)
    aug = tuple(tuple(r) + (b[i],) for i, r in enumerate(a))
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    z = _field(zero_like(b[0])) if len(b) else Fraction(0)
    x = [z] * cols
    for r, p in enumerate(pivots):
        x[p] = red[r][cols]
    return tuple(x)
