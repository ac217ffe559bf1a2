from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from basiscoalg.exactnum import Gaussian
from basiscoalg.linalg import (
    dependent_column,
    identity,
    inverse,
    kron,
    matmul,
    matvec,
    rank,
    solve,
    transpose,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m])


def from_sympy(m):
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in m.row(i)) for i in range(m.rows))


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(square))
def test_inverse_matches_sympy(rows):
    m = tuple(tuple(r) for r in rows)
    ours = inverse(m)
    oracle = to_sympy(m)
    if oracle.det() == 0:
        assert ours is None
        assert rank(m) < len(m)
    else:
        assert ours == from_sympy(oracle.inv())
        assert rank(m) == len(m)


def test_gaussian_inverse_matches_sympy():
    m = ((Gaussian(0, -1), Gaussian(0, 1)), (Gaussian(1), Gaussian(1)))
    ours = inverse(m)
    oracle = sympy.Matrix([[-sympy.I, sympy.I], [1, 1]]).inv()
    for i in range(2):
        for j in range(2):
            re, im = sympy.nsimplify(oracle[i, j]).as_real_imag()
            assert ours[i][j] == Gaussian(Fraction(str(re)), Fraction(str(im)))


@given(st.integers(1, 4).flatmap(square))
def test_rank_matches_sympy(rows):
    m = tuple(tuple(r) for r in rows)
    assert rank(m) == to_sympy(m).rank()


def test_dependent_column_witness():
    m = ((1, 2, 3), (0, 1, 1), (1, 3, 4))
    j, coeffs = dependent_column(m)
    assert j == 2
    col = [sum(coeffs[k] * m[i][k] for k in coeffs) for i in range(3)]
    assert col == [m[i][2] for i in range(3)]


def test_solve_consistent_and_inconsistent():
    a = ((1, 1), (1, -1))
    x = solve(a, (3, 1))
    assert matvec(a, x) == (3, 1)
    assert solve(((1, 1), (2, 2)), (1, 3)) is None


def test_kron_mixed_product():
    a = ((1, 2), (3, 4))
    b = ((0, 1), (1, 0))
    c = ((2, 0), (1, 1))
    d = ((1, 1), (0, 1))
    assert matmul(kron(a, b), kron(c, d)) == kron(matmul(a, c), matmul(b, d))
    assert kron(identity(2), identity(2)) == identity(4)
    assert transpose(transpose(a)) == a
