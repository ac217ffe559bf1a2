"""Bases as coalgebras for monads, checked exactly on finite and small examples."""

__version__ = "0.1.0"

from .algebras import ConvexAlgebra, LatticeAlgebra, ModuleAlgebra, check_em_laws, free_algebra, lattice_algebra
from .bases import (
    BarycentricBasis,
    MatrixBasis,
    TableBasis,
    atoms_basis,
    basic_elements,
    canonical_basis,
    check_basis_laws,
    check_equaliser_characterisation,
    convex_basis,
    exhaustive_basis_search,
    extreme_points,
    freeness_iso,
    hamel_basis,
)
from .exactnum import BOOLEAN, GAUSSIAN, INTEGER, NATURAL, RATIONAL, Gaussian, Scalar, scalar_arith, scalar_parse
from .finstruct import FinMap, FinPoset, FinSet, equalize, poset_from_pairs
from .monads import DISTRIBUTION, DOWNSET, POWERSET, Coproduct, Distribution, FormalSum, Multiset, check_equaliser_requirement, check_monad_laws
from .report import Report
