"""Exact-arithmetic Hochschild/Gerstenhaber calculus on truncation windows.

Subpackages cover exact sparse rational linear algebra, graded coalgebras,
finite-dimensional Lie algebra machinery (PBW windows, odd symmetric algebras,
Chevalley-Eilenberg complexes), sum-total Hochschild complexes of dg algebras
and bimodules, the enveloping-algebra bimodule triple with its explicit
homotopy operators, and the Duflo correspondence checked by exact rational
arithmetic.
"""

from .exact import (BasisSpace, GradedMap, GradedVector, StructuralError,
                    WindowOverflow, random_vector)
from .liealg import LieAlgebra

__all__ = [
    "BasisSpace", "GradedMap", "GradedVector", "StructuralError",
    "WindowOverflow", "random_vector", "LieAlgebra",
]

__version__ = "0.1.0"
