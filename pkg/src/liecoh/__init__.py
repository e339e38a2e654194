"""Exact Chevalley-Eilenberg cohomology of solvable Lie algebras with
one-dimensional coefficients, total cohomology, nilshadows and linear
deformations."""

from .errors import LieCohError
from .exactlinalg import RatMatrix
from .liealg import LieAlgebra, Subspace
from .modules import Character, LieModule

__all__ = ["LieAlgebra", "Subspace", "LieModule", "Character", "RatMatrix", "LieCohError"]
__version__ = "0.1.0"
