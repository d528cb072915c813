"""Homological computations over finite-dimensional algebras given by structure constants."""

from .algcore import Algebra, QuiverPresentation, build_from_quiver, opposite, triangular
from .exactlin import QQ, FieldSpec

__version__ = "0.1.0"
