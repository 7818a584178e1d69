"""Exact cohomology of finite groupoids with involution.

Computes involution-equivariant (Real) Cech cohomology of finite
groupoids, classifies graded central extensions by their 2-cocycles and
Dixmier-Douady classes, and provides the proper-case contraction that
forces vanishing with rational representation coefficients.  All
arithmetic is exact (integers and fractions); results are deterministic.
"""

from .groupoids import FiniteRealGroupoid, RealCover
from .coefficients import RealCoefficientGroup, RealRepresentation, make_standard
from .cochains import RealCochain, cochain_group, differential, cohomology, invariant_sections

__all__ = [
    "FiniteRealGroupoid",
    "RealCover",
    "RealCoefficientGroup",
    "RealRepresentation",
    "make_standard",
    "RealCochain",
    "cochain_group",
    "differential",
    "cohomology",
    "invariant_sections",
]

__version__ = "0.1.0"
