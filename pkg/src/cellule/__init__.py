"""Exact computations in affine Weyl groups with unequal parameters: alcove
geometry, Iwahori-Hecke algebras, Kazhdan-Lusztig bases and the lowest
two-sided cell."""

from .cells import Assignment, CellPartition, LowestCell, PreorderGraph
from .coxeter import CoxeterSystem, Element, GroupDescriptor, build_system
from .errors import CelluleError, StabilizationWarning
from .geometry import Alcove, AlcoveGeometry, BoundContext, SpecialPoint
from .hecke import HeckeAlgebra, HeckeElement
from .laurent import LaurentPoly
from .parabolic import ParabolicModuleContext
from .verify import Session, run_suite

__version__ = "0.1.0"

__all__ = [
    "Alcove",
    "AlcoveGeometry",
    "Assignment",
    "BoundContext",
    "CellPartition",
    "CelluleError",
    "CoxeterSystem",
    "Element",
    "GroupDescriptor",
    "HeckeAlgebra",
    "HeckeElement",
    "LaurentPoly",
    "LowestCell",
    "ParabolicModuleContext",
    "PreorderGraph",
    "Session",
    "SpecialPoint",
    "StabilizationWarning",
    "build_system",
    "run_suite",
]
