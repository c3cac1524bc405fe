"""framekit: dual frames, subspace angles, and Zak fiberization on finite measure models."""

__version__ = "0.1.0"

from .numkernel import DEFAULT_TOL, NumericalError, Tolerance
from .subspace import Subspace
from .fiberframe import ConstructionError, FiberSystem, GramianBundle
from .mispace import (
    BiorthogonalityReport,
    EquivalenceReport,
    FiberedFunction,
    FiberedSystem,
    MeasureModel,
    verify_biorthogonality,
    verify_duality,
)
from .zak import FiniteGroupSpec, ZakPlan, build_plan, zak_forward, zak_inverse

__all__ = [
    "DEFAULT_TOL",
    "NumericalError",
    "Tolerance",
    "Subspace",
    "ConstructionError",
    "FiberSystem",
    "GramianBundle",
    "MeasureModel",
    "FiberedSystem",
    "FiberedFunction",
    "EquivalenceReport",
    "BiorthogonalityReport",
    "verify_duality",
    "verify_biorthogonality",
    "FiniteGroupSpec",
    "ZakPlan",
    "build_plan",
    "zak_forward",
    "zak_inverse",
    "__version__",
]
