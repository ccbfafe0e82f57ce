"""Exact normal forms of reversible-equivariant vector fields."""

from .golden import golden_case
from .group import FiniteSignedGroup, GroupError, SignedElement, close_group, trivial_group
from .homological import LinearPart, build_resonant_L, validate_compatibility
from .normalform import (
    NormalFormError, NormalFormResult, NormalFormStep, ProblemSpec, complement_deg, normal_form,
    normalize_step, verify_theorem_4_4,
)
from .poly import ScalarPoly, VecPoly
from .spaces import GradedSubspace

__version__ = "0.1.0"

__all__ = [
    "golden_case", "FiniteSignedGroup", "GroupError", "SignedElement", "close_group",
    "trivial_group", "LinearPart", "build_resonant_L", "validate_compatibility",
    "NormalFormError", "NormalFormResult", "NormalFormStep", "ProblemSpec", "complement_deg",
    "normal_form", "normalize_step", "verify_theorem_4_4", "ScalarPoly", "VecPoly",
    "GradedSubspace",
]
