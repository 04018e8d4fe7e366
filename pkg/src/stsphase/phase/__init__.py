"""Phase-level analysis: symmetry checks, coarse-graining, shapes and normal forms."""

from .loops import LoopStabilizer, braiding_phase, excited_templates, loop_stabilizers, segment
from .normalform import NormalForm, disentangle_1d
from .periodic import PeriodicDecomposition, extract_periodic_part
from .shapes import (
    DeformationCounts,
    PhaseFingerprint,
    classify_shapes,
    deformation_counts,
    require_sts,
    same_phase,
)
from .translation import (
    CoarseGrainResult,
    ScaleReport,
    check_scale_symmetry,
    check_translation_equivalence,
    coarse_grain,
)

__all__ = [
    "CoarseGrainResult",
    "DeformationCounts",
    "LoopStabilizer",
    "NormalForm",
    "PeriodicDecomposition",
    "PhaseFingerprint",
    "ScaleReport",
    "braiding_phase",
    "check_scale_symmetry",
    "check_translation_equivalence",
    "classify_shapes",
    "coarse_grain",
    "deformation_counts",
    "disentangle_1d",
    "excited_templates",
    "extract_periodic_part",
    "loop_stabilizers",
    "require_sts",
    "same_phase",
    "segment",
]
