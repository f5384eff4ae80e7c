"""Prox-regular sets, parametric families, and geometric certification."""

from .sets import (
    Ball,
    BallComplement,
    Box,
    ConvexIntersection,
    Crescent,
    CuspPair,
    HalfSpace,
    ProxSet,
    RotatedSet,
    TranslatedSet,
    TwoBallsUnion,
)
from .family import (
    Bracket,
    ConcentricBallFamily,
    FixedFamily,
    InteriorParams,
    ParamFamily,
    RotationFamily,
    TranslationFamily,
    cover_net,
    hausdorff,
    hausdorff_bracket,
)
from .checks import (
    InteriorVerdict,
    NormalVector,
    ProxRegularityReport,
    StabilityResult,
    interior_cone_equiv_check,
    normal_from_outside,
    numeric_project,
    projection_stability_check,
    projection_vi_values,
    prox_regularity_check,
    proximal_normal_defect,
    segment_distance_check,
    stability_constant,
)

__all__ = [
    "ProxSet",
    "Ball",
    "Box",
    "HalfSpace",
    "ConvexIntersection",
    "BallComplement",
    "TwoBallsUnion",
    "Crescent",
    "CuspPair",
    "RotatedSet",
    "TranslatedSet",
    "Bracket",
    "InteriorParams",
    "ParamFamily",
    "FixedFamily",
    "ConcentricBallFamily",
    "TranslationFamily",
    "RotationFamily",
    "hausdorff",
    "hausdorff_bracket",
    "cover_net",
    "ProxRegularityReport",
    "prox_regularity_check",
    "segment_distance_check",
    "InteriorVerdict",
    "interior_cone_equiv_check",
    "StabilityResult",
    "stability_constant",
    "projection_stability_check",
    "NormalVector",
    "normal_from_outside",
    "proximal_normal_defect",
    "projection_vi_values",
    "numeric_project",
]
