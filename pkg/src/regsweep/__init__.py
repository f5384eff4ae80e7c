"""Sweeping processes with prox-regular moving constraints.

A library built around three layers: right-continuous step functions and
their Stieltjes calculus, a catalog of prox-regular sets with exact
projections, and the catching-up solver with its verification machinery.
"""

from .errors import (
    ApproximationError,
    ConfigError,
    HypothesisError,
    JumpAdmissibilityError,
    OutOfReachError,
    RegSweepError,
)
from .stepfunctions import (
    StepFn,
    Variation,
    align,
    merge_times,
    step_from_csv,
    step_to_csv,
    sup_distance,
    total_variation,
)
from .regulated import (
    RegulatedInput,
    max_jump_gauge,
    max_jump_gauge_regulated,
    step_approximate,
)
from .kurzweil import (
    GenExp,
    GronwallVerdict,
    IntegralValue,
    gen_exponential,
    gronwall_bound,
    hake_check,
    identity_tol,
    indicator_interval_integral,
    indicator_point_integral,
    ks_integral,
    ks_integral_scalar,
    parts_defect,
    quadratic_identity_defect,
)
from . import proxgeom
from . import sweeper
from .proxgeom import (
    Ball,
    BallComplement,
    Box,
    ConcentricBallFamily,
    Crescent,
    CuspPair,
    FixedFamily,
    HalfSpace,
    InteriorParams,
    ParamFamily,
    ProxSet,
    RotationFamily,
    TranslationFamily,
    TwoBallsUnion,
)
from .sweeper import (
    DEFAULT_M,
    SweepProblem,
    SweepSolution,
    TestBudget,
    catching_up,
    solve,
    variation_bound,
)

__version__ = "0.1.0"
