from enum import Enum


class CheckName(Enum):
    HC_BASELINE = "hc_baseline"
    MGL = "mgl"
    MGL_LINEAR = "mgl_linear"
    RENYI2_MGL = "renyi2_mgl"
    NHC = "nhc"
    LOG_SOBOLEV = "log_sobolev"
    EIGEN_BOUND = "eigen_bound"
    EIGEN_GROSS = "eigen_gross"
    BOUNDED_SUPPORT = "bounded_support"
    SEMIGROUP = "semigroup"


# checks the suite drives; eigen/semigroup are run from their own entry points
SUITE_CHECKS = (
    CheckName.HC_BASELINE,
    CheckName.MGL,
    CheckName.MGL_LINEAR,
    CheckName.RENYI2_MGL,
    CheckName.NHC,
    CheckName.LOG_SOBOLEV,
    CheckName.BOUNDED_SUPPORT,
)

# checks whose statement needs f >= 0
NONNEGATIVE_CHECKS = frozenset({
    CheckName.MGL,
    CheckName.MGL_LINEAR,
    CheckName.RENYI2_MGL,
})


class FunctionModel(Enum):
    LOG_UNIFORM = "log_uniform"
    SPARSE = "sparse"
    SPHERE_MIXTURE = "sphere_mixture"
    PRODUCT = "product"
    SIGNED = "signed"


class OmegaVariant(Enum):
    OMEGA0 = "omega0"
    OMEGA = "omega"


class TightnessKind(Enum):
    RENYI2 = "renyi2"
    NHC = "nhc"


class MaximumKind(Enum):
    # first: the anchor branch alone is active; second: the point's own branch is active or tied
    FIRST = "first"
    SECOND = "second"


class EvaluationMode(Enum):
    ANALYTIC = "analytic"
    EXPLICIT = "explicit"


class GeneratorKind(Enum):
    SPHERE = "sphere"
    BALL = "ball"
    MIXTURE = "mixture"
    CONSTANT = "constant"
    POINT_MASS = "point_mass"


class EventType(Enum):
    # run lifecycle
    RUN_STARTED = "run_started"
    RUN_FINISHED = "run_finished"
    ERROR = "error"

    # suite progress
    SUITE_STARTED = "suite_started"
    CELL_COMPLETED = "cell_completed"
    CHECK_EVALUATED = "check_evaluated"
    CHECK_FAILED = "check_failed"
    TREND_COMPUTED = "trend_computed"
    SUITE_FINISHED = "suite_finished"
