"""momentkit: determinacy analysis for multivariate moment sequences."""

__version__ = "0.1.0"

from .errors import (
    AtomsOnRamificationWarning,
    DegreeInsufficient,
    DimensionMismatch,
    InvalidDirection,
    InvalidH,
    InvalidParameter,
    LpInfeasible,
    LpUnbounded,
    ModeMismatch,
    MomentKitError,
    NegativeWeightDetected,
    NonpositiveEvenMoment,
    NonRealPointRequired,
    NotAdmissible,
    NotCompletelyMonotonicCoefficients,
    NotInteriorDirection,
    NotPositiveDefinite,
    NotStieltjesAdmissible,
    PrecisionExhausted,
    UnknownCurve,
    UnrepresentableInMode,
    WrongSupport,
)
from .scalars import (
    ComplexScalar,
    FloatMode,
    RationalMode,
    complex_scalar,
    default_float_bits,
    exact_fraction,
    mode_from_string,
    mode_to_string,
)
from .moments import (
    Atomic,
    ConeSupport,
    CurvePushforward,
    CurveSupport,
    Exponential1D,
    FullSpace,
    GaussianProduct,
    LogNormal1D,
    MomentSequence,
    NonnegativeOrthant,
    Product,
    QLattice1D,
    WeightedBy,
    affine_map,
    apply_linear_functional,
    apply_linear_functional_1d,
    apply_polynomial_weight,
    convolve,
    generate_moments,
    marginal,
    moment,
    pushforward_direction,
    sequence_from_1d,
)
from .hamburger import (
    Admissibility,
    CarlemanResult,
    ConvergentPair,
    HankelMatrix,
    OrthoEval,
    Recurrence,
    VerdictConfig,
    WeylDisk,
    admissibility_check,
    carleman,
    christoffel,
    christoffel_direct,
    hankel,
    ortho_eval,
    reconstruct_moments,
    recurrence_from_moments,
    stieltjes_convergents,
    verdict_1d,
    weyl_disk,
)
from .verdicts import Evidence, Flavor, Leaning, Status, Sufficiency, Verdict
from .envelopes import (
    CompletelyMonotonic,
    PolynomialEnvelope,
    cm_gap_criterion,
    cosine_envelope,
    geometric_envelope,
    maclaurin_envelope,
)
from .gaps import (
    Cosine,
    Fantappie,
    GapEstimate,
    PoissonKernel,
    Sampled,
    default_grid,
    direction_scan,
    direction_set,
    grid_gap_lp,
    hyperplane_gap,
    orthant_criterion,
    poisson_kappa_1d,
    poisson_kappa_estimate,
    sphere_average_kappa,
)
from .curves import (
    CurveMeasure,
    PolynomialCurve,
    catalog,
    christoffel_on_curve,
    curve_from_json,
    curve_to_json,
    lift_and_test,
    projection_bridge,
    pushforward_to_curve,
)
from .serialization import load_moment_sequence, save_moment_sequence
