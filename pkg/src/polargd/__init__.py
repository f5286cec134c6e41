"""Polar decomposition and orthogonal Procrustes on the orthogonal group.

The package computes the polar factor of a square matrix by Riemannian
gradient descent, numerically certifies the convexity-like structure of the
Procrustes objective (weak-quasi-convexity, quadratic growth, WQSC, geodesic
smoothness), and checks observed convergence against the theoretical rate
envelopes. Exact SVD and Newton baselines, scikit-learn style estimators and
a batch CLI are included.
"""

from .baselines import (
    ComparisonRecord,
    MethodResult,
    PolarFactors,
    compare_solvers,
    polar_via_newton,
    polar_via_svd,
)
from .certificates import (
    CertificateReport,
    certificate_sweep,
    check_descent_consequence,
    check_gradient_spectral_bound,
    check_quadratic_growth,
    check_smoothness_taylor,
    check_smoothness_transport,
    check_wqc,
    check_wqsc,
    toponogov_reports,
)
from .estimators import PolarDecomposition, ProcrustesAlignment
from .exceptions import (
    DifferentComponentsError,
    MatrixParseError,
    NoConvergenceError,
    NonFiniteInputError,
    NonUniqueGeodesicError,
    NotOrthogonalError,
    NotSquareError,
    PhaseAtPiError,
    PolargdError,
    SingularInputError,
    StepOutsideInjectivityError,
    ZeroMatrixError,
)
from .experiments import ExperimentConfig, generate_problem, run_experiment
from .geometry import (
    TangentVector,
    det_sign,
    distance,
    exp_map,
    geodesic_point,
    haar_sample,
    injectivity_check,
    inner,
    law_of_cosines_slack,
    log_map,
    parallel_transport,
    project_to_tangent,
    random_tangent,
)
from .linalg import (
    CanonicalForm,
    SchurBlock,
    SvdFactors,
    exp_skew,
    orthogonal_schur,
    skew_part,
    spectral_norm,
    svd_factors,
    sym_part,
)
from .matrixio import read_matrix, write_matrix
from .objective import LandscapeCoefficients, ProcrustesProblem, make_problem
from .solver import (
    SolveResult,
    SolveTrace,
    StepSizePolicy,
    cold_start,
    rgd_step,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "CertificateReport",
    "ComparisonRecord",
    "DifferentComponentsError",
    "ExperimentConfig",
    "LandscapeCoefficients",
    "MatrixParseError",
    "MethodResult",
    "NoConvergenceError",
    "NonFiniteInputError",
    "NonUniqueGeodesicError",
    "NotOrthogonalError",
    "NotSquareError",
    "PhaseAtPiError",
    "PolarDecomposition",
    "PolarFactors",
    "PolargdError",
    "ProcrustesAlignment",
    "ProcrustesProblem",
    "SchurBlock",
    "SingularInputError",
    "SolveResult",
    "SolveTrace",
    "StepOutsideInjectivityError",
    "StepSizePolicy",
    "SvdFactors",
    "TangentVector",
    "ZeroMatrixError",
    "certificate_sweep",
    "check_descent_consequence",
    "check_gradient_spectral_bound",
    "check_quadratic_growth",
    "check_smoothness_taylor",
    "check_smoothness_transport",
    "check_wqc",
    "check_wqsc",
    "cold_start",
    "compare_solvers",
    "det_sign",
    "distance",
    "exp_map",
    "exp_skew",
    "generate_problem",
    "geodesic_point",
    "haar_sample",
    "injectivity_check",
    "inner",
    "law_of_cosines_slack",
    "log_map",
    "make_problem",
    "orthogonal_schur",
    "parallel_transport",
    "polar_via_newton",
    "polar_via_svd",
    "project_to_tangent",
    "random_tangent",
    "read_matrix",
    "rgd_step",
    "run_experiment",
    "skew_part",
    "solve",
    "spectral_norm",
    "svd_factors",
    "sym_part",
    "toponogov_reports",
    "write_matrix",
]
