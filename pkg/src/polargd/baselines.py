"""Reference polar-decomposition solvers and cross-method comparison.

The SVD route is the ground-truth oracle; the classical (unscaled) Newton
iteration is a fast independent baseline for invertible matrices.
"""

import time
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import NoConvergenceError, SingularInputError
from .linalg import svd_factors, sym_part
from .objective import make_problem
from .solver import StepSizePolicy, cold_start, solve
from .tolerances import TAU_SING
from .validation import check_square

__all__ = [
    "PolarFactors",
    "polar_via_svd",
    "polar_via_newton",
    "MethodResult",
    "ComparisonRecord",
    "compare_solvers",
]


@dataclass(frozen=True, eq=False)
class PolarFactors:
    """Polar decomposition C = X P: orthogonal X, symmetric PSD P.

    ``iterations`` is populated by iterative methods and None for the SVD route.
    """

    x: np.ndarray
    p: np.ndarray
    iterations: int | None = None


def polar_via_svd(c):
    """Exact polar factors from the SVD: X = U V^T, P = V Sigma V^T."""
    f = svd_factors(c)
    return PolarFactors(x=f.u @ f.v.T, p=sym_part((f.v * f.sigma) @ f.v.T))


def polar_via_newton(c, tol=1e-12, max_iters=100):
    """Polar factor by the Newton iteration X_{k+1} = (X_k + X_k^{-T}) / 2.

    Starts from X_0 = C and stops when the relative update drops below
    ``tol``. The symmetric factor is recovered as the symmetrized X^T C.

    Raises
    ------
    SingularInputError
        If C is (numerically) singular; the iteration needs invertible iterates.
    NoConvergenceError
        If the update is still above tolerance after ``max_iters`` steps.
    """
    c = check_square(c, "C")
    s = np.linalg.svd(c, compute_uv=False)
    if s[-1] <= TAU_SING * s[0]:
        raise SingularInputError("Newton polar iteration needs an invertible matrix")
    xk = c
    for k in range(1, max_iters + 1):
        xk1 = 0.5 * (xk + np.linalg.inv(xk).T)
        if np.linalg.norm(xk1 - xk) <= tol * np.linalg.norm(xk):
            return PolarFactors(x=xk1, p=sym_part(xk1.T @ c), iterations=k)
        xk = xk1
    raise NoConvergenceError(f"Newton polar iteration did not converge in {max_iters} steps")


@dataclass(frozen=True)
class MethodResult:
    method: str
    iterations: int
    wall_time: float
    residual_to_svd: float
    termination: str = ""

    def to_record(self):
        return asdict(self)


@dataclass(frozen=True, eq=False)
class ComparisonRecord:
    """Cross-method agreement on the polar factor of one matrix."""

    n: int
    singular: bool
    methods: tuple
    f_gap_rgd: float

    def to_record(self):
        return {
            "n": self.n,
            "singular": self.singular,
            "f_gap_rgd": self.f_gap_rgd,
            "methods": [m.to_record() for m in self.methods],
        }


def compare_solvers(
    c,
    grad_tol=None,
    max_iters=100_000,
    newton_tol=1e-12,
    newton_max_iters=100,
    start="sign_corrected_identity",
    seed=0,
):
    """Compute the polar factor of C by SVD, gradient descent and (when C is
    invertible) Newton, and record iterations, wall time and residuals against
    the SVD oracle.

    Gradient descent runs on the objective -Tr(C^T X), whose optimum is the
    polar factor of C. For singular C the Newton baseline is skipped and the
    gradient run is judged by its objective gap alone.
    """
    c = check_square(c, "C")
    t0 = time.perf_counter()
    oracle = polar_via_svd(c)
    svd_time = time.perf_counter() - t0

    problem = make_problem(c.T)
    x0 = cold_start(problem, start, rng=seed, radius=None)
    t0 = time.perf_counter()
    rgd = solve(
        problem,
        x0,
        policy=StepSizePolicy.practical_fixed(),
        grad_tol=grad_tol,
        max_iters=max_iters,
    )
    rgd_time = time.perf_counter() - t0

    methods = [
        MethodResult("svd", 0, svd_time, 0.0),
        MethodResult(
            "rgd",
            rgd.iterations,
            rgd_time,
            float(np.linalg.norm(rgd.x_final - oracle.x)),
            rgd.termination,
        ),
    ]
    if not problem.singular:
        t0 = time.perf_counter()
        newton = polar_via_newton(c, tol=newton_tol, max_iters=newton_max_iters)
        newton_time = time.perf_counter() - t0
        methods.append(
            MethodResult(
                "newton",
                newton.iterations,
                newton_time,
                float(np.linalg.norm(newton.x - oracle.x)),
            )
        )
    return ComparisonRecord(
        n=c.shape[0],
        singular=problem.singular,
        methods=tuple(methods),
        f_gap_rgd=problem.f_gap(rgd.x_final),
    )
