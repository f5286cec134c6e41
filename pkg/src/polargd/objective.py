"""The Procrustes objective f(X) = -Tr(C X) on the orthogonal group.

A problem object caches the SVD of C, the optimum X* = V U^T, the smoothness
constant sigma_max(C) and the growth constant mu = 4 sigma_min(C) / pi^2, and
exposes value, Riemannian gradient, Hessian action and the landscape
coefficient a(X) = (1 + cos|r|_max) / 4.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DifferentComponentsError, PhaseAtPiError, ZeroMatrixError
from .geometry import TangentVector, det_sign, inner
from .linalg import SvdFactors, orthogonal_schur, skew_part, svd_factors
from .tolerances import TAU_INJ, TAU_SING
from .validation import check_orthogonal, check_square

__all__ = [
    "LandscapeCoefficients",
    "ProcrustesProblem",
    "make_problem",
]


@dataclass(frozen=True)
class LandscapeCoefficients:
    """Largest rotation magnitude toward the optimum and a(X) = (1 + cos|r|_max)/4."""

    r_max: float
    a_of_x: float


@dataclass(frozen=True, eq=False)
class ProcrustesProblem:
    """min over orthogonal X of -Tr(C X), with cached factorization data.

    Attributes
    ----------
    c : ndarray
        The (nonzero, square) problem matrix.
    svd : SvdFactors
        Deterministic SVD of ``c``.
    sigma_max, sigma_min : float
        Extreme singular values; sigma_max is the geodesic smoothness constant.
    x_star : ndarray
        The optimum V U^T. For singular ``c`` the optimum set is larger and
        ``x_star`` is only a representative; distance-based reporting against
        it is then labeled representative.
    f_star : float
        Minimum value, minus the sum of singular values.
    mu : float
        Quadratic-growth constant 4 sigma_min / pi^2.
    singular : bool
        True when sigma_min <= TAU_SING * sigma_max.
    """

    c: np.ndarray
    svd: SvdFactors
    sigma_max: float
    sigma_min: float
    x_star: np.ndarray
    f_star: float
    mu: float
    singular: bool
    norm_c: float = field(repr=False, default=0.0)

    @property
    def n(self):
        return self.c.shape[0]

    @property
    def scale(self):
        """max(1, ||C||_F); used to scale certificate and stopping tolerances."""
        return max(1.0, self.norm_c)

    def value(self, x):
        """Objective value -Tr(C X)."""
        x = check_orthogonal(x, name="X")
        return -float(np.sum(self.c * x.T))

    def f_gap(self, x):
        return self.value(x) - self.f_star

    def gradient(self, x):
        """Riemannian gradient -X skew(X^T C^T): the Euclidean gradient projected."""
        x = check_orthogonal(x, name="X")
        return TangentVector(x, -skew_part(x.T @ self.c.T))

    def hessian_apply(self, v):
        """Riemannian Hessian applied to a tangent vector at the base of ``v``.

        Two-term formula -Xdot skew(X^T C^T) - X skew(Xdot^T C^T), re-projected
        onto the tangent space to suppress floating-point drift.
        """
        x = v.base
        xdot = v.ambient
        raw = -xdot @ skew_part(x.T @ self.c.T) - x @ skew_part(xdot.T @ self.c.T)
        return TangentVector(x, skew_part(x.T @ raw))

    def hessian_quadratic_form(self, v):
        """<v, Hess f(base)[v]> through the operator form."""
        return inner(v, self.hessian_apply(v))

    def landscape_coefficients(self, x):
        """Coefficients of the landscape inequalities at X.

        Raises
        ------
        DifferentComponentsError
            If X and the optimum have different determinant signs.
        PhaseAtPiError
            If some rotation phase of X^T X* is at (or numerically at) pi.
        """
        x = check_orthogonal(x, name="X")
        canon = orthogonal_schur(x.T @ self.x_star)
        if canon.det_sign == -1:
            raise DifferentComponentsError("X is in the other component than the optimum")
        r_max = canon.r_max
        if r_max >= math.pi - TAU_INJ:
            raise PhaseAtPiError(f"rotation phase {r_max:.12f} is numerically at pi")
        return LandscapeCoefficients(r_max=r_max, a_of_x=(1.0 + math.cos(r_max)) / 4.0)

    def distance_to_optimum(self, x):
        """Riemannian distance to x_star (representative distance when singular)."""
        from .geometry import distance

        return distance(x, self.x_star)

    def in_optimum_component(self, x):
        return det_sign(x) == det_sign(self.x_star)


def make_problem(c):
    """Build a ProcrustesProblem from a nonzero square matrix.

    Raises
    ------
    ZeroMatrixError
        If ||C||_F = 0, in which case every orthogonal matrix is optimal.
    """
    c = check_square(c, "C")
    norm_c = float(np.linalg.norm(c))
    if norm_c == 0.0:
        raise ZeroMatrixError("C is identically zero; every orthogonal matrix is optimal")
    f = svd_factors(c)
    x_star = f.v @ f.u.T
    return ProcrustesProblem(
        c=c,
        svd=f,
        sigma_max=f.sigma_max,
        sigma_min=f.sigma_min,
        x_star=x_star,
        f_star=-float(np.sum(f.sigma)),
        mu=4.0 * f.sigma_min / math.pi**2,
        singular=f.sigma_min <= TAU_SING * f.sigma_max,
        norm_c=norm_c,
    )
