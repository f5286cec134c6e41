"""Riemannian geometry of the orthogonal group.

Points are plain orthogonal ndarrays; tangent vectors are (base, generator)
pairs X Omega with Omega skew-symmetric. The exponential, logarithm and
distance all go through the block canonical form, so they agree with each
other exactly on the rotation-angle structure.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DifferentComponentsError,
    NonUniqueGeodesicError,
)
from .linalg import exp_skew, orthogonal_schur, skew_part, spectral_norm
from .tolerances import TAU_INJ, TAU_ORTH, TAU_SKEW
from .validation import check_orthogonal, check_rng, check_square, orthogonality_residual

__all__ = [
    "TangentVector",
    "inner",
    "det_sign",
    "same_component",
    "project_to_tangent",
    "exp_map",
    "log_map",
    "distance",
    "parallel_transport",
    "injectivity_check",
    "law_of_cosines_slack",
    "haar_sample",
    "geodesic_point",
    "random_tangent",
]


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Tangent vector X Omega at a point X of the orthogonal group.

    The generator is re-skewed on construction; a generator whose skewness
    drift exceeds TAU_SKEW is rejected rather than silently repaired.
    """

    base: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        base = check_orthogonal(self.base, name="base")
        omega = check_square(self.omega, "omega")
        if base.shape != omega.shape:
            raise ValueError(f"base {base.shape} and omega {omega.shape} shapes differ")
        drift = float(np.linalg.norm(omega + omega.T))
        if drift > TAU_SKEW * max(1.0, float(np.linalg.norm(omega))):
            raise ValueError(f"generator is not skew-symmetric: ||Omega + Omega^T||_F = {drift:.3e}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "omega", skew_part(omega))

    @property
    def n(self):
        return self.base.shape[0]

    @property
    def ambient(self):
        """The vector X Omega as an ambient matrix."""
        return self.base @ self.omega

    @property
    def norm(self):
        """Frobenius norm; equals the norm of the ambient vector."""
        return float(np.linalg.norm(self.omega))

    def scale(self, t):
        return TangentVector(self.base, t * self.omega)


def inner(u, v):
    """Trace inner product of two tangent vectors at the same base point."""
    if u.base is not v.base and not np.array_equal(u.base, v.base):
        raise ValueError("tangent vectors have different base points")
    return float(np.sum(u.omega * v.omega))


def det_sign(q):
    """Connected-component tag: sign of det(Q), +1 or -1."""
    q = check_square(q, "Q")
    s = np.linalg.slogdet(q)[0]
    return 1 if s >= 0 else -1


def same_component(x, y):
    return det_sign(x) == det_sign(y)


def project_to_tangent(x, z, tol=TAU_ORTH):
    """Orthogonal projection of an ambient matrix Z onto the tangent space at X.

    Returns the tangent vector X skew(X^T Z).
    """
    x = check_orthogonal(x, tol, "X")
    z = check_square(z, "Z")
    return TangentVector(x, skew_part(x.T @ z))


def exp_map(v):
    """Exponential map: follow the geodesic with initial velocity ``v`` for unit time.

    The result X exp_m(Omega) is re-orthonormalized by a sign-corrected QR
    whenever its orthogonality residual drifts above TAU_ORTH / 10, which
    keeps long iterate sequences on the manifold.
    """
    y = v.base @ exp_skew(v.omega)
    if orthogonality_residual(y) > TAU_ORTH / 10.0:
        q, r = np.linalg.qr(y)
        d = np.sign(np.diag(r))
        d[d == 0] = 1.0
        y = q * d
    return y


def _canonical_relative(x, y, tol):
    x = check_orthogonal(x, tol, "X")
    y = check_orthogonal(y, tol, "Y")
    return orthogonal_schur(x.T @ y, tol)


def log_map(x, y, tol=TAU_ORTH):
    """Riemannian logarithm: the tangent vector at X whose geodesic reaches Y.

    Requires every rotation phase of X^T Y to lie strictly inside
    (-pi + TAU_INJ margin); at or beyond that the geodesic is not unique.

    Raises
    ------
    DifferentComponentsError
        If det(X) and det(Y) differ (an odd number of pi phases).
    NonUniqueGeodesicError
        If some phase magnitude exceeds pi - TAU_INJ with matching components.
    """
    canon = _canonical_relative(x, y, tol)
    if canon.det_sign == -1:
        raise DifferentComponentsError("X and Y lie in different connected components")
    if canon.r_max > math.pi - TAU_INJ:
        raise NonUniqueGeodesicError(
            f"largest rotation phase {canon.r_max:.12f} is not strictly inside (-pi, pi)"
        )
    return TangentVector(np.asarray(x, dtype=float), canon.log_generator())


def distance(x, y, tol=TAU_ORTH):
    """Riemannian distance: l2 norm of the full phase vector of X^T Y.

    Phases equal to pi are admitted (the geodesic need not be unique for the
    distance to make sense), but the points must share a component.
    """
    canon = _canonical_relative(x, y, tol)
    if canon.det_sign == -1:
        raise DifferentComponentsError("X and Y lie in different connected components")
    return float(np.linalg.norm(canon.phi))


def parallel_transport(v, y, tol=TAU_ORTH):
    """Transport a tangent vector at X along the geodesic from X to Y.

    With W = X^T Y and Xi = log_m(W), the transported generator is
    exp(-Xi/2) Omega exp(Xi/2); conjugation by an orthogonal matrix, so the
    norm is preserved exactly and transporting back inverts the map.
    """
    canon = _canonical_relative(v.base, y, tol)
    if canon.det_sign == -1:
        raise DifferentComponentsError("endpoints lie in different connected components")
    if canon.r_max > math.pi - TAU_INJ:
        raise NonUniqueGeodesicError("no unique geodesic to transport along")
    half = exp_skew(canon.log_generator() / 2.0)
    return TangentVector(np.asarray(y, dtype=float), half.T @ v.omega @ half)


def injectivity_check(v):
    """True when the exponential map is a diffeomorphism out to ``v``."""
    return spectral_norm(v.omega) < math.pi - TAU_INJ


def law_of_cosines_slack(x, y, z, tol=TAU_ORTH):
    """Slacks of the two nonnegative-curvature triangle comparisons at corner Z.

    Returns ``(slack1, slack2)`` with

    * ``slack1 = dist^2(Z,X) + dist^2(Z,Y) - 2 <log_Z X, log_Z Y> - dist^2(X,Y)``
    * ``slack2 = ||log_Z X - log_Z Y|| - dist(X,Y)``

    Both are nonnegative up to roundoff whenever the three points are
    pairwise joined by unique geodesics.
    """
    lx = log_map(z, x, tol)
    ly = log_map(z, y, tol)
    dxy = log_map(x, y, tol).norm
    slack1 = lx.norm**2 + ly.norm**2 - 2.0 * inner(lx, ly) - dxy**2
    slack2 = float(np.linalg.norm(lx.omega - ly.omega)) - dxy
    return slack1, slack2


def haar_sample(n, rng):
    """Haar-distributed orthogonal matrix, deterministic for a given seed.

    QR of a standard Gaussian matrix with the R diagonal sign absorbed into Q.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    gen = check_rng(rng)
    z = gen.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d


def geodesic_point(x, v, t):
    """Point at parameter ``t`` on the geodesic from X with initial velocity ``v``."""
    if v.base is not x and not np.array_equal(np.asarray(x, dtype=float), v.base):
        raise ValueError("tangent vector is not based at X")
    return exp_map(v.scale(float(t)))


def random_tangent(x, rng, spectral_norm_target=None, frobenius_norm=None):
    """Random skew generator at X, optionally normalized in one of the two norms.

    For n = 1 the tangent space is trivial and the zero vector is returned
    regardless of the requested norm.
    """
    gen = check_rng(rng)
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    omega = skew_part(gen.standard_normal((n, n)))
    if spectral_norm_target is not None and frobenius_norm is not None:
        raise ValueError("normalize in at most one norm")
    cur = spectral_norm(omega) if spectral_norm_target is not None else float(np.linalg.norm(omega))
    target = spectral_norm_target if spectral_norm_target is not None else frobenius_norm
    if target is not None and cur > 0:
        omega = omega * (float(target) / cur)
    return TangentVector(x, omega)
