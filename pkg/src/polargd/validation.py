"""Input validation helpers shared by the library, the estimators and the CLI."""

import numpy as np

from .exceptions import NonFiniteInputError, NotOrthogonalError, NotSquareError
from .tolerances import TAU_ORTH

__all__ = [
    "as_matrix",
    "check_square",
    "check_orthogonal",
    "orthogonality_residual",
    "check_rng",
]


def as_matrix(a, name="matrix"):
    """Coerce to a 2-d float64 array and reject non-finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise NotSquareError(f"{name} must be 2-dimensional, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteInputError(f"{name} contains NaN or Inf entries")
    return m


def check_square(a, name="matrix"):
    """Coerce to a square, finite float64 array."""
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"{name} must be square, got shape {m.shape}")
    return m


def orthogonality_residual(q):
    """Frobenius norm of Q^T Q - I."""
    n = q.shape[0]
    return float(np.linalg.norm(q.T @ q - np.eye(n)))


def check_orthogonal(q, tol=TAU_ORTH, name="matrix"):
    """Coerce to square and verify ||Q^T Q - I||_F <= tol."""
    m = check_square(q, name)
    res = orthogonality_residual(m)
    if res > tol:
        raise NotOrthogonalError(
            f"{name} is not orthogonal: ||Q^T Q - I||_F = {res:.3e} > {tol:.1e}"
        )
    return m


def check_rng(rng):
    """Accept a seed or a numpy Generator and return a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)
