"""Scikit-learn style estimators wrapping the polar and Procrustes solvers."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .baselines import polar_via_newton, polar_via_svd
from .linalg import sym_part
from .objective import make_problem
from .solver import MAX_ITERS, StepSizePolicy, cold_start, solve
from .validation import as_matrix, check_square

__all__ = ["PolarDecomposition", "ProcrustesAlignment"]

_POLICIES = ("practical", "theorem", "adaptive", "fixed")


def _make_policy(step_policy, eta):
    if step_policy == "fixed":
        return StepSizePolicy.user_fixed(eta)
    if step_policy in _POLICIES:
        return StepSizePolicy(step_policy)
    raise ValueError(f"step_policy must be one of {_POLICIES}, got {step_policy!r}")


class PolarDecomposition(BaseEstimator):
    """Polar decomposition X = W P of a square matrix.

    ``W`` is the closest orthogonal matrix to X in Frobenius norm and ``P`` is
    symmetric positive semidefinite. The factor can be computed exactly via
    the SVD, by the Newton iteration, or by Riemannian gradient descent on
    the orthogonal group.

    Parameters
    ----------
    method : {'rgd', 'svd', 'newton'}, default='rgd'
        Algorithm computing the orthogonal factor.
    step_policy : {'practical', 'theorem', 'adaptive', 'fixed'}, default='practical'
        Step-size schedule for the gradient method.
    eta : float, optional
        Step size when ``step_policy='fixed'``.
    grad_tol : float, optional
        Gradient-norm stopping tolerance; defaults to 1e-10 * max(1, ||X||_F).
    max_iter : int, default=100000
    start : {'sign_corrected_identity', 'haar_same_component', 'tangent_perturbation'}
        Start-point strategy for the gradient method.
    start_radius : float, default=1.0
        Perturbation radius for the tangent-perturbation start.
    random_state : int, optional
        Seed for randomized starts.

    Attributes
    ----------
    orthogonal_factor_ : ndarray of shape (n, n)
    symmetric_factor_ : ndarray of shape (n, n)
    n_iter_ : int
    residual_ : float
        Relative reconstruction error ||X - W P||_F / ||X||_F.
    solve_result_ : SolveResult or None
        Full gradient-descent trace when ``method='rgd'``.
    """

    def __init__(
        self,
        method="rgd",
        step_policy="practical",
        eta=None,
        grad_tol=None,
        max_iter=MAX_ITERS,
        start="sign_corrected_identity",
        start_radius=1.0,
        random_state=None,
    ):
        self.method = method
        self.step_policy = step_policy
        self.eta = eta
        self.grad_tol = grad_tol
        self.max_iter = max_iter
        self.start = start
        self.start_radius = start_radius
        self.random_state = random_state

    def fit(self, X, y=None):
        """Factor the square matrix X."""
        X = check_square(X, "X")
        self.n_features_in_ = X.shape[0]
        self.solve_result_ = None
        if self.method == "svd":
            factors = polar_via_svd(X)
            w, p, n_iter = factors.x, factors.p, 0
        elif self.method == "newton":
            factors = polar_via_newton(X, max_iters=self.max_iter)
            w, p, n_iter = factors.x, factors.p, factors.iterations
        elif self.method == "rgd":
            problem = make_problem(X.T)  # optimum of -Tr(X^T W) is the polar factor of X
            radius = self.start_radius if self.start == "tangent_perturbation" else None
            x0 = cold_start(problem, self.start, rng=self.random_state or 0, radius=radius)
            result = solve(
                problem,
                x0,
                policy=_make_policy(self.step_policy, self.eta),
                grad_tol=self.grad_tol,
                max_iters=self.max_iter,
            )
            w = result.x_final
            p = sym_part(w.T @ X)
            n_iter = result.iterations
            self.solve_result_ = result
        else:
            raise ValueError(f"method must be 'rgd', 'svd' or 'newton', got {self.method!r}")
        self.orthogonal_factor_ = w
        self.symmetric_factor_ = p
        self.n_iter_ = n_iter
        norm = np.linalg.norm(X)
        self.residual_ = float(np.linalg.norm(X - w @ p) / norm) if norm > 0 else 0.0
        return self


class ProcrustesAlignment(TransformerMixin, BaseEstimator):
    """Orthogonal map R minimizing ||X R - Y||_F, applied as a transformer.

    Fitting solves the orthogonal Procrustes problem for the pair (X, Y);
    ``transform`` then rotates new data by the learned R. The exact SVD
    solution and the gradient-descent solver are available.

    Parameters
    ----------
    method : {'svd', 'rgd'}, default='svd'
    grad_tol, max_iter, random_state
        Gradient-method controls, as in :class:`PolarDecomposition`.

    Attributes
    ----------
    rotation_ : ndarray of shape (n_features, n_features)
    objective_value_ : float
        ||X R - Y||_F at the fitted rotation.
    n_iter_ : int
    """

    def __init__(self, method="svd", grad_tol=None, max_iter=MAX_ITERS, random_state=None):
        self.method = method
        self.grad_tol = grad_tol
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, X, y):
        """Learn the rotation aligning X to y (both of shape (n_samples, n_features))."""
        X = as_matrix(X, "X")
        y = as_matrix(y, "y")
        if X.shape != y.shape:
            raise ValueError(f"X {X.shape} and y {y.shape} must have equal shapes")
        self.n_features_in_ = X.shape[1]
        problem = make_problem(y.T @ X)
        if self.method == "svd":
            self.rotation_ = problem.x_star
            self.n_iter_ = 0
        elif self.method == "rgd":
            x0 = cold_start(problem, "sign_corrected_identity", rng=self.random_state or 0)
            result = solve(
                problem,
                x0,
                policy=StepSizePolicy.practical_fixed(),
                grad_tol=self.grad_tol,
                max_iters=self.max_iter,
            )
            self.rotation_ = result.x_final
            self.n_iter_ = result.iterations
        else:
            raise ValueError(f"method must be 'svd' or 'rgd', got {self.method!r}")
        self.objective_value_ = float(np.linalg.norm(X @ self.rotation_ - y))
        return self

    def transform(self, X):
        """Rotate X by the fitted map."""
        check_is_fitted(self, "rotation_")
        X = as_matrix(X, "X")
        return X @ self.rotation_

    def inverse_transform(self, X):
        """Undo the fitted rotation."""
        check_is_fitted(self, "rotation_")
        X = as_matrix(X, "X")
        return X @ self.rotation_.T
