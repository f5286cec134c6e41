"""Riemannian gradient descent for the Procrustes objective.

The solve loop records a full per-iteration trace (objective gap, gradient
norm, step size and, when the optimum is tracked, distance to the optimum,
the landscape coefficient a(X_t) and the theoretical convergence envelopes)
so that convergence-rate claims can be replayed exactly after the fact.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DifferentComponentsError, StepOutsideInjectivityError
from .geometry import (
    TangentVector,
    det_sign,
    distance,
    exp_map,
    haar_sample,
    random_tangent,
)
from .linalg import orthogonal_schur, spectral_norm
from .validation import check_orthogonal, check_rng

__all__ = [
    "StepSizePolicy",
    "SolveTrace",
    "SolveResult",
    "rgd_step",
    "solve",
    "cold_start",
    "GRAD_TOL",
    "MAX_ITERS",
    "NEAR_ANTIPODAL_MARGIN",
]

MAX_ITERS = 100_000
GRAD_TOL = 1e-10  # scaled by max(1, ||C||_F) at solve time
NEAR_ANTIPODAL_MARGIN = 1e-3


@dataclass(frozen=True)
class StepSizePolicy:
    """Step-size schedule for gradient descent.

    Modes
    -----
    theorem
        Fixed eta = (1 + cos d0) / (4 L) with d0 = dist(X0, X*); the step of
        the linear-rate guarantee. Requires optimum tracking and d0 < pi.
    adaptive
        eta_t = a(X_t) / L, the largest per-step contraction step; requires
        optimum tracking.
    practical
        Fixed eta = 1 / (4 L): the theorem step at d0 = pi/2, needing no
        knowledge of the optimum and always injectivity-safe.
    fixed
        A user-supplied constant eta.
    """

    mode: str
    eta: float | None = None

    _MODES = ("theorem", "adaptive", "practical", "fixed")

    def __post_init__(self):
        if self.mode not in self._MODES:
            raise ValueError(f"unknown step-size mode {self.mode!r}; expected one of {self._MODES}")
        if self.mode == "fixed":
            if self.eta is None or not self.eta > 0:
                raise ValueError("fixed mode requires a positive eta")
        elif self.eta is not None:
            raise ValueError(f"mode {self.mode!r} does not take an explicit eta")

    @classmethod
    def theorem_fixed(cls):
        return cls("theorem")

    @classmethod
    def adaptive(cls):
        return cls("adaptive")

    @classmethod
    def practical_fixed(cls):
        return cls("practical")

    @classmethod
    def user_fixed(cls, eta):
        return cls("fixed", float(eta))

    @property
    def needs_optimum(self):
        return self.mode in ("theorem", "adaptive")


@dataclass
class SolveTrace:
    """Raw per-iteration scalars; entry t describes the iterate X_t.

    Envelope entries follow the convergence guarantees: ``linear_envelope[t]``
    bounds dist^2(X_t, X*) and ``sublinear_envelope[t]`` bounds f(X_t) - f*.
    Fields are None when the metric is undefined for the run (no optimum
    tracking, or no fixed step size for the sublinear envelope).
    """

    f_gap: list = field(default_factory=list)
    grad_norm: list = field(default_factory=list)
    eta: list = field(default_factory=list)
    dist_to_star: list | None = None
    a_of_x: list | None = None
    near_antipodal: list | None = None
    linear_envelope: list | None = None
    sublinear_envelope: list | None = None
    d0: float | None = None
    representative_optimum: bool = False

    def __len__(self):
        return len(self.f_gap)


@dataclass(frozen=True, eq=False)
class SolveResult:
    x_final: np.ndarray
    iterations: int
    trace: SolveTrace
    termination: str  # "grad_tol" | "max_iters" | "step_rejected"


def _grad_generator(problem, x):
    # generator of grad f(X) = X * (-skew(X^T C^T)); kept local to avoid
    # re-validating X in the hot loop
    a = x.T @ problem.c.T
    return -(a - a.T) / 2.0


def rgd_step(problem, x, eta):
    """One gradient step X -> exp_X(-eta grad f(X)).

    Raises
    ------
    StepOutsideInjectivityError
        If eta * ||skew(X^T C^T)||_2 >= pi, where the exponential map is no
        longer injective. Any eta <= 1/(2 sigma_max(C)) is always safe.
    """
    x = check_orthogonal(x, name="X")
    if not eta > 0:
        raise ValueError("eta must be positive")
    omega = _grad_generator(problem, x)
    if eta * spectral_norm(omega) >= math.pi:
        raise StepOutsideInjectivityError(
            f"step of size {eta:.3e} leaves the injectivity domain"
        )
    return exp_map(TangentVector(x, -eta * omega))


def solve(
    problem,
    x0,
    policy=None,
    grad_tol=None,
    max_iters=MAX_ITERS,
    track_optimum=None,
):
    """Run gradient descent until the gradient norm drops below ``grad_tol``.

    Parameters
    ----------
    problem : ProcrustesProblem
    x0 : ndarray
        Orthogonal start. Policies that consult the optimum refuse a start in
        the other connected component: geodesic steps can never change the
        component, so such a run could not converge to X*.
    policy : StepSizePolicy, optional
        Defaults to the practical fixed step 1 / (4 L).
    grad_tol : float, optional
        Defaults to 1e-10 * max(1, ||C||_F).
    max_iters : int, optional
    track_optimum : bool, optional
        Record distance to X*, a(X_t) and the convergence envelopes. Forced
        on by optimum-consulting policies; defaults to off otherwise.

    Returns
    -------
    SolveResult
    """
    policy = policy or StepSizePolicy.practical_fixed()
    x0 = check_orthogonal(x0, name="X0")
    if grad_tol is None:
        grad_tol = GRAD_TOL * problem.scale
    track = bool(policy.needs_optimum if track_optimum is None else (track_optimum or policy.needs_optimum))

    if track and det_sign(x0) != det_sign(problem.x_star):
        raise DifferentComponentsError(
            "start is in the other connected component than the optimum"
        )

    big_l = problem.sigma_max
    d0 = distance(x0, problem.x_star) if track else None
    if policy.mode == "theorem":
        if d0 >= math.pi:
            raise ValueError(
                f"theorem step size needs dist(X0, X*) < pi, got {d0:.6f}"
            )
        fixed_eta = (1.0 + math.cos(d0)) / (4.0 * big_l)
    elif policy.mode == "practical":
        fixed_eta = 1.0 / (4.0 * big_l)
    elif policy.mode == "fixed":
        fixed_eta = policy.eta
    else:
        fixed_eta = None  # adaptive

    envelopes_on = track and d0 is not None and d0 < math.pi
    trace = SolveTrace(
        dist_to_star=[] if track else None,
        a_of_x=[] if track else None,
        near_antipodal=[] if track else None,
        linear_envelope=[] if envelopes_on else None,
        sublinear_envelope=[] if (envelopes_on and fixed_eta is not None) else None,
        d0=d0,
        representative_optimum=problem.singular,
    )

    x = x0
    linear_factor = 1.0  # running product of per-step contraction bounds
    one_plus_cos_d0 = (1.0 + math.cos(d0)) if envelopes_on else None
    # ||grad generator||_2 <= sigma_max(C), so a fixed eta with
    # eta * sigma_max < pi can never leave the injectivity domain; the
    # adaptive step eta_t * sigma_max = a(X_t) <= 1/2 is safe as well.
    always_injective = policy.mode == "adaptive" or (
        fixed_eta is not None and fixed_eta * big_l < math.pi
    )
    termination = "max_iters"
    t = 0
    while True:
        omega = _grad_generator(problem, x)
        gn = float(np.linalg.norm(omega))
        trace.f_gap.append(problem.f_gap(x))
        trace.grad_norm.append(gn)
        if track:
            canon = orthogonal_schur(x.T @ problem.x_star)
            r_max = canon.r_max
            a_t = (1.0 + math.cos(r_max)) / 4.0
            trace.dist_to_star.append(float(np.linalg.norm(canon.phi)))
            trace.a_of_x.append(a_t)
            trace.near_antipodal.append(r_max > math.pi - NEAR_ANTIPODAL_MARGIN)
        eta_t = fixed_eta if fixed_eta is not None else a_t / big_l
        trace.eta.append(eta_t)
        if envelopes_on:
            trace.linear_envelope.append(linear_factor * d0**2)
            if trace.sublinear_envelope is not None:
                trace.sublinear_envelope.append(
                    (2.0 * big_l + 1.0 / fixed_eta)
                    / (one_plus_cos_d0 * t + 4.0)
                    * d0**2
                )

        if gn <= grad_tol:
            termination = "grad_tol"
            break
        if t >= max_iters:
            termination = "max_iters"
            break
        if eta_t <= 0 or (
            not always_injective and eta_t * spectral_norm(omega) >= math.pi
        ):
            termination = "step_rejected"
            break
        x = exp_map(TangentVector(x, -eta_t * omega))
        if envelopes_on:
            linear_factor *= 1.0 - one_plus_cos_d0 * problem.sigma_min * eta_t / math.pi**2
        t += 1

    return SolveResult(x_final=x, iterations=t, trace=trace, termination=termination)


def cold_start(problem, strategy="sign_corrected_identity", rng=0, radius=None):
    """Produce a start point in the optimum's connected component.

    Strategies
    ----------
    sign_corrected_identity
        Identity, with the last column negated when det(X*) = -1.
    haar_same_component
        Haar sample re-signed into the optimum's component.
    tangent_perturbation
        exp_{X*}(X* Omega) with a random skew generator of spectral norm
        ``radius`` (< pi), so the largest rotation phase toward the optimum
        equals ``radius`` exactly.
    """
    n = problem.n
    sign_star = det_sign(problem.x_star)
    if strategy == "sign_corrected_identity":
        x0 = np.eye(n)
        if sign_star == -1:
            x0[:, -1] = -x0[:, -1]
        return x0
    if strategy == "haar_same_component":
        q = haar_sample(n, check_rng(rng))
        if det_sign(q) != sign_star:
            q = q.copy()
            q[:, -1] = -q[:, -1]
        return q
    if strategy == "tangent_perturbation":
        if radius is None:
            raise ValueError("tangent_perturbation needs a radius")
        if not 0.0 <= radius < math.pi:
            raise ValueError("radius must lie in [0, pi)")
        v = random_tangent(problem.x_star, check_rng(rng), spectral_norm_target=radius)
        return exp_map(v)
    raise ValueError(f"unknown cold-start strategy {strategy!r}")
