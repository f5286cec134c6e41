"""Numerical certificates for the landscape inequalities of the objective.

Every check produces a CertificateReport oriented so that a nonnegative slack
means the inequality holds; the pass tolerance scales with max(1, ||C||_F)
because both sides of each inequality scale linearly with C. A failing report
on its stated domain indicates an implementation bug, not a borderline case.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .geometry import (
    exp_map,
    inner,
    law_of_cosines_slack,
    log_map,
    parallel_transport,
    random_tangent,
)
from .linalg import spectral_norm
from .tolerances import TAU_CERT
from .validation import check_rng

__all__ = [
    "WQC",
    "QUADRATIC_GROWTH",
    "WQSC",
    "SMOOTHNESS_TRANSPORT",
    "SMOOTHNESS_TAYLOR",
    "GRADIENT_SPECTRAL_BOUND",
    "TOPONOGOV",
    "CertificateReport",
    "check_wqc",
    "check_quadratic_growth",
    "check_wqsc",
    "check_smoothness_transport",
    "check_smoothness_taylor",
    "check_descent_consequence",
    "check_gradient_spectral_bound",
    "toponogov_reports",
    "certificate_sweep",
]

WQC = "WQC"
QUADRATIC_GROWTH = "QuadraticGrowth"
WQSC = "WQSC"
SMOOTHNESS_TRANSPORT = "SmoothnessTransport"
SMOOTHNESS_TAYLOR = "SmoothnessTaylor"
GRADIENT_SPECTRAL_BOUND = "GradientSpectralBound"
TOPONOGOV = "Toponogov"


@dataclass(frozen=True)
class CertificateReport:
    """One verified inequality instance.

    ``slack >= 0`` means the inequality holds; ``passed`` allows the slack to
    dip to ``-tol`` for roundoff.
    """

    kind: str
    sample: str
    lhs: float
    rhs: float
    slack: float
    tol: float
    passed: bool
    note: str = ""

    def to_record(self):
        return asdict(self)


def _report(kind, sample, lhs, rhs, slack, tol, note=""):
    return CertificateReport(
        kind=kind,
        sample=sample,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        tol=float(tol),
        passed=bool(slack >= -tol),
        note=note,
    )


def check_wqc(problem, x, sample="point"):
    """Weak-quasi-convexity: <grad f(X), -log_X X*> >= (1+cos|r|_max)/2 (f(X) - f*)."""
    lc = problem.landscape_coefficients(x)
    grad = problem.gradient(x)
    to_opt = log_map(x, problem.x_star)
    lhs = inner(grad, to_opt.scale(-1.0))
    rhs = 0.5 * (1.0 + math.cos(lc.r_max)) * problem.f_gap(x)
    tol = TAU_CERT * problem.scale
    return _report(WQC, sample, lhs, rhs, lhs - rhs, tol)


def check_quadratic_growth(problem, x, sample="point"):
    """Quadratic growth: f(X) - f* >= (2 sigma_min / pi^2) dist^2(X, X*).

    Vacuous (rhs = 0) when C is singular; the report notes that case.
    """
    d = problem.distance_to_optimum(x)
    lhs = problem.f_gap(x)
    rhs = 2.0 * problem.sigma_min / math.pi**2 * d**2
    tol = TAU_CERT * problem.scale
    note = "vacuous: sigma_min = 0" if problem.singular else ""
    return _report(QUADRATIC_GROWTH, sample, lhs, rhs, lhs - rhs, tol, note)


def check_wqsc(problem, x, sample="point"):
    """Weak-quasi-strong-convexity:
    f(X) - f* <= (1/a(X)) <grad f(X), -log_X X*> - (mu/2) dist^2(X, X*).
    """
    lc = problem.landscape_coefficients(x)
    grad = problem.gradient(x)
    to_opt = log_map(x, problem.x_star)
    d = to_opt.norm
    lhs = problem.f_gap(x)
    rhs = inner(grad, to_opt.scale(-1.0)) / lc.a_of_x - 0.5 * problem.mu * d**2
    tol = TAU_CERT * problem.scale
    return _report(WQSC, sample, lhs, rhs, rhs - lhs, tol)


def check_smoothness_transport(problem, x, y, sample="pair"):
    """Gradient Lipschitz bound along geodesics:
    ||grad f(X) - transport of grad f(Y)|| <= sigma_max(C) dist(X, Y).
    """
    grad_x = problem.gradient(x)
    grad_y = problem.gradient(y)
    moved = parallel_transport(grad_y, x)
    d = log_map(x, y).norm
    lhs = float(np.linalg.norm(grad_x.omega - moved.omega))
    rhs = problem.sigma_max * d
    tol = TAU_CERT * problem.scale
    return _report(SMOOTHNESS_TRANSPORT, sample, lhs, rhs, rhs - lhs, tol)


def check_smoothness_taylor(problem, x, y, sample="pair"):
    """Taylor upper bound: f(Y) - f(X) <= <grad f(X), log_X Y> + (L/2) dist^2."""
    to_y = log_map(x, y)
    d = to_y.norm
    grad = problem.gradient(x)
    lhs = problem.value(y) - problem.value(x)
    rhs = inner(grad, to_y) + 0.5 * problem.sigma_max * d**2
    tol = TAU_CERT * problem.scale
    return _report(SMOOTHNESS_TAYLOR, sample, lhs, rhs, rhs - lhs, tol)


def check_descent_consequence(problem, x, sample="point"):
    """Descent corollary of the Taylor bound: f(X) - f* >= ||grad f(X)||^2 / (2L)."""
    grad = problem.gradient(x)
    lhs = problem.f_gap(x)
    rhs = grad.norm**2 / (2.0 * problem.sigma_max)
    tol = TAU_CERT * problem.scale
    return _report(
        SMOOTHNESS_TAYLOR, sample, lhs, rhs, lhs - rhs, tol, note="descent corollary"
    )


def check_gradient_spectral_bound(problem, x, sample="point"):
    """Generator operator-norm bound: ||skew(X^T C^T)||_2 <= sigma_max(C)."""
    grad = problem.gradient(x)
    lhs = spectral_norm(grad.omega)
    rhs = problem.sigma_max
    tol = TAU_CERT * problem.scale
    return _report(GRADIENT_SPECTRAL_BOUND, sample, lhs, rhs, rhs - lhs, tol)


def toponogov_reports(x, y, z, scale=1.0, sample="triple"):
    """Both triangle-comparison inequalities at corner Z as reports."""
    s1, s2 = law_of_cosines_slack(x, y, z)
    lx = log_map(z, x)
    ly = log_map(z, y)
    dxy = log_map(x, y).norm
    tol = TAU_CERT * max(1.0, scale)
    r1 = _report(
        TOPONOGOV, sample + " (law of cosines)", dxy**2, dxy**2 + s1, s1, tol
    )
    r2 = _report(
        TOPONOGOV,
        sample + " (tangent comparison)",
        dxy,
        float(np.linalg.norm(lx.omega - ly.omega)),
        s2,
        tol,
    )
    return [r1, r2]


def certificate_sweep(problem, n_samples, radius_cap, seed=0, include_toponogov=True):
    """Run every certificate on points sampled around the optimum.

    Sample points are exp_{X*}(X* Omega) with random skew generators of
    spectral norm at most ``radius_cap`` (< pi), so every rotation phase
    toward the optimum stays strictly inside (-pi, pi) as the landscape
    inequalities require. Pair and triple checks perturb each sample by
    tangent vectors of Frobenius norm below 0.45 pi, which keeps all pairwise
    geodesics unique. Deterministic for a fixed seed; reports are returned in
    sample order.
    """
    if not 0.0 <= radius_cap < math.pi:
        raise ValueError("radius_cap must lie in [0, pi)")
    rng = check_rng(seed)
    pair_cap = 0.45 * math.pi
    reports = []
    for i in range(int(n_samples)):
        radius = float(rng.uniform(0.0, radius_cap))
        v = random_tangent(problem.x_star, rng, spectral_norm_target=radius)
        x = exp_map(v)
        tag = f"sample {i}"
        reports.append(check_wqc(problem, x, tag))
        reports.append(check_quadratic_growth(problem, x, tag))
        reports.append(check_wqsc(problem, x, tag))
        reports.append(check_gradient_spectral_bound(problem, x, tag))
        reports.append(check_descent_consequence(problem, x, tag))

        y = exp_map(random_tangent(x, rng, frobenius_norm=float(rng.uniform(0.0, pair_cap))))
        reports.append(check_smoothness_transport(problem, x, y, tag))
        reports.append(check_smoothness_taylor(problem, x, y, tag))

        if include_toponogov:
            a = exp_map(random_tangent(x, rng, frobenius_norm=float(rng.uniform(0.0, pair_cap))))
            b = exp_map(random_tangent(x, rng, frobenius_norm=float(rng.uniform(0.0, pair_cap))))
            reports.extend(toponogov_reports(a, b, x, scale=problem.norm_c, sample=tag))
    return reports
