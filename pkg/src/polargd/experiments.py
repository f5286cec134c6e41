"""Experiment configuration, problem generation and the batch runner.

A run builds one problem per trial (or ingests a fixed matrix), solves it
with the configured start and step policy, scans the trace for violations of
the theoretical envelopes, optionally sweeps the landscape certificates, and
emits a per-iteration CSV, a JSON summary and an SVG convergence chart. All
artifacts are byte-deterministic for a fixed configuration and seed.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .certificates import certificate_sweep
from .exceptions import PolargdError
from .geometry import haar_sample
from .matrixio import read_matrix
from .objective import make_problem
from .solver import MAX_ITERS, StepSizePolicy, cold_start, solve
from .svgplot import write_convergence_svg

__all__ = [
    "ENVELOPE_MARGIN",
    "ExperimentConfig",
    "resolve_spectrum",
    "generate_matrix",
    "generate_problem",
    "run_experiment",
    "ExperimentResult",
]

# Multiplicative tolerance when comparing observed curves to envelopes.
ENVELOPE_MARGIN = 1e-6

CSV_COLUMNS = (
    "trial", "t", "eta", "f_gap", "grad_norm", "dist_to_star",
    "linear_envelope", "sublinear_envelope", "a_of_x", "near_antipodal",
)


@dataclass
class ExperimentConfig:
    """Declarative description of one experiment batch."""

    n: int = 2
    spectrum: tuple | None = None
    cond_number: float | None = None
    sigma_max: float = 1.0
    input_path: str | None = None
    input_format: str | None = None
    trials: int = 1
    seed: int = 0
    start: str = "tangent_perturbation"
    radius: float = 1.0
    policy: str = "practical"
    eta: float | None = None
    grad_tol: float | None = None
    max_iters: int = MAX_ITERS
    track_optimum: bool = True
    certify_samples: int = 0
    certify_radius: float = 0.95 * math.pi
    jobs: int = 1
    csv_path: str | None = None
    json_path: str | None = None
    svg_path: str | None = None

    def validate(self):
        if self.input_path is None:
            if self.n < 1:
                raise ValueError("n must be >= 1")
            if self.spectrum is not None:
                spec = tuple(float(s) for s in self.spectrum)
                if len(spec) != self.n:
                    raise ValueError(f"spectrum length {len(spec)} != n = {self.n}")
                if any(s < 0 for s in spec):
                    raise ValueError("spectrum entries must be >= 0")
                if any(spec[i] < spec[i + 1] for i in range(len(spec) - 1)):
                    raise ValueError("spectrum must be nonincreasing")
            if self.cond_number is not None and self.cond_number < 1:
                raise ValueError("cond_number must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0.0 <= self.radius < math.pi:
            raise ValueError("radius must lie in [0, pi)")
        if not 0.0 <= self.certify_radius < math.pi:
            raise ValueError("certify_radius must lie in [0, pi)")
        if self.policy not in ("practical", "theorem", "adaptive", "fixed"):
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.policy == "fixed" and (self.eta is None or self.eta <= 0):
            raise ValueError("fixed policy requires a positive eta")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        return self

    def to_dict(self):
        d = asdict(self)
        if d["spectrum"] is not None:
            d["spectrum"] = list(d["spectrum"])
        return d

    @classmethod
    def from_dict(cls, data):
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        if cfg.spectrum is not None:
            cfg.spectrum = tuple(float(s) for s in cfg.spectrum)
        return cfg


def resolve_spectrum(cfg):
    """Singular values requested by the config, nonincreasing.

    Explicit spectra win; otherwise a condition number produces log-uniformly
    spaced values between sigma_max and sigma_max / cond; otherwise all ones.
    """
    if cfg.spectrum is not None:
        return np.asarray(cfg.spectrum, dtype=float)
    if cfg.cond_number is not None and cfg.cond_number > 1 and cfg.n > 1:
        return np.geomspace(cfg.sigma_max, cfg.sigma_max / cfg.cond_number, cfg.n)
    return np.full(cfg.n, float(cfg.sigma_max))


def _rng(cfg, trial_index, stream):
    return np.random.default_rng(
        np.random.SeedSequence(entropy=cfg.seed, spawn_key=(trial_index, stream))
    )


def generate_matrix(cfg, trial_index=0):
    """C = U diag(spectrum) V^T with independent Haar factors per trial."""
    if cfg.input_path is not None:
        return read_matrix(cfg.input_path, cfg.input_format)
    spec = resolve_spectrum(cfg)
    rng = _rng(cfg, trial_index, 0)
    u = haar_sample(cfg.n, rng)
    v = haar_sample(cfg.n, rng)
    return (u * spec) @ v.T


def generate_problem(cfg, trial_index=0, matrix=None):
    """Problem for one trial; deterministic in (seed, trial_index)."""
    if matrix is not None:
        return make_problem(matrix)
    return make_problem(generate_matrix(cfg, trial_index))


@dataclass
class ExperimentResult:
    exit_code: int
    trials: list = field(default_factory=list)
    envelope_violations: list = field(default_factory=list)
    certificate_reports: int = 0
    certificate_failures: int = 0
    failed_trials: list = field(default_factory=list)


def _run_trial(cfg, trial_index, matrix=None):
    problem = generate_problem(cfg, trial_index, matrix)
    radius = cfg.radius if cfg.start == "tangent_perturbation" else None
    x0 = cold_start(problem, cfg.start, rng=_rng(cfg, trial_index, 1), radius=radius)
    policy = (
        StepSizePolicy.user_fixed(cfg.eta)
        if cfg.policy == "fixed"
        else StepSizePolicy(cfg.policy)
    )
    result = solve(
        problem,
        x0,
        policy=policy,
        grad_tol=cfg.grad_tol,
        max_iters=cfg.max_iters,
        track_optimum=cfg.track_optimum,
    )
    reports = []
    if cfg.certify_samples > 0:
        reports = certificate_sweep(
            problem,
            cfg.certify_samples,
            cfg.certify_radius,
            seed=_rng(cfg, trial_index, 2),
        )
    return problem, result, reports


def _scan_envelopes(trial_index, trace):
    violations = []
    if trace.linear_envelope is not None and trace.dist_to_star is not None:
        for t, (obs, env) in enumerate(zip(trace.dist_to_star, trace.linear_envelope)):
            if obs**2 > env * (1.0 + ENVELOPE_MARGIN):
                violations.append(
                    {"trial": trial_index, "t": t, "envelope": "linear",
                     "observed": obs**2, "bound": env}
                )
    if trace.sublinear_envelope is not None:
        for t, (obs, env) in enumerate(zip(trace.f_gap, trace.sublinear_envelope)):
            if obs > env * (1.0 + ENVELOPE_MARGIN):
                violations.append(
                    {"trial": trial_index, "t": t, "envelope": "sublinear",
                     "observed": obs, "bound": env}
                )
    return violations


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _csv_rows(trial_index, trace):
    rows = []
    tracked = trace.dist_to_star is not None
    for t in range(len(trace)):
        rows.append([
            str(trial_index),
            str(t),
            _fmt(trace.eta[t]),
            _fmt(trace.f_gap[t]),
            _fmt(trace.grad_norm[t]),
            _fmt(trace.dist_to_star[t]) if tracked else "",
            _fmt(trace.linear_envelope[t]) if trace.linear_envelope is not None else "",
            _fmt(trace.sublinear_envelope[t]) if trace.sublinear_envelope is not None else "",
            _fmt(trace.a_of_x[t]) if tracked else "",
            _fmt(trace.near_antipodal[t]) if tracked else "",
        ])
    return rows


def _trial_summary(trial_index, problem, result):
    trace = result.trace
    tracked = trace.dist_to_star is not None
    return {
        "trial": trial_index,
        "n": problem.n,
        "singular": bool(problem.singular),
        "iterations": result.iterations,
        "termination": result.termination,
        "d0": trace.d0,
        "final_f_gap": trace.f_gap[-1],
        "final_grad_norm": trace.grad_norm[-1],
        "final_dist_to_star": trace.dist_to_star[-1] if tracked else None,
        "representative_optimum": trace.representative_optimum,
    }


def _write_svg(cfg, outcomes):
    observed, envelopes = [], []
    any_singular = any(problem.singular for problem, _, _ in outcomes.values())
    for trial_index in sorted(outcomes):
        problem, result, _ = outcomes[trial_index]
        trace = result.trace
        if any_singular:
            pts = [(t, g) for t, g in enumerate(trace.f_gap)]
            env = trace.sublinear_envelope
        else:
            pts = (
                [(t, d**2) for t, d in enumerate(trace.dist_to_star)]
                if trace.dist_to_star is not None
                else [(t, g) for t, g in enumerate(trace.f_gap)]
            )
            env = trace.linear_envelope
        observed.append(("observed" if trial_index == 0 else "", pts))
        if env is not None:
            envelopes.append(
                ("envelope" if trial_index == 0 else "", list(enumerate(env)))
            )
    ylabel = "f gap" if any_singular else "squared distance to optimum"
    write_convergence_svg(
        cfg.svg_path,
        observed,
        envelopes,
        title="gradient descent on the orthogonal group",
        ylabel=ylabel,
    )


def run_experiment(cfg):
    """Execute every trial, scan envelopes, and write the requested artifacts.

    Per-trial numerical failures are recorded and the run continues. The
    result's ``exit_code`` is 0 on full success and 2 when any envelope
    violation, certificate failure or failed trial occurred. I/O errors
    propagate to the caller.
    """
    cfg.validate()
    # ingest failures should surface as I/O problems before any trial runs
    matrix = read_matrix(cfg.input_path, cfg.input_format) if cfg.input_path else None
    outcomes = {}
    failed = []

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = {i: pool.submit(_run_trial, cfg, i, matrix) for i in range(cfg.trials)}
        for i in range(cfg.trials):
            try:
                outcomes[i] = futures[i].result()
            except PolargdError as exc:
                failed.append({"trial": i, "error": type(exc).__name__, "message": str(exc)})
    else:
        for i in range(cfg.trials):
            try:
                outcomes[i] = _run_trial(cfg, i, matrix)
            except PolargdError as exc:
                failed.append({"trial": i, "error": type(exc).__name__, "message": str(exc)})

    violations = []
    cert_reports = 0
    cert_failures = 0
    summaries = []
    csv_lines = [",".join(CSV_COLUMNS)]
    for i in sorted(outcomes):
        problem, result, reports = outcomes[i]
        violations.extend(_scan_envelopes(i, result.trace))
        cert_reports += len(reports)
        cert_failures += sum(1 for r in reports if not r.passed)
        summaries.append(_trial_summary(i, problem, result))
        csv_lines.extend(",".join(row) for row in _csv_rows(i, result.trace))

    if cfg.csv_path:
        with open(cfg.csv_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(csv_lines) + "\n")

    exit_code = 2 if (violations or cert_failures or failed) else 0
    if cfg.json_path:
        doc = {
            "config": cfg.to_dict(),
            "trials": summaries,
            "envelope_violations": violations,
            "failed_trials": failed,
            "certificates": (
                {"reports": cert_reports, "failures": cert_failures}
                if cfg.certify_samples > 0
                else None
            ),
            "exit_code": exit_code,
        }
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")

    if cfg.svg_path and outcomes:
        _write_svg(cfg, outcomes)

    return ExperimentResult(
        exit_code=exit_code,
        trials=summaries,
        envelope_violations=violations,
        certificate_reports=cert_reports,
        certificate_failures=cert_failures,
        failed_trials=failed,
    )
