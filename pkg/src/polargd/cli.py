"""Command-line experiment runner.

Subcommands: ``gen`` writes problem matrices, ``solve`` runs gradient-descent
trials with envelope tracking, ``certify`` sweeps the landscape certificates,
and ``compare`` cross-checks the gradient solver against the SVD and Newton
baselines. Exit codes: 0 success, 1 usage or configuration error, 2 numerical
failure (envelope or certificate violation), 3 I/O failure.
"""

import argparse
import json
import os
import sys

from .baselines import compare_solvers
from .certificates import certificate_sweep
from .exceptions import MatrixParseError, NotSquareError, PolargdError
from .experiments import (
    ExperimentConfig,
    generate_matrix,
    generate_problem,
    run_experiment,
)
from .matrixio import read_matrix, write_matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

_CERT_CSV_COLUMNS = ("trial", "kind", "sample", "lhs", "rhs", "slack", "tol", "passed", "note")


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out_path(path):
    """Resolve an output path against POLARGD_OUTDIR when it is relative."""
    if path is None:
        return None
    base = os.environ.get("POLARGD_OUTDIR", "")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _parse_spectrum(text):
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad spectrum {text!r}; expected comma-separated numbers")


def _add_problem_args(p):
    p.add_argument("--n", type=int, default=None, help="matrix dimension")
    p.add_argument("--spectrum", type=_parse_spectrum, default=None,
                   help="explicit singular values, e.g. 3,2,1 (nonincreasing)")
    p.add_argument("--cond", dest="cond_number", type=float, default=None,
                   help="condition number; interior values are log-uniform")
    p.add_argument("--sigma-max", type=float, default=None, help="largest singular value")
    p.add_argument("--input", dest="input_path", default=None,
                   help="read the problem matrix from a file instead of generating it")
    p.add_argument("--input-format", choices=("csv", "matrixmarket"), default=None)
    p.add_argument("--seed", type=int, default=None, help="base RNG seed")


def _add_solver_args(p):
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--start", choices=("sign_corrected_identity", "haar_same_component",
                                       "tangent_perturbation"), default=None)
    p.add_argument("--radius", type=float, default=None,
                   help="tangent-perturbation start radius (< pi)")
    p.add_argument("--policy", choices=("practical", "theorem", "adaptive", "fixed"),
                   default=None)
    p.add_argument("--eta", type=float, default=None, help="step size for --policy fixed")
    p.add_argument("--grad-tol", type=float, default=None)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--track-optimum", action=argparse.BooleanOptionalAction, default=None,
                   help="record distance to the optimum and envelopes")
    p.add_argument("--certify-samples", type=int, default=None,
                   help="run a certificate sweep of this many samples per trial")
    p.add_argument("--certify-radius", type=float, default=None)
    p.add_argument("--jobs", type=int, default=None, help="concurrent trials")


def _add_output_args(p, svg=True):
    p.add_argument("--csv", dest="csv_path", default=None, help="per-iteration trace CSV")
    p.add_argument("--json", dest="json_path", default=None, help="run summary JSON")
    if svg:
        p.add_argument("--svg", dest="svg_path", default=None, help="convergence chart SVG")
    p.add_argument("--config", default=None, help="JSON config file; flags override its values")


_CONFIG_KEYS = (
    "n", "spectrum", "cond_number", "sigma_max", "input_path", "input_format",
    "trials", "seed", "start", "radius", "policy", "eta", "grad_tol", "max_iters",
    "track_optimum", "certify_samples", "certify_radius", "jobs",
    "csv_path", "json_path", "svg_path",
)


def _build_config(args):
    data = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if "spectrum" in loaded and loaded["spectrum"] is not None:
            loaded["spectrum"] = tuple(loaded["spectrum"])
        data.update(loaded)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    for key in ("csv_path", "json_path", "svg_path"):
        if data.get(key):
            data[key] = _out_path(data[key])
    cfg = ExperimentConfig.from_dict(data)
    cfg.validate()
    return cfg


def _cmd_gen(args):
    cfg = _build_config(args)
    matrix = generate_matrix(cfg, trial_index=args.trial)
    write_matrix(_out_path(args.out), matrix, args.format)
    return EXIT_OK


def _cmd_solve(args):
    cfg = _build_config(args)
    result = run_experiment(cfg)
    for row in result.trials:
        print(
            f"trial {row['trial']}: {row['iterations']} iterations "
            f"({row['termination']}), final f-gap {row['final_f_gap']:.3e}"
        )
    for v in result.envelope_violations:
        print(
            f"envelope violation: trial {v['trial']} t={v['t']} {v['envelope']} "
            f"observed {v['observed']:.6e} > bound {v['bound']:.6e}",
            file=sys.stderr,
        )
    for f in result.failed_trials:
        print(f"trial {f['trial']} failed: {f['error']}: {f['message']}", file=sys.stderr)
    if cfg.certify_samples > 0:
        print(
            f"certificates: {result.certificate_reports} reports, "
            f"{result.certificate_failures} failures"
        )
    return result.exit_code


def _cmd_certify(args):
    cfg = _build_config(args)
    rows = []
    failures = 0
    for trial in range(cfg.trials):
        problem = generate_problem(cfg, trial)
        reports = certificate_sweep(
            problem, args.samples, cfg.certify_radius, seed=cfg.seed + trial
        )
        failures += sum(1 for r in reports if not r.passed)
        for r in reports:
            rows.append([str(trial), r.kind, r.sample, f"{r.lhs:.17g}", f"{r.rhs:.17g}",
                         f"{r.slack:.17g}", f"{r.tol:.17g}", "1" if r.passed else "0", r.note])
    if cfg.csv_path:
        with open(cfg.csv_path, "w", encoding="utf-8") as fh:
            fh.write(",".join(_CERT_CSV_COLUMNS) + "\n")
            fh.writelines(",".join(row) + "\n" for row in rows)
    if cfg.json_path:
        doc = {
            "config": cfg.to_dict(),
            "samples_per_trial": args.samples,
            "reports": len(rows),
            "failures": failures,
        }
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"certificates: {len(rows)} reports, {failures} failures")
    return EXIT_NUMERICAL if failures else EXIT_OK


def _cmd_compare(args):
    if args.input_path is not None:
        matrix = read_matrix(args.input_path, args.input_format)
    else:
        cfg = _build_config(args)
        matrix = generate_matrix(cfg, trial_index=0)
    record = compare_solvers(matrix, seed=args.seed or 0)
    for m in record.methods:
        print(
            f"{m.method:>7}: {m.iterations:6d} iterations, "
            f"{m.wall_time * 1e3:9.3f} ms, residual to svd {m.residual_to_svd:.3e}"
        )
    if record.singular:
        print(f"singular input: newton skipped; rgd f-gap {record.f_gap_rgd:.3e}")
    if args.json_path:
        with open(_out_path(args.json_path), "w", encoding="utf-8") as fh:
            json.dump(record.to_record(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.csv_path:
        with open(_out_path(args.csv_path), "w", encoding="utf-8") as fh:
            fh.write("n,singular,method,iterations,wall_time,residual_to_svd,termination\n")
            for m in record.methods:
                fh.write(
                    f"{record.n},{1 if record.singular else 0},{m.method},"
                    f"{m.iterations},{m.wall_time:.17g},{m.residual_to_svd:.17g},"
                    f"{m.termination}\n"
                )
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="polargd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_gen = sub.add_parser("gen", help="generate a problem matrix file")
    _add_problem_args(p_gen)
    p_gen.add_argument("--trial", type=int, default=0, help="trial index of the generated matrix")
    p_gen.add_argument("--out", required=True, help="output path")
    p_gen.add_argument("--format", choices=("csv", "matrixmarket"), default=None)
    p_gen.add_argument("--config", default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="run gradient-descent trials")
    _add_problem_args(p_solve)
    _add_solver_args(p_solve)
    _add_output_args(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_cert = sub.add_parser("certify", help="sweep the landscape certificates")
    _add_problem_args(p_cert)
    p_cert.add_argument("--samples", type=int, default=200)
    p_cert.add_argument("--certify-radius", type=float, default=None)
    p_cert.add_argument("--trials", type=int, default=None)
    _add_output_args(p_cert, svg=False)
    p_cert.set_defaults(func=_cmd_certify)

    p_cmp = sub.add_parser("compare", help="compare svd, newton and gradient descent")
    _add_problem_args(p_cmp)
    p_cmp.add_argument("--json", dest="json_path", default=None)
    p_cmp.add_argument("--csv", dest="csv_path", default=None)
    p_cmp.add_argument("--config", default=None)
    p_cmp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, MatrixParseError, NotSquareError) as exc:
        print(f"polargd: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, PolargdError) as exc:
        print(f"polargd: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
