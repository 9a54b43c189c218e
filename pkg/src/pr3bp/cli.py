"""
Command-line interface.

Subcommands: ``analyze``, ``sweep``, ``trajectory`` and ``verify``.

Every option can also be set in a flat ``key = value`` file passed with
``--config`` or through an environment variable ``PR3BP_<KEY>`` (for
example ``PR3BP_W1=1e-6``). Precedence: command-line flag, then
environment, then config file, then built-in default.

Exit codes: 0 success, 2 usage error, 3 solver error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
import warnings

import numpy as np

from .equilibria import analytic_point, locate
from .errors import DomainError, PR3BPError
from .params import Branch, SystemParams
from .propagation import integrate, radial_offset
from .stability import classify
from .sweep import Range, ResultRow, SweepSpec, run_sweep, write_csv, write_jsonl, write_trajectory_csv

ENV_PREFIX = "PR3BP_"

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4


def _bool(text):
    if isinstance(text, bool):
        return text
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise DomainError(f"not a boolean: {text!r}")


# key -> (converter, default); keys double as config-file keys.
OPTIONS = {
    "mu": (str, None),
    "q1": (str, "1"),
    "a2": (str, "0"),
    "w1": (str, "0"),
    "branch": (str, "L4"),
    "json": (_bool, False),
    "verify": (_bool, False),
    "analytic": (_bool, False),
    "format": (str, "csv"),
    "output": (str, "-"),
    "workers": (int, 1),
    "from_equilibrium": (_bool, False),
    "offset": (float, 1e-6),
    "state": (str, None),
    "t_end": (float, 100.0),
    "tol": (float, 1e-10),
    "samples": (int, 1001),
}

COMMAND_KEYS = {
    "analyze": ("mu", "q1", "a2", "w1", "branch", "json", "verify", "analytic"),
    "sweep": ("mu", "q1", "a2", "w1", "branch", "analytic", "format", "output", "workers"),
    "trajectory": ("mu", "q1", "a2", "w1", "branch", "from_equilibrium", "offset", "state",
                   "t_end", "tol", "samples", "output"),
    "verify": ("mu", "q1", "a2", "w1", "branch"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_").lower()] = value
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pr3bp", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, ranges=False):
        kind = "value or lo:hi:count[:log]" if ranges else "value"
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--mu", help=f"mass ratio ({kind})")
        p.add_argument("--q1", help=f"mass-reduction factor ({kind})")
        p.add_argument("--a2", help=f"oblateness coefficient ({kind})")
        p.add_argument("--w1", help=f"Poynting-Robertson drag parameter ({kind})")
        p.add_argument("--branch", choices=["L4", "L5"])

    p = sub.add_parser("analyze", help="locate and classify one triangular point")
    common(p)
    p.add_argument("--json", action="store_true", default=None, help="emit JSON")
    p.add_argument("--verify", action="store_true", default=None,
                   help="add the numerical oracle cross-check")
    p.add_argument("--analytic", action="store_true", default=None,
                   help="classify at the analytic point instead of the Newton-refined one")

    p = sub.add_parser("sweep", help="classify every point of a parameter grid")
    common(p, ranges=True)
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--output", help="output path, '-' for stdout")
    p.add_argument("--workers", type=int, help="parallel worker processes")
    p.add_argument("--analytic", action="store_true", default=None)

    p = sub.add_parser("trajectory", help="integrate an orbit and export samples as CSV")
    common(p)
    p.add_argument("--from-equilibrium", dest="from_equilibrium", action="store_true", default=None,
                   help="start at rest, displaced radially from the equilibrium")
    p.add_argument("--offset", type=float, help="radial displacement for --from-equilibrium")
    p.add_argument("--state", help="initial state x,y,z,vx,vy,vz")
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--samples", type=int, help="number of uniformly spaced samples")
    p.add_argument("--output", help="output path, '-' for stdout")

    p = sub.add_parser("verify", help="compare closed forms against numerical oracles")
    common(p)
    return parser


def resolve(args, environ=None) -> dict:
    """Merge flags, environment, config file and defaults for the chosen command."""
    environ = os.environ if environ is None else environ
    config = read_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key in COMMAND_KEYS[args.command]:
        convert, default = OPTIONS[key]
        value = getattr(args, key, None)
        if value is None:
            env_key = ENV_PREFIX + key.upper()
            if env_key in environ:
                value = environ[env_key]
            elif key in config:
                value = config[key]
            else:
                value = default
        try:
            merged[key] = convert(value) if value is not None else None
        except (ValueError, DomainError) as exc:
            raise UsageError(f"invalid value for {key}: {value!r}") from exc
    return merged


def _params(opts) -> SystemParams:
    if opts["mu"] is None:
        raise UsageError("--mu is required")
    try:
        return SystemParams(float(opts["mu"]), float(opts["q1"]), float(opts["a2"]),
                            float(opts["w1"]), Branch(opts["branch"]))
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc


@contextlib.contextmanager
def _open_output(path, out):
    if path in (None, "-"):
        yield out
        return
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc
    with fh:
        yield fh


class _IOFailure(Exception):
    pass


def _complex_list(values):
    return [[float(np.real(v)), float(np.imag(v))] for v in values]


def _report_dict(report, analytic) -> dict:
    pt, k = report.point, report.coeffs
    return {
        "params": {"mu": report.params.mu, "q1": report.params.q1, "A2": report.params.A2,
                   "W1": report.params.W1, "branch": report.params.branch.value},
        "analytic_point": None if analytic is None else {
            "x": analytic.x_star, "y": analytic.y_star,
            "r1": analytic.r1_star, "r2": analytic.r2_star, "residual": analytic.residual_norm},
        "point": {"x": pt.x_star, "y": pt.y_star, "r1": pt.r1_star, "r2": pt.r2_star,
                  "method": pt.method.value, "residual": pt.residual_norm},
        "coefficients": {"a": k.a, "b": k.b, "b0": k.b0, "b1": k.b1, "c": k.c, "d": k.d,
                         "f_star": k.f_star},
        "roots": _complex_list(report.roots),
        "max_re_lambda": report.max_real_part,
        "classical_z2": [float(np.real(z)) if np.isreal(z) else str(z) for z in report.classical_z2],
        "e1": list(report.e1),
        "e2": list(report.e2),
        "re_lambda_eq20": report.re_lambda,
        "vertical_roots": _complex_list(report.vertical_roots),
        "verdict": report.verdict.value,
        "criterion": report.criterion.value,
    }


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


def cmd_analyze(opts, out):
    from .oracle import compare

    params = _params(opts)
    try:
        analytic = analytic_point(params)
    except PR3BPError:
        analytic = None
    report = classify(params, refine=not opts["analytic"])
    data = _report_dict(report, analytic)
    if opts["verify"]:
        data["verify"] = compare(params)
    if opts["json"]:
        out.write(json.dumps(_json_safe(data), indent=2) + "\n")
        return EXIT_OK

    p, pt, k = report.params, report.point, report.coeffs
    print(f"parameters    mu={p.mu:g} q1={p.q1:g} A2={p.A2:g} W1={p.W1:g} branch={p.branch.value}", file=out)
    if analytic is not None:
        print(f"analytic      x*={analytic.x_star:.12f} y*={analytic.y_star:.12f}", file=out)
    print(f"{pt.method.value:<13} x*={pt.x_star:.12f} y*={pt.y_star:.12f} "
          f"(residual {pt.residual_norm:.2e})", file=out)
    print(f"coefficients  a={k.a:.6e} b={k.b:.6e} c={k.c:.6e} d={k.d:.6e}", file=out)
    for r in report.roots:
        print(f"root          {r.real:+.6e} {r.imag:+.6e}i", file=out)
    print(f"max Re        {report.max_real_part:.6e} (closed form {report.re_lambda:.6e})", file=out)
    print(f"vertical Re   {report.vertical_max_real_part:.6e}", file=out)
    print(f"verdict       {report.verdict.value} ({report.criterion.value})", file=out)
    if opts["verify"]:
        for key, value in data["verify"].items():
            print(f"oracle {key:<12} {value:.3e}", file=out)
    return EXIT_OK


def cmd_sweep(opts, out):
    if opts["mu"] is None:
        raise UsageError("--mu is required")
    try:
        spec = SweepSpec(mu=Range.parse(opts["mu"]), q1=Range.parse(opts["q1"]),
                         A2=Range.parse(opts["a2"]), W1=Range.parse(opts["w1"]),
                         branch=Branch(opts["branch"]), refine=not opts["analytic"])
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc
    rows = run_sweep(spec, workers=opts["workers"])
    with _open_output(opts["output"], out) as fh:
        if opts["format"] == "jsonl":
            write_jsonl(rows, fh)
        else:
            write_csv(rows, fh)
    return EXIT_OK


def cmd_trajectory(opts, out):
    params = _params(opts)
    point = None
    if opts["from_equilibrium"]:
        point = locate(params)
        initial = radial_offset(point, params, opts["offset"])
    elif opts["state"]:
        try:
            initial = [float(v) for v in opts["state"].split(",")]
        except ValueError as exc:
            raise UsageError(f"cannot parse --state {opts['state']!r}") from exc
        if len(initial) != 6:
            raise UsageError("--state needs six comma-separated numbers")
        with contextlib.suppress(PR3BPError):
            point = locate(params)
    else:
        raise UsageError("give --from-equilibrium or --state")
    if opts["t_end"] <= 0 or opts["tol"] <= 0 or opts["samples"] < 2:
        raise UsageError("--t-end and --tol must be positive and --samples at least 2")
    t_eval = np.linspace(0.0, opts["t_end"], opts["samples"])
    traj = integrate(initial, params, opts["t_end"], opts["tol"], t_eval=t_eval)
    with _open_output(opts["output"], out) as fh:
        write_trajectory_csv(traj, fh, point)
    return EXIT_OK


#: Tuples checked by ``verify`` when no parameters are given.
VERIFY_TUPLES = (
    (0.01, 1.0, 0.0, 0.0),
    (0.01, 0.999, 1e-3, 0.0),
    (0.01, 0.9999, 0.0, 1e-4),
    (0.001, 0.9999, 1e-4, 1e-6),
    (0.02, 0.999, 1e-3, 1e-4),
)


def cmd_verify(opts, out):
    from .oracle import compare

    if opts["mu"] is not None:
        tuples = [_params(opts)]
    else:
        tuples = [SystemParams(*t, branch=Branch(opts["branch"])) for t in VERIFY_TUPLES]
    worst = {}
    for params in tuples:
        result = compare(params)
        print(f"mu={params.mu:g} q1={params.q1:g} A2={params.A2:g} W1={params.W1:g}  "
              + "  ".join(f"{k}={v:.2e}" for k, v in result.items()), file=out)
        for k, v in result.items():
            worst[k] = max(worst.get(k, 0.0), v)
    print("max deviations  " + "  ".join(f"{k}={v:.2e}" for k, v in worst.items()), file=out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep,
            "trajectory": cmd_trajectory, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        opts = resolve(args)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return COMMANDS[args.command](opts, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except _IOFailure as exc:
        print(f"pr3bp: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"pr3bp: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PR3BPError as exc:
        print(f"pr3bp: solver error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
