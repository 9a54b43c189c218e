"""
Parameter sweeps over ``(mu, q1, A2, W1)`` and their tabular output.

Grids are traversed row-major with ``mu`` outermost. Failures at a grid
point are recorded in its row as ``verdict = "error:<kind>"``.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import re
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .errors import PR3BPError, DomainError
from .params import Branch, SystemParams
from .stability import classify

RESULT_FIELDS = (
    "mu", "q1", "A2", "W1", "x_star", "y_star", "r1_star", "r2_star",
    "a", "b", "c", "d", "max_re_lambda", "re_lambda_eq20", "vertical_re",
    "verdict", "criterion",
)

TRAJECTORY_FIELDS = ("t", "x", "y", "z", "vx", "vy", "vz", "C_jacobi", "displacement")


@dataclass(frozen=True)
class ResultRow:
    mu: float
    q1: float
    A2: float
    W1: float
    x_star: float
    y_star: float
    r1_star: float
    r2_star: float
    a: float
    b: float
    c: float
    d: float
    max_re_lambda: float
    re_lambda_eq20: float
    vertical_re: float
    verdict: str
    criterion: str

    @classmethod
    def from_report(cls, report) -> "ResultRow":
        p, pt, k = report.params, report.point, report.coeffs
        return cls(p.mu, p.q1, p.A2, p.W1, pt.x_star, pt.y_star, pt.r1_star, pt.r2_star,
                   k.a, k.b, k.c, k.d, report.max_real_part, report.re_lambda,
                   report.vertical_max_real_part, report.verdict.value, report.criterion.value)

    @classmethod
    def error(cls, mu, q1, A2, W1, kind) -> "ResultRow":
        nan = math.nan
        return cls(mu, q1, A2, W1, *([nan] * 11), f"error:{kind}", "")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class Range:
    """``count`` values from ``lo`` to ``hi``, linearly or logarithmically spaced."""

    lo: float
    hi: float
    count: int = 1
    spacing: str = "linear"

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("range count must be at least 1")
        if self.spacing not in ("linear", "log"):
            raise DomainError(f"unknown spacing {self.spacing!r}")
        if self.spacing == "log" and (self.lo <= 0 or self.hi <= 0):
            raise DomainError("log spacing needs positive endpoints")

    @classmethod
    def fixed(cls, value) -> "Range":
        return cls(float(value), float(value), 1)

    @classmethod
    def parse(cls, text) -> "Range":
        """Parse ``value`` or ``lo:hi:count[:log|:linear]``."""
        parts = str(text).strip().split(":")
        try:
            if len(parts) == 1:
                return cls.fixed(float(parts[0]))
            if len(parts) in (3, 4):
                spacing = parts[3] if len(parts) == 4 else "linear"
                return cls(float(parts[0]), float(parts[1]), int(parts[2]), spacing)
        except ValueError as exc:
            raise DomainError(f"cannot parse range {text!r}") from exc
        raise DomainError(f"range must be 'value' or 'lo:hi:count[:log]', got {text!r}")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepSpec:
    mu: Range
    q1: Range = Range.fixed(1.0)
    A2: Range = Range.fixed(0.0)
    W1: Range = Range.fixed(0.0)
    branch: Branch = Branch.L4
    refine: bool = True

    def __post_init__(self):
        # Every endpoint must itself be admissible.
        for mu in (self.mu.lo, self.mu.hi):
            for q1 in (self.q1.lo, self.q1.hi):
                for A2 in (self.A2.lo, self.A2.hi):
                    for W1 in (self.W1.lo, self.W1.hi):
                        with warnings.catch_warnings():
                            warnings.simplefilter("ignore")
                            SystemParams(mu, q1, A2, W1, self.branch)

    def grid(self):
        return itertools.product(self.mu.values(), self.q1.values(),
                                 self.A2.values(), self.W1.values())

    def __len__(self):
        return self.mu.count * self.q1.count * self.A2.count * self.W1.count


def _kind(exc) -> str:
    name = type(exc).__name__.removesuffix("Error")
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower() or "unknown"


def evaluate_point(mu, q1, A2, W1, branch=Branch.L4, refine=True) -> ResultRow:
    """Classify one grid point; solver failures become an error row."""
    mu, q1, A2, W1 = float(mu), float(q1), float(A2), float(W1)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            params = SystemParams(mu, q1, A2, W1, branch)
            report = classify(params, refine=refine)
    except PR3BPError as exc:
        return ResultRow.error(mu, q1, A2, W1, _kind(exc))
    return ResultRow.from_report(report)


def _evaluate(args):
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, workers=1) -> list:
    """One :class:`ResultRow` per grid point, in grid order."""
    jobs = [(*values, spec.branch, spec.refine) for values in spec.grid()]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_evaluate(job) for job in jobs]


def format_value(value) -> str:
    """17 significant digits, lowercase scientific; strings pass through."""
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.16e}"


def write_csv(rows, fh, header=RESULT_FIELDS):
    writer = csv.writer(fh)
    writer.writerow(header)
    for row in rows:
        values = astuple(row) if isinstance(row, ResultRow) else row
        writer.writerow([format_value(v) for v in values])


def write_jsonl(rows, fh):
    for row in rows:
        record = {k: (None if isinstance(v, float) and math.isnan(v) else v)
                  for k, v in row.as_dict().items()}
        fh.write(json.dumps(record) + "\n")


def write_trajectory_csv(trajectory, fh, point=None):
    """Write ``TRAJECTORY_FIELDS`` rows, then a comment footer if the run collided."""
    write_csv(trajectory.rows(point), fh, header=TRAJECTORY_FIELDS)
    if trajectory.collided:
        fh.write(f"# collision at t={format_value(trajectory.t[-1])}\n")
