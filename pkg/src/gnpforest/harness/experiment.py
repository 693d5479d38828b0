"""Monte Carlo concentration runs for the maximum induced forest of G(n, p)."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ..errors import ParameterError
from ..graph import GnpParams, sample_gnp
from ..moments import Window, window
from ..rational import fraction_to_str, parse_rational, probability
from ..solver import max_induced_forest

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
RECORD_FIELDS = ("index", "seed", "F", "status", "in_window", "meets_lower", "nodes")
PLOT_FIELDS = ("F_value", "count", "is_in_window", "k_minus", "k_plus")


def derive_seed(master_seed: int, index: int) -> int:
    """SplitMix64 output for stream position ``index + 1`` of ``master_seed``.

    The finaliser is a bijection on 64-bit words, so distinct indices under
    one master seed always get distinct seeds.
    """
    z = (master_seed + (index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p: Fraction
    eps: Fraction
    samples: int
    master_seed: int
    solver_budget: Optional[int] = None
    parallelism: int = 1
    output_path: Optional[Path] = None
    output_format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "p", probability(self.p))
        object.__setattr__(self, "eps", parse_rational(self.eps))
        if self.n < 1:
            raise ParameterError("n must be positive")
        if self.samples < 1:
            raise ParameterError("samples must be at least 1")
        if self.eps <= 0:
            raise ParameterError("eps must be positive")
        if not 0 <= self.master_seed <= MASK64:
            raise ParameterError("master seed must fit in 64 bits")
        if self.solver_budget is not None and self.solver_budget < 1:
            raise ParameterError("solver budget must be positive")
        if self.parallelism < 1:
            raise ParameterError("parallelism must be at least 1")
        if self.output_format not in ("csv", "json"):
            raise ParameterError("output format must be csv or json")
        if self.output_path is not None:
            object.__setattr__(self, "output_path", Path(self.output_path))


@dataclass(frozen=True)
class SampleRecord:
    index: int
    seed: int
    F: int
    status: str
    in_window: Optional[bool]  # None when the solve did not finish
    meets_lower: bool
    nodes: int


@dataclass
class ConcentrationReport:
    config: ExperimentConfig
    window: Window
    records: list[SampleRecord] = field(default_factory=list)

    @property
    def completed(self) -> int:
        return sum(r.status == "optimal" for r in self.records)

    @property
    def incomplete(self) -> int:
        return len(self.records) - self.completed

    @property
    def hits(self) -> int:
        return sum(r.status == "optimal" and bool(r.in_window) for r in self.records)

    @property
    def hit_rate(self) -> Optional[Fraction]:
        done = self.completed
        return Fraction(self.hits, done) if done else None

    @property
    def lower_rate(self) -> Optional[Fraction]:
        """Share of all samples whose certified size reaches ``k_minus``."""
        if not self.records:
            return None
        return Fraction(sum(r.meets_lower for r in self.records), len(self.records))

    @property
    def histogram(self) -> dict[int, int]:
        counts = Counter(r.F for r in self.records if r.status == "optimal")
        return dict(sorted(counts.items()))

    @property
    def status(self) -> str:
        return "warning" if self.records and self.completed == 0 else "ok"

    def summary(self) -> str:
        w = self.window
        rate = self.hit_rate
        shown = "n/a" if rate is None else f"{float(rate):.3f} ({self.hits}/{self.completed})"
        return (f"n={w.n} p={fraction_to_str(w.p)} eps={fraction_to_str(w.eps)} "
                f"window=[{w.k_minus}, {w.k_plus}] hit_rate={shown} "
                f"incomplete={self.incomplete} status={self.status}")


def _solve_sample(n: int, p: Fraction, lower: int, upper: int, budget: Optional[int],
                  index: int, seed: int) -> SampleRecord:
    g = sample_gnp(GnpParams(n, p, seed))
    result = max_induced_forest(g, budget=budget)
    f = result.size
    inside = lower <= f <= upper if result.optimal else None
    return SampleRecord(index, seed, f, result.status, inside, f >= lower, result.nodes_explored)


def _solve_job(args) -> SampleRecord:
    return _solve_sample(*args)


def run_concentration(config: ExperimentConfig) -> ConcentrationReport:
    """Sample, solve and tabulate; the result depends only on ``config``.

    Records are ordered by sample index whatever the worker count, and no
    timing data is stored, so reports are byte-identical across runs.
    """
    w = window(config.n, config.p, config.eps)
    jobs = [(config.n, config.p, w.k_minus, w.k_plus, config.solver_budget, i,
             derive_seed(config.master_seed, i)) for i in range(config.samples)]
    if config.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.parallelism) as pool:
            records = list(pool.map(_solve_job, jobs))
    else:
        records = [_solve_job(job) for job in jobs]
    records.sort(key=lambda r: r.index)
    report = ConcentrationReport(config, w, records)
    if report.status == "warning":
        log.warning("every sample hit the solver budget; no hit rate available")
    if config.output_path is not None:
        write_report(report, config.output_path, config.output_format)
    return report


def _flag(value: Optional[bool]) -> str:
    return "" if value is None else str(value).lower()


def report_to_csv(report: ConcentrationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_FIELDS)
    for r in report.records:
        writer.writerow([r.index, r.seed, r.F, r.status, _flag(r.in_window),
                         _flag(r.meets_lower), r.nodes])
    return buf.getvalue()


def report_to_dict(report: ConcentrationReport) -> dict:
    cfg, w = report.config, report.window
    rate = report.hit_rate
    return {
        "schema": SCHEMA_VERSION,
        "config": {
            "n": cfg.n,
            "p": fraction_to_str(cfg.p),
            "eps": fraction_to_str(cfg.eps),
            "samples": cfg.samples,
            "master_seed": cfg.master_seed,
            "solver_budget": cfg.solver_budget,
        },
        "window": {
            "k_minus": w.k_minus,
            "k_plus": w.k_plus,
            "arg_minus": w.arg_minus,
            "arg_plus": w.arg_plus,
            "widened": w.widened,
            "np": w.np,
        },
        "records": [
            {"index": r.index, "seed": r.seed, "F": r.F, "status": r.status,
             "in_window": r.in_window, "meets_lower": r.meets_lower, "nodes": r.nodes}
            for r in report.records
        ],
        "aggregate": {
            "status": report.status,
            "completed": report.completed,
            "incomplete": report.incomplete,
            "hits": report.hits,
            "hit_rate": None if rate is None else fraction_to_str(rate),
            "hit_rate_float": None if rate is None else float(rate),
            "histogram": {str(k): v for k, v in report.histogram.items()},
        },
    }


def report_to_json(report: ConcentrationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def write_report(report: ConcentrationReport, path, fmt: str = "csv") -> Path:
    if fmt not in ("csv", "json"):
        raise ParameterError("format must be csv or json")
    text = report_to_csv(report) if fmt == "csv" else report_to_json(report)
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def emit_plot_data(report: ConcentrationReport, path) -> Path:
    """Histogram of optimal F values with the window endpoints on every row."""
    w = report.window
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PLOT_FIELDS)
        for f, count in report.histogram.items():
            writer.writerow([f, count, _flag(w.contains(f)), w.k_minus, w.k_plus])
    return path
