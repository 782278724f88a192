"""Benchmark sweeps over test functions, generators and trial counts."""
from __future__ import annotations

import csv
import io
import json
import os
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import lowdisc, testbed
from .domain import Box
from .errors import ConfigError
from .refine import RefineConfig, search_and_refine
from .search import KINDS, GeneratorKind, first_hit, global_search

__all__ = [
    "RunConfig",
    "Record",
    "Report",
    "run_benchmark",
    "emit_report",
    "parse_report",
    "compare_with_random",
    "paper_tables_config",
    "CSV_HEADER",
]

DEFAULT_POINTS = (2000, 8192, 32767, 65535)
CSV_HEADER = ("function", "method", "N", "refined", "best_value", "best_point", "evals", "iters", "wall_ms")
DECIMALS = 7


@dataclass
class RunConfig:
    functions: list = field(default_factory=lambda: [1])
    methods: list = field(default_factory=lambda: ["sobol"])
    points: list = field(default_factory=lambda: list(DEFAULT_POINTS))
    refine: bool = False
    epsilon: float = 1e-6
    seed: Optional[int] = None
    format: str = "csv"
    out: Optional[str] = None
    direction_table: Optional[str] = None
    boxes: dict = field(default_factory=dict)  # function id -> Box override
    points_by_function: dict = field(default_factory=dict)  # function id -> N list override
    raw_only: set = field(default_factory=set)  # function ids never refined
    compare_seeds: int = 0
    timing: bool = True

    def validate(self) -> None:
        if not self.functions:
            raise ConfigError("no test functions selected")
        for fid in self.functions:
            if not isinstance(fid, (int, np.integer)) or not 1 <= fid <= len(testbed.suite()):
                raise ConfigError(f"unknown function id {fid!r}; valid ids are 1..{len(testbed.suite())}")
        if not self.methods:
            raise ConfigError("no methods selected")
        for m in self.methods:
            name = m.split(":", 1)[0]
            if name == "lp":
                name = "sobol"
            if name not in KINDS:
                raise ConfigError(f"unknown method {m!r}; choose from {', '.join(KINDS)}")
            if name == "random" and self.seed is None and ":" not in m:
                raise ConfigError("method 'random' requires --seed")
            if name == "grid" and ":" not in m:
                raise ConfigError("method 'grid' needs points per axis, e.g. grid:10")
        all_points = list(self.points) + [n for ns in self.points_by_function.values() for n in ns]
        if not all_points or any(int(n) < 1 for n in all_points):
            raise ConfigError("trial counts must be positive integers")
        if self.refine and not self.epsilon > 0:
            raise ConfigError("epsilon must be positive when refinement is on")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.format!r}; use csv or json")

    def generator(self, method: str, table) -> GeneratorKind:
        name, _, arg = method.partition(":")
        if name in ("random", "hybrid") and not arg and self.seed is not None:
            method = f"{name}:{self.seed}"
        try:
            return GeneratorKind.parse(method, table=table)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


@dataclass
class Record:
    function: int
    method: str
    N: int
    refined: bool
    best_value: float
    best_point: list
    evals: int
    iters: int
    wall_ms: float

    def sort_key(self):
        return (self.function, self.method, self.N, self.refined)


@dataclass
class Report:
    records: list = field(default_factory=list)
    comparisons: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)


class _Counted:
    # Counts objective calls while forwarding the metadata the search reads.
    def __init__(self, objective):
        self.objective = objective
        self.calls = 0
        self.dimension = getattr(objective, "dimension", None)
        self.is_feasible = getattr(objective, "is_feasible", None)

    def __call__(self, x):
        self.calls += 1
        return self.objective(x)


def run_benchmark(config: RunConfig) -> Report:
    """One record per (function, method, N), plus a refined record when refining."""
    config.validate()
    table = lowdisc.load_direction_table(config.direction_table) if config.direction_table else None
    generators = {m: config.generator(m, table) for m in config.methods}
    refine_cfg = RefineConfig(epsilon=config.epsilon) if config.refine else None
    records = []
    for fid in config.functions:
        f = testbed.get(fid)
        box = config.boxes.get(fid, f.default_box)
        points = config.points_by_function.get(fid, config.points)
        refine = config.refine and fid not in config.raw_only
        for method, gen in generators.items():
            label = str(gen) if gen.kind in ("random", "grid") else gen.kind
            for N in points:
                counted = _Counted(f)
                t0 = time.perf_counter()
                if refine:
                    res = search_and_refine(counted, box, int(N), gen, refine_cfg)
                else:
                    res = global_search(counted, box, int(N), gen)
                wall = (time.perf_counter() - t0) * 1e3 if config.timing else 0.0
                records.append(Record(fid, label, int(N), False, res.raw_value,
                                      list(map(float, res.raw_point)), res.evaluations, 0, wall))
                if refine:
                    iters = res.refinement.iterations if res.refinement is not None else 0
                    records.append(Record(fid, label, int(N), True, res.best_value,
                                          list(map(float, res.best_point)), counted.calls, iters, wall))
    records.sort(key=Record.sort_key)
    report = Report(records)
    if config.compare_seeds:
        report.comparisons.append(compare_with_random(5, config.compare_seeds, table=table))
    return report


def compare_with_random(fid: int = 5, seeds: int = 100, quasi: str = "sobol",
                        half_width: float = 0.05, table=None) -> dict:
    """Trials needed to first enter the ``half_width`` vicinity of the optimum.

    The quasi-random count is deterministic; the random count is the median
    over seeds ``0 .. seeds - 1``.
    """
    f = testbed.get(fid)
    box = f.default_box
    target = f.known_minimum_point
    quasi_n = first_hit(GeneratorKind.parse(quasi, table=table), box, target, half_width)
    random_ns = []
    for s in range(seeds):
        n = first_hit(GeneratorKind("random", seed=s), box, target, half_width)
        random_ns.append(n if n is not None else np.inf)
    median = float(np.median(random_ns))
    return {
        "function": fid,
        "quasi_method": quasi,
        "half_width": half_width,
        "quasi_n": quasi_n,
        "random_median_n": median,
        "seeds": seeds,
        "ratio": median / quasi_n if quasi_n else None,
    }


def paper_tables_config() -> RunConfig:
    """Preset that regenerates the result tables for functions 1-7.

    Function 2's tables were produced with x1 in [0, 1]; the preset uses that
    box so the raw columns are comparable. Function 7 is searched raw at
    N = 65535 only.
    """
    return RunConfig(
        functions=[1, 2, 3, 4, 5, 6, 7],
        methods=["sobol", "halton"],
        points=list(DEFAULT_POINTS),
        refine=True,
        epsilon=1e-6,
        boxes={2: Box([0, 0, 0], [1, 2, 2])},
        points_by_function={6: [2000, 65535], 7: [65535]},
        raw_only={7},
        compare_seeds=100,
    )


def _fmt(v: float) -> str:
    s = f"{v:.{DECIMALS}f}"
    return "0.0000000" if s == "-0.0000000" else s


def _rounded(record: Record) -> dict:
    d = asdict(record)
    d["best_value"] = round(record.best_value, DECIMALS) + 0.0
    d["best_point"] = [round(v, DECIMALS) + 0.0 for v in record.best_point]
    d["wall_ms"] = round(record.wall_ms, 3)
    return d


def emit_report(report: Report, fmt: str = "csv", path: str | os.PathLike | None = None) -> str:
    """Serialise ``report`` as CSV or a JSON array; write it to ``path`` if given."""
    if not report.records:
        raise ValueError("report has no records")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in report.records:
            w.writerow([
                r.function, r.method, r.N, int(r.refined), _fmt(r.best_value),
                " ".join(_fmt(v) for v in r.best_point), r.evals, r.iters, f"{r.wall_ms:.3f}",
            ])
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps([_rounded(r) for r in report.records], indent=1) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def parse_report(text: str, fmt: str = "csv") -> Report:
    if fmt == "json":
        return Report([Record(**d) for d in json.loads(text)])
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("not a benchmark CSV report")
    records = []
    for row in rows[1:]:
        fid, method, N, refined, value, point, evals, iters, wall = row
        records.append(Record(int(fid), method, int(N), bool(int(refined)), float(value),
                              [float(v) for v in point.split()], int(evals), int(iters), float(wall)))
    return Report(records)
