"""Command-line driver: ``lpsearch [options]``.

Options may also come from a ``key = value`` config file (``--config``);
command-line flags override it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench, lowdisc
from .errors import ConfigError


def _int_list(text):
    return [int(t) for t in str(text).replace(",", " ").split()]


def _str_list(text):
    return [t for t in str(text).replace(",", " ").split()]


def _bool(text):
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


_FILE_KEYS = {
    "function": ("functions", _int_list),
    "method": ("methods", _str_list),
    "points": ("points", _int_list),
    "refine": ("refine", _bool),
    "epsilon": ("epsilon", float),
    "seed": ("seed", int),
    "format": ("format", str),
    "out": ("out", str),
    "direction-table": ("direction_table", str),
}


def read_config_file(path):
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key not in _FILE_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            attr, conv = _FILE_KEYS[key]
            try:
                values[attr] = conv(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return values


def build_parser():
    p = argparse.ArgumentParser(
        prog="lpsearch",
        description="Halton / Sobol LP-tau global search benchmarks with optional DFP refinement.",
    )
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--preset", choices=["paper-tables"], help="run a predefined sweep")
    p.add_argument("--function", "-f", action="append", help="test function id(s) 1-7, comma separated")
    p.add_argument("--method", "-m", action="append",
                   help="halton, sobol, hybrid[:seed], random[:seed] or grid:M (comma separated)")
    p.add_argument("--points", "-N", action="append", help="trial counts, comma separated")
    p.add_argument("--refine", action="store_true", default=None, help="refine incumbents with DFP")
    p.add_argument("--epsilon", type=float, help="gradient-norm tolerance for refinement")
    p.add_argument("--seed", type=int, help="seed for random / hybrid methods")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out", "-o", help="output path (default: stdout)")
    p.add_argument("--direction-table", help="Sobol direction numbers file ('j s numerator' lines)")
    p.add_argument("--plot", nargs="?", const="", default=None, metavar="PNG",
                   help="also render a convergence figure (default: next to --out)")
    p.add_argument("--compare-random", type=int, metavar="SEEDS",
                   help="report Sobol vs random trials-to-vicinity on function 5 over SEEDS seeds")
    p.add_argument("--no-timing", action="store_true", help="write wall_ms as 0 for reproducible output")
    p.add_argument("--dump-directions", metavar="PATH",
                   help="write the embedded direction table and exit")
    return p


def config_from_args(args):
    config = bench.paper_tables_config() if args.preset == "paper-tables" else bench.RunConfig()
    values = read_config_file(args.config) if args.config else {}
    if args.function:
        values["functions"] = [i for t in args.function for i in _int_list(t)]
    if args.method:
        values["methods"] = [m for t in args.method for m in _str_list(t)]
    if args.points:
        values["points"] = [i for t in args.points for i in _int_list(t)]
        config.points_by_function = {}
    for attr in ("refine", "epsilon", "seed", "format", "out", "direction_table"):
        v = getattr(args, attr)
        if v is not None:
            values[attr] = v
    for attr, v in values.items():
        setattr(config, attr, v)
    if args.compare_random is not None:
        config.compare_seeds = args.compare_random
    if args.no_timing:
        config.timing = False
    return config


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.dump_directions:
        try:
            lowdisc.dump_direction_table(lowdisc.default_direction_table(), args.dump_directions)
        except OSError as exc:
            print(f"lpsearch: error: {exc}", file=sys.stderr)
            return 1
        return 0
    try:
        config = config_from_args(args)
        report = bench.run_benchmark(config)
        text = bench.emit_report(report, config.format, config.out)
    except (ConfigError, ValueError) as exc:
        print(f"lpsearch: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lpsearch: error: {exc}", file=sys.stderr)
        return 1
    if config.out is None:
        sys.stdout.write(text)
    for c in report.comparisons:
        print(
            f"quasi-vs-random (function {c['function']}, vicinity half-width {c['half_width']}): "
            f"{c['quasi_method']} needs N={c['quasi_n']}, random median N={c['random_median_n']:g} "
            f"over {c['seeds']} seeds, ratio {c['ratio'] if c['ratio'] is not None else float('nan'):.2f}",
            file=sys.stderr,
        )
    if report.comparisons and config.out:
        sidecar = os.path.splitext(config.out)[0] + ".compare.json"
        with open(sidecar, "w") as fh:
            json.dump(report.comparisons, fh, indent=1)
            fh.write("\n")
    if args.plot is not None:
        from .plotting import plot_report

        target = args.plot or (os.path.splitext(config.out)[0] + ".png" if config.out else "lpsearch.png")
        plot_report(report, target)
        print(f"figure written to {target}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
