"""Convergence figures for benchmark reports."""
from __future__ import annotations

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import testbed  # noqa: E402


def plot_report(report, path, dpi=120):
    """Best value against N, one panel per function, one line per method.

    Refined runs are drawn dashed. The known minimum is a grey reference line.
    """
    by_function = defaultdict(lambda: defaultdict(list))
    for r in report.records:
        by_function[r.function][(r.method, r.refined)].append((r.N, r.best_value))

    fids = sorted(by_function)
    ncols = min(3, len(fids))
    nrows = math.ceil(len(fids) / ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.2 * ncols, 3.2 * nrows), squeeze=False)
    methods = sorted({r.method for r in report.records})
    colour = {m: f"C{k % 10}" for k, m in enumerate(methods)}
    for ax, fid in zip(axes.flat, fids):
        f = testbed.get(fid)
        for (method, refined), pts in sorted(by_function[fid].items()):
            pts.sort()
            ns, vals = zip(*pts)
            ax.plot(ns, vals, marker="o", ms=3, ls="--" if refined else "-", color=colour[method],
                    label=f"{method}{' + DFP' if refined else ''}")
        ax.axhline(f.known_minimum_value, color="0.6", lw=0.8)
        ax.set_xscale("log", base=2)
        ax.set_title(f"{fid}: {f.name}", fontsize=10)
        ax.set_xlabel("N")
        ax.set_ylabel("best f")
        ax.legend(fontsize=7)
    for ax in list(axes.flat)[len(fids):]:
        ax.set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
