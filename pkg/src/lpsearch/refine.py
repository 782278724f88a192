"""Local refinement of a search incumbent by Davidon-Fletcher-Powell iterations.

Gradients come from central finite differences. Iterates are kept inside the
search box (optionally shrunk by a relative margin) by clamping each
line-search probe.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .domain import Box
from .errors import DomainError
from .search import GeneratorKind, SearchResult, global_search

__all__ = ["RefineConfig", "RefineTrace", "RefineResult", "fd_gradient", "dfp_refine", "dfp_update", "search_and_refine"]

CONVERGED = "converged"
MAX_ITERATIONS = "max_iterations"
LINE_SEARCH_FAILURE = "line_search_failure"
DOMAIN_FAILURE = "domain_failure"

ARMIJO_C = 1e-4
BACKTRACK = 0.5
MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class RefineConfig:
    epsilon: float = 1e-6
    max_iterations: int = 5000
    fd_step: float = 1e-6
    box_margin: float = 0.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not 0 < self.fd_step < 1:
            raise ValueError("fd_step must lie in (0, 1)")
        if not 0 <= self.box_margin < 0.5:
            raise ValueError("box_margin must lie in [0, 0.5)")


@dataclass
class RefineTrace:
    iterates: list = field(default_factory=list)  # (point, value, gradient norm)
    termination: str = MAX_ITERATIONS
    resets: int = 0
    message: str = ""

    @property
    def iterations(self) -> int:
        return max(len(self.iterates) - 1, 0)


@dataclass
class RefineResult:
    point: np.ndarray
    value: float
    trace: RefineTrace


def _try(objective, x):
    try:
        v = float(objective(x))
    except DomainError:
        return None
    return v if np.isfinite(v) else None


def fd_gradient(objective: Callable, x, fd_step: float = 1e-6, fx: float | None = None) -> np.ndarray:
    """Central-difference gradient with steps ``fd_step * max(|x_j|, 1)``.

    Falls back to a one-sided difference in a coordinate where one probe is
    outside the objective's domain; raises ``DomainError`` if both are.
    """
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for j in range(x.size):
        h = fd_step * max(abs(x[j]), 1.0)
        xp = x.copy()
        xm = x.copy()
        xp[j] += h
        xm[j] -= h
        hp = xp[j] - x[j]
        hm = x[j] - xm[j]
        fp = _try(objective, xp)
        fm = _try(objective, xm)
        if fp is not None and fm is not None:
            g[j] = (fp - fm) / (hp + hm)
            continue
        if fp is None and fm is None:
            raise DomainError(f"gradient probes on both sides of coordinate {j + 1} are infeasible")
        if fx is None:
            fx = _try(objective, x)
            if fx is None:
                raise DomainError("objective undefined at the gradient base point")
        g[j] = (fp - fx) / hp if fp is not None else (fx - fm) / hm
    return g


def _line_search(objective, x, fx, g, d, lo, hi):
    # Backtracking with sufficient decrease, each probe clamped to [lo, hi].
    alpha = 1.0
    any_defined = False
    for _ in range(MAX_BACKTRACKS):
        trial = np.clip(x + alpha * d, lo, hi)
        step = trial - x
        if not np.any(step):
            break
        ft = _try(objective, trial)
        if ft is not None:
            any_defined = True
            slope = float(g @ step)
            if slope < 0 and ft <= fx + ARMIJO_C * slope:
                return trial, ft, True
        alpha *= BACKTRACK
    return None, None, any_defined


def dfp_update(H: np.ndarray, s: np.ndarray, y: np.ndarray) -> np.ndarray | None:
    """DFP rank-two update of the inverse Hessian, or ``None`` when ``s.y <= 0``."""
    sy = float(s @ y)
    if not sy > 0:
        return None
    Hy = H @ y
    H = H + np.outer(s, s) / sy - np.outer(Hy, Hy) / float(y @ Hy)
    return 0.5 * (H + H.T)


def dfp_refine(objective: Callable, x0, box: Box, config: RefineConfig | None = None) -> RefineResult:
    """Minimise locally from ``x0`` until the gradient norm drops below ``config.epsilon``.

    The inverse-Hessian approximation starts at the identity and receives the
    DFP rank-two update after every accepted step. The update is skipped and
    the approximation reset to the identity whenever the curvature ``s.y`` is
    not positive. If a quasi-Newton direction fails the line search, one
    steepest-descent retry is made before giving up.
    """
    config = config or RefineConfig()
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (box.dimension,):
        raise ValueError(f"start point has shape {x.shape}, box dimension is {box.dimension}")
    if not box.contains(x):
        raise ValueError(f"start point {x.tolist()} lies outside the box")
    inner = box.shrink(config.box_margin)
    lo, hi = inner.lower, inner.upper
    x = np.clip(x, lo, hi)
    fx = _try(objective, x)
    if fx is None:
        raise ValueError(f"objective undefined at start point {x.tolist()}")

    trace = RefineTrace()
    try:
        g = fd_gradient(objective, x, config.fd_step, fx)
    except DomainError:
        trace.iterates.append((x.copy(), fx, np.nan))
        trace.termination = DOMAIN_FAILURE
        return RefineResult(x, fx, trace)
    gnorm = float(np.linalg.norm(g))
    trace.iterates.append((x.copy(), fx, gnorm))
    n = x.size
    H = np.eye(n)
    is_identity = True

    for _ in range(config.max_iterations):
        if gnorm < config.epsilon:
            trace.termination = CONVERGED
            break
        d = -H @ g
        if not is_identity and g @ d >= 0:
            H, is_identity = np.eye(n), True
            trace.resets += 1
            d = -g
        x_new, f_new, defined = _line_search(objective, x, fx, g, d, lo, hi)
        if x_new is None and not is_identity:
            H, is_identity = np.eye(n), True
            trace.resets += 1
            x_new, f_new, defined = _line_search(objective, x, fx, g, -g, lo, hi)
        if x_new is None:
            trace.termination = LINE_SEARCH_FAILURE if defined else DOMAIN_FAILURE
            break
        try:
            g_new = fd_gradient(objective, x_new, config.fd_step, f_new)
        except DomainError:
            trace.termination = DOMAIN_FAILURE
            break
        s = x_new - x
        y = g_new - g
        updated = dfp_update(H, s, y)
        if updated is not None:
            H, is_identity = updated, False
        else:
            H, is_identity = np.eye(n), True
            trace.resets += 1
        x, fx, g = x_new, f_new, g_new
        gnorm = float(np.linalg.norm(g))
        trace.iterates.append((x.copy(), fx, gnorm))
    else:
        trace.termination = CONVERGED if gnorm < config.epsilon else MAX_ITERATIONS
    return RefineResult(x, fx, trace)


def search_and_refine(
    objective: Callable,
    box: Box,
    N: int,
    generator: GeneratorKind | str = "sobol",
    config: RefineConfig | None = None,
    feasible: Callable | None = None,
) -> SearchResult:
    """Global search followed by DFP refinement of the incumbent.

    The returned result carries the refined point as ``best_point`` and the
    raw incumbent as ``raw_point``. A refinement that fails outright or does
    not improve leaves the raw incumbent in place; the trace is kept either way.
    """
    config = config or RefineConfig()
    result = global_search(objective, box, N, generator, feasible)
    try:
        refined = dfp_refine(objective, result.best_point, box, config)
    except (ValueError, DomainError) as exc:
        trace = RefineTrace(termination=DOMAIN_FAILURE, message=str(exc))
        return dataclasses.replace(result, refinement=trace)
    if refined.value <= result.best_value:
        return dataclasses.replace(
            result,
            best_point=refined.point,
            best_value=refined.value,
            raw_point=result.best_point,
            raw_value=result.best_value,
            refinement=refined.trace,
        )
    return dataclasses.replace(result, refinement=refined.trace)
