"""Best-of-N global search over deterministic or random trial points."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import lowdisc
from .domain import Box, map_to_box
from .errors import CapacityError, DomainError, NoFeasiblePointError

__all__ = [
    "GeneratorKind",
    "SearchResult",
    "global_search",
    "grid_points",
    "trial_points",
    "hit_probability",
    "first_hit",
]

KINDS = ("halton", "sobol", "hybrid", "random", "grid")
MAX_GRID_POINTS = 2**31
_BLOCK = 8192


@dataclass(frozen=True)
class GeneratorKind:
    """Which trial points to use.

    ``random`` requires ``seed``; ``grid`` requires ``points_per_axis >= 2``.
    ``hybrid`` takes an optional ``seed`` for its pseudo-random coordinates.
    """

    kind: str
    seed: Optional[int] = None
    points_per_axis: Optional[int] = None
    table: Optional[lowdisc.DirectionTable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random search needs an explicit seed")
        if self.kind == "grid" and (self.points_per_axis is None or self.points_per_axis < 2):
            raise ValueError("grid search needs points_per_axis >= 2")

    @classmethod
    def parse(cls, text: str, table=None) -> "GeneratorKind":
        """Parse ``halton``, ``sobol``, ``hybrid[:seed]``, ``random:seed`` or ``grid:M``."""
        name, _, arg = text.strip().lower().partition(":")
        if name == "lp":
            name = "sobol"
        if name == "grid":
            return cls("grid", points_per_axis=int(arg) if arg else None)
        if name in ("random", "hybrid"):
            return cls(name, seed=int(arg) if arg else (0 if name == "hybrid" else None), table=table)
        if arg:
            raise ValueError(f"generator {name!r} takes no argument")
        return cls(name, table=table)

    def __str__(self):
        if self.kind == "random":
            return f"random:{self.seed}"
        if self.kind == "grid":
            return f"grid:{self.points_per_axis}"
        return self.kind


@dataclass
class SearchResult:
    best_point: np.ndarray
    best_value: float
    best_index: int
    evaluations: int
    trials: int
    history: list = field(default_factory=list)
    raw_point: Optional[np.ndarray] = None
    raw_value: Optional[float] = None
    refinement: Optional[object] = None

    def __post_init__(self):
        if self.raw_point is None:
            self.raw_point = self.best_point
            self.raw_value = self.best_value


def grid_points(M: int, dim: int) -> Iterator[np.ndarray]:
    """Cell-centred grid: every coordinate takes the values ``(k + 1/2) / M``."""
    if M < 2:
        raise ValueError("grid needs M >= 2 points per axis")
    if dim < 1:
        raise ValueError("dimension must be positive")
    if M**dim > MAX_GRID_POINTS:
        raise CapacityError(f"grid of {M}**{dim} points exceeds {MAX_GRID_POINTS}")
    nodes = (np.arange(M) + 0.5) / M
    for combo in itertools.product(nodes, repeat=dim):
        yield np.array(combo)


def _grid_block(M, dim, start, n):
    # rows start-1 .. start+n-2 of the grid in itertools.product order
    k = np.arange(start - 1, start - 1 + n, dtype=np.int64)
    out = np.empty((n, dim))
    for j in range(dim - 1, -1, -1):
        out[:, j] = (k % M + 0.5) / M
        k //= M
    return out


def trial_points(generator: GeneratorKind, N: int, dim: int) -> Iterator[np.ndarray]:
    """Yield unit-cube trial points 1..N in blocks of ``(rows, dim)``."""
    kind = generator.kind
    if kind == "grid":
        M = generator.points_per_axis
        if M**dim > MAX_GRID_POINTS:
            raise CapacityError(f"grid of {M}**{dim} points exceeds {MAX_GRID_POINTS}")
        if N > M**dim:
            raise CapacityError(f"grid has only {M**dim} points, {N} requested")
    rng = np.random.default_rng(generator.seed) if kind == "random" else None
    start = 1
    while start <= N:
        n = min(_BLOCK, N - start + 1)
        if kind == "halton":
            block = lowdisc.halton_points(n, dim, start)
        elif kind == "sobol":
            block = lowdisc.sobol_points(n, dim, generator.table, start)
        elif kind == "hybrid":
            block = lowdisc.hybrid_points(n, dim, generator.table, generator.seed or 0, start)
        elif kind == "random":
            block = rng.random((n, dim))
        else:
            block = _grid_block(generator.points_per_axis, dim, start, n)
        yield block
        start += n


def _safe_eval(objective, x, feasible):
    if feasible is not None and not feasible(x):
        return None
    try:
        value = objective(x)
    except DomainError:
        return None
    if not np.isfinite(value):
        return None
    return float(value)


def global_search(
    objective: Callable,
    box: Box,
    N: int,
    generator: GeneratorKind | str = "sobol",
    feasible: Callable | None = None,
) -> SearchResult:
    """Evaluate ``objective`` at trial points 1..N mapped into ``box`` and keep the best.

    A trial point is skipped (it still uses up its index) when ``feasible``
    rejects it, when the objective has an ``is_feasible`` method that rejects
    it, or when the objective raises ``DomainError``. Ties go to the lowest
    index.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if isinstance(generator, str):
        generator = GeneratorKind.parse(generator)
    dim = box.dimension
    objective_dim = getattr(objective, "dimension", dim)
    if objective_dim != dim:
        raise ValueError(f"objective dimension {objective_dim} does not match box dimension {dim}")
    if feasible is None:
        feasible = getattr(objective, "is_feasible", None)

    best_value = np.inf
    best_point = None
    best_index = 0
    evaluations = 0
    history = []
    index = 0
    for block in trial_points(generator, N, dim):
        for x in map_to_box(block, box):
            index += 1
            value = _safe_eval(objective, x, feasible)
            if value is None:
                continue
            evaluations += 1
            if value < best_value:
                best_value, best_point, best_index = value, x, index
                history.append((index, value))
    if best_point is None:
        raise NoFeasiblePointError(f"none of the {N} trial points was feasible")
    return SearchResult(best_point, best_value, best_index, evaluations, N, history)


def first_hit(generator: GeneratorKind, box: Box, target, half_width: float = 0.05,
              max_points: int = 2**20) -> Optional[int]:
    """Smallest trial index whose point lies within ``half_width * (b - a)`` of ``target``.

    Returns ``None`` if none of the first ``max_points`` trials hits.
    """
    target = np.asarray(target, dtype=float)
    tol = half_width * box.width
    offset = 0
    for block in trial_points(generator, max_points, box.dimension):
        x = map_to_box(block, box)
        inside = np.all(np.abs(x - target) <= tol, axis=1)
        if inside.any():
            return offset + int(np.argmax(inside)) + 1
        offset += len(block)
    return None


def hit_probability(u: float, N: int) -> float:
    """Chance that ``N`` independent uniform points hit a set of measure ``u``."""
    if not 0 < u < 1:
        raise ValueError(f"vicinity measure must lie in (0, 1), got {u}")
    if N < 1:
        raise ValueError("N must be at least 1")
    return float(-np.expm1(N * np.log1p(-u)))
