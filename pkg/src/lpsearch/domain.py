"""Search boxes and feasibility filtering.

Constraints are handled only as a membership predicate: trial points outside
the feasible region are rejected. Equality constraints describe sets of zero
volume that rejection can never hit, so they have to be eliminated (e.g. by
substitution) before searching.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

__all__ = ["Box", "FeasibleRegion", "map_to_box", "select_feasible"]


class Box:
    """Axis-aligned box ``a_j <= x_j <= b_j`` with ``a_j < b_j``."""

    def __init__(self, lower, upper):
        lower = np.array(lower, dtype=float).reshape(-1)
        upper = np.array(upper, dtype=float).reshape(-1)
        if lower.shape != upper.shape:
            raise ValueError(f"bounds differ in length: {lower.size} vs {upper.size}")
        if lower.size == 0:
            raise ValueError("box needs at least one dimension")
        if not np.all(np.isfinite(lower)) or not np.all(np.isfinite(upper)):
            raise ValueError("box bounds must be finite")
        if np.any(lower >= upper):
            j = int(np.argmax(lower >= upper))
            raise ValueError(f"empty or degenerate box in dimension {j + 1}: [{lower[j]}, {upper[j]}]")
        lower.setflags(write=False)
        upper.setflags(write=False)
        self.lower = lower
        self.upper = upper

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def volume(self) -> float:
        return float(np.prod(self.width))

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def shrink(self, margin: float) -> "Box":
        """Box pulled inward by ``margin * width`` on every side."""
        if not 0 <= margin < 0.5:
            raise ValueError("margin must lie in [0, 0.5)")
        if margin == 0:
            return self
        pad = margin * self.width
        return Box(self.lower + pad, self.upper - pad)

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.lower.tobytes(), self.upper.tobytes()))

    def __repr__(self):
        return f"Box({self.lower.tolist()}, {self.upper.tolist()})"


@dataclass(frozen=True)
class FeasibleRegion:
    box: Box
    predicate: Callable[[np.ndarray], bool]

    def __contains__(self, x):
        return bool(self.predicate(x))


def map_to_box(q, box: Box) -> np.ndarray:
    """Map unit-cube point(s) ``q`` to ``a + q (b - a)``.

    Accepts a single point of shape ``(n,)`` or a batch of shape ``(m, n)``.
    """
    q = np.asarray(q, dtype=float)
    if q.shape[-1:] != (box.dimension,):
        raise ValueError(f"point dimension {q.shape[-1:]} does not match box dimension {box.dimension}")
    return box.lower + q * box.width


def select_feasible(points: Iterable, region: FeasibleRegion | Callable) -> tuple[list, float]:
    """Keep the points accepted by the region's predicate, in input order.

    Returns ``(accepted, gamma)`` where ``gamma`` is the acceptance ratio, an
    estimate of ``volume(G) / volume(box)``.
    """
    predicate = region.predicate if isinstance(region, FeasibleRegion) else region
    accepted = []
    offered = 0
    for x in points:
        offered += 1
        if predicate(x):
            accepted.append(x)
    if offered == 0:
        raise ValueError("select_feasible needs at least one point")
    return accepted, len(accepted) / offered
