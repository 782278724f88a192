"""Seven benchmark objectives with their search boxes and known optima.

=====  ======================  ====  ===========================
 id     name                    n     default box
=====  ======================  ====  ===========================
 1      Rosenbrock              2     [-2, 2]^2
 2      Fletcher-Powell helix   3     [-1, 1] x [0, 2]^2
 3      Powell singular         4     [-1, 2]^4
 4      Wood                    4     [0, 3]^4
 5      cosine mixture          2     [-3, 1] x [-1, 3]
 6      Himmelblau (10 vars)    10    [2.002, 9.998]^10
 7      drive design            2     [0.1, 5] x [0.1, 10]
=====  ======================  ====  ===========================

Function 7 is read as::

    f = (1 + x1) / (x1 * x2**2) * (25 (1 + x1) + 0.5 sqrt(D))**2
    D = 1.33e6 + 40931.68 x1**2 + 999.44 x2**4 - 32613.30 x2**2
        + 12543.58 x1 x2**2 - 122795.04 x1

i.e. the trailing square applies to the whole bracket. This reading gives
27845.37 at (1.49955, 6.12384) and 27845.02 at (1.50398, 6.14608), the
values reported for this problem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .domain import Box
from .errors import DomainError

__all__ = ["TestFunction", "evaluate", "suite", "get", "analytic_gradient"]


def rosenbrock(x):
    x1, x2 = x
    return 100.0 * (x2 - x1 * x1) ** 2 + (1.0 - x1) ** 2


def _theta(x1, x2):
    if x1 > 0:
        return math.atan(x2 / x1) / math.pi
    if x1 < 0:
        return 1.0 + math.atan(x2 / x1) / math.pi
    raise DomainError("theta(x1, x2) is undefined at x1 = 0")


def fletcher_powell(x):
    x1, x2, x3 = x
    th = _theta(x1, x2)
    r = math.hypot(x1, x2)
    return 100.0 * ((x3 - 5.0 * th) ** 2 + (r - 1.0) ** 2) + x3 * x3


def powell(x):
    x1, x2, x3, x4 = x
    return (x1 + 10 * x2) ** 2 + 5 * (x3 - x4) ** 2 + (x2 - 2 * x3) ** 4 + 10 * (x1 - x4) ** 4


def wood(x):
    x1, x2, x3, x4 = x
    return (
        100 * (x2 - x1 * x1) ** 2
        + (1 - x1) ** 2
        + 90 * (x4 - x3 * x3) ** 2
        + (1 - x3) ** 2
        + 10.1 * ((x2 - 1) ** 2 + (x4 - 1) ** 2)
        + 19.8 * (x2 - 1) * (x4 - 1)
    )


def cosine_mixture(x):
    x1, x2 = x
    return x1 * x1 + x2 * x2 - math.cos(18 * x1) - math.cos(18 * x2)


def himmelblau10(x):
    total = 0.0
    prod = 1.0
    for xi in x:
        if not 2.0 < xi < 10.0:
            raise DomainError(f"Himmelblau function undefined at x_i = {xi} (needs 2 < x_i < 10)")
        total += math.log(xi - 2.0) ** 2 + math.log(10.0 - xi) ** 2
        prod *= xi
    return total - prod**0.2


def drive_design(x):
    x1, x2 = x
    if not (0.1 <= x1 <= 5.0 and 0.1 <= x2 <= 10.0):
        raise DomainError(f"drive-design function undefined at ({x1}, {x2})")
    disc = (
        0.133e7
        + 40931.68 * x1 * x1
        + 999.44 * x2**4
        - 32613.30 * x2 * x2
        + 12543.58 * x1 * x2 * x2
        - 122795.04 * x1
    )
    if disc < 0:
        raise DomainError(f"negative radicand at ({x1}, {x2})")
    return (1 + x1) / (x1 * x2 * x2) * (25 * (1 + x1) + 0.5 * math.sqrt(disc)) ** 2


def _himmelblau_domain(x):
    return all(2.0 < xi < 10.0 for xi in x)


def _drive_domain(x):
    return 0.1 <= x[0] <= 5.0 and 0.1 <= x[1] <= 10.0


def _helix_domain(x):
    return x[0] != 0


@dataclass(frozen=True)
class TestFunction:
    """A benchmark objective; calling it evaluates the formula."""

    __test__ = False  # keep pytest from collecting this class

    id: int
    name: str
    dimension: int
    default_box: Box
    known_minimum_point: tuple
    known_minimum_value: float
    func: Callable = field(repr=False)
    implicit_domain: Optional[Callable] = field(default=None, repr=False)
    smooth: bool = True
    note: str = ""

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(f"{self.name} takes {self.dimension} coordinates, got shape {x.shape}")
        return float(self.func(x.tolist()))

    @property
    def box(self) -> Box:
        return self.default_box

    def is_feasible(self, x) -> bool:
        return self.implicit_domain is None or bool(self.implicit_domain(x))


# Minimiser of 10 ((ln(t-2))^2 + (ln(10-t))^2) - t^2, solved to double precision.
_HIMMELBLAU_T = 9.350265815308914
_HIMMELBLAU_F = -45.77846970744626
# Local refinement of the drive-design objective near (1.5, 6.14).
_DRIVE_X = (1.4997024491854352, 6.140217162472473)
_DRIVE_F = 27844.902583569572


_SUITE = (
    TestFunction(1, "Rosenbrock", 2, Box([-2, -2], [2, 2]), (1.0, 1.0), 0.0, rosenbrock,
                 note="curved parabolic valley"),
    TestFunction(2, "Fletcher-Powell", 3, Box([-1, 0, 0], [1, 2, 2]), (1.0, 0.0, 0.0), 0.0,
                 fletcher_powell, implicit_domain=_helix_domain, smooth=False,
                 note="helical valley; derivatives piecewise continuous, undefined at x1 = 0"),
    TestFunction(3, "Powell", 4, Box([-1] * 4, [2] * 4), (0.0, 0.0, 0.0, 0.0), 0.0, powell,
                 note="singular Hessian at the minimum"),
    TestFunction(4, "Wood", 4, Box([0] * 4, [3] * 4), (1.0, 1.0, 1.0, 1.0), 0.0, wood,
                 note="has non-global local minima"),
    TestFunction(5, "Cosine mixture", 2, Box([-3, -1], [1, 3]), (0.0, 0.0), -2.0, cosine_mixture,
                 note="many local minima"),
    TestFunction(6, "Himmelblau", 10, Box([2.002] * 10, [9.998] * 10), (_HIMMELBLAU_T,) * 10,
                 _HIMMELBLAU_F, himmelblau10, implicit_domain=_himmelblau_domain,
                 note="defined only for 2 < x_i < 10"),
    TestFunction(7, "Drive design", 2, Box([0.1, 0.1], [5, 10]), _DRIVE_X, _DRIVE_F, drive_design,
                 implicit_domain=_drive_domain, note="engineering design objective"),
)


def suite() -> list[TestFunction]:
    return list(_SUITE)


def get(fid: int) -> TestFunction:
    if not 1 <= int(fid) <= len(_SUITE):
        raise KeyError(f"unknown test function id {fid!r}; expected 1..{len(_SUITE)}")
    return _SUITE[int(fid) - 1]


def evaluate(fid: int, x) -> float:
    return get(fid)(x)


def analytic_gradient(fid: int, x) -> np.ndarray:
    """Hand-derived gradients of functions 1, 3 and 4 (used to check finite differences)."""
    x = np.asarray(x, dtype=float)
    if fid == 1:
        x1, x2 = x
        return np.array([-400 * x1 * (x2 - x1**2) - 2 * (1 - x1), 200 * (x2 - x1**2)])
    if fid == 3:
        x1, x2, x3, x4 = x
        a, b = x2 - 2 * x3, x1 - x4
        return np.array([
            2 * (x1 + 10 * x2) + 40 * b**3,
            20 * (x1 + 10 * x2) + 4 * a**3,
            10 * (x3 - x4) - 8 * a**3,
            -10 * (x3 - x4) - 40 * b**3,
        ])
    if fid == 4:
        x1, x2, x3, x4 = x
        return np.array([
            -400 * x1 * (x2 - x1**2) - 2 * (1 - x1),
            200 * (x2 - x1**2) + 20.2 * (x2 - 1) + 19.8 * (x4 - 1),
            -360 * x3 * (x4 - x3**2) - 2 * (1 - x3),
            180 * (x4 - x3**2) + 20.2 * (x4 - 1) + 19.8 * (x2 - 1),
        ])
    raise KeyError(f"no analytic gradient for function {fid}")
