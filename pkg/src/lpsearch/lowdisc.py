"""Low-discrepancy point generators.

Halton points are built from radical inverses in the first ``n`` prime bases;
Sobol LP-tau points are built by xor-combining dyadic direction numbers
selected by the binary digits of the point index. Indices start at 1.

Scalar functions (``halton_point``, ``sobol_point``, ``hybrid_point``) return
one point; the plural forms return an ``(n, dim)`` array of consecutive points
and are what the search loop uses.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._directions import DIRECTION_DATA
from .errors import CapacityError

__all__ = [
    "PrimeList",
    "DyadicFraction",
    "DirectionTable",
    "REFERENCE_DIRECTIONS",
    "sieve_primes",
    "first_primes",
    "radical_inverse",
    "radical_inverse_fraction",
    "halton_point",
    "halton_points",
    "dyadic_xor",
    "sobol_point",
    "sobol_points",
    "hybrid_point",
    "hybrid_points",
    "default_direction_table",
    "build_direction_table",
    "load_direction_table",
    "dump_direction_table",
]

MAX_INDEX = 2**31


# --------------------------------------------------------------------------
# primes


@dataclass(frozen=True)
class PrimeList:
    limit: int
    primes: tuple[int, ...]

    def __len__(self):
        return len(self.primes)

    def __getitem__(self, k):
        return self.primes[k]

    def __iter__(self):
        return iter(self.primes)


def sieve_primes(limit: int) -> PrimeList:
    """All primes ``<= limit`` by the sieve of Eratosthenes.

    Crossing-out stops at the largest prime not exceeding ``sqrt(limit)``.
    """
    if int(limit) != limit or limit < 2:
        raise ValueError(f"sieve limit must be an integer >= 2, got {limit!r}")
    limit = int(limit)
    keep = np.ones(limit + 1, dtype=bool)
    keep[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if keep[p]:
            keep[p * p :: p] = False
    return PrimeList(limit, tuple(int(p) for p in np.flatnonzero(keep)))


def first_primes(count: int) -> PrimeList:
    """The first ``count`` primes, sieving with a growing limit."""
    if count < 1:
        raise ValueError("count must be positive")
    # p_n < n (ln n + ln ln n) for n >= 6
    n = max(count, 6)
    limit = int(n * (math.log(n) + math.log(math.log(n)))) + 1
    plist = sieve_primes(limit)
    return PrimeList(plist.limit, plist.primes[:count])


# --------------------------------------------------------------------------
# Halton


def _check_index(i):
    if int(i) != i or i < 1:
        raise ValueError(f"sequence index must be an integer >= 1, got {i!r}")
    if i > MAX_INDEX:
        raise CapacityError(f"index {i} exceeds the supported maximum 2**31")


def _reversed_digits(i: int, r: int) -> tuple[int, int]:
    # Returns (digits of i mirrored as an integer, r**number_of_digits).
    rev, scale = 0, 1
    while i:
        i, a = divmod(i, r)
        rev = rev * r + a
        scale *= r
    return rev, scale


def radical_inverse_fraction(i: int, r: int) -> Fraction:
    """Exact radical inverse of ``i`` in base ``r`` as a ``Fraction``."""
    _check_index(i)
    if int(r) != r or r < 2:
        raise ValueError(f"base must be an integer >= 2, got {r!r}")
    rev, scale = _reversed_digits(int(i), int(r))
    return Fraction(rev, scale)


def radical_inverse(i: int, r: int) -> float:
    """Radical inverse ``sum a_s r**-s`` of ``i`` in base ``r``.

    The mirrored digits are accumulated as an exact integer and divided once,
    so the result is the correctly rounded double of the exact value.
    """
    _check_index(i)
    if int(r) != r or r < 2:
        raise ValueError(f"base must be an integer >= 2, got {r!r}")
    rev, scale = _reversed_digits(int(i), int(r))
    return rev / scale


def _bases(dim, primes):
    if primes is None:
        return first_primes(dim).primes
    primes = tuple(primes)
    if len(primes) < dim:
        raise CapacityError(
            f"Halton dimension {dim} needs {dim} prime bases, only {len(primes)} supplied"
        )
    return primes[:dim]


def halton_point(i: int, dim: int, primes: Iterable[int] | None = None) -> np.ndarray:
    """Halton point ``P_i``; coordinate ``j`` uses the ``j``-th prime as base."""
    _check_index(i)
    bases = _bases(dim, primes)
    return np.array([radical_inverse(i, r) for r in bases])


def _radical_inverse_array(idx: np.ndarray, r: int) -> np.ndarray:
    rev = np.zeros_like(idx)
    scale = np.ones_like(idx)
    rest = idx.copy()
    while np.any(rest):
        live = rest > 0
        digit = rest % r
        rev = np.where(live, rev * r + digit, rev)
        scale = np.where(live, scale * r, scale)
        rest //= r
    return rev.astype(np.float64) / scale.astype(np.float64)


def halton_points(n: int, dim: int, start: int = 1, primes: Iterable[int] | None = None) -> np.ndarray:
    """Halton points with indices ``start .. start + n - 1`` as an ``(n, dim)`` array."""
    _check_index(start)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n:
        _check_index(start + n - 1)
    bases = _bases(dim, primes)
    idx = np.arange(start, start + n, dtype=np.int64)
    out = np.empty((n, dim))
    for j, r in enumerate(bases):
        if r > 2**31:
            raise CapacityError(f"base {r} too large for vectorised evaluation")
        out[:, j] = _radical_inverse_array(idx, r)
    return out


# --------------------------------------------------------------------------
# dyadic arithmetic


@dataclass(frozen=True, eq=False)
class DyadicFraction:
    """``numerator / 2**level``; not necessarily in lowest terms."""

    numerator: int
    level: int

    def __post_init__(self):
        if self.level < 0 or self.numerator < 0:
            raise ValueError("numerator and level must be non-negative")
        if self.numerator >= 1 << self.level:
            raise ValueError(f"{self.numerator}/2**{self.level} is not below 1")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.level)

    def __float__(self):
        return self.numerator / (1 << self.level)

    def __eq__(self, other):
        if isinstance(other, DyadicFraction):
            return self.as_fraction() == other.as_fraction()
        if isinstance(other, (int, float, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __xor__(self, other):
        return dyadic_xor(self, other)

    def __repr__(self):
        return f"DyadicFraction({self.numerator}/2**{self.level})"


def dyadic_xor(a: DyadicFraction, b: DyadicFraction) -> DyadicFraction:
    """Digit-by-digit addition modulo 2 of two binary fractions."""
    level = max(a.level, b.level)
    na = a.numerator << (level - a.level)
    nb = b.numerator << (level - b.level)
    return DyadicFraction(na ^ nb, level)


# --------------------------------------------------------------------------
# Sobol direction tables

# Direction points V^s (1-based dimension, level) -> numerator, which any
# direction table used here must reproduce. Levels 1..5 of dimensions 1..4 are
# fixed by the worked points Q_13 and Q_22; level 3 of dimensions 5..7 is a
# soft reference value.
REFERENCE_DIRECTIONS = {
    1: {1: 1, 2: 1, 3: 1, 4: 1, 5: 1},
    2: {1: 1, 2: 3, 3: 5, 4: 15, 5: 17},
    3: {1: 1, 2: 1, 3: 7, 4: 11, 5: 13},
    4: {1: 1, 2: 3, 3: 1, 4: 5, 5: 31},
}
SOFT_REFERENCE_DIRECTIONS = {5: {3: 5}, 6: {3: 7}, 7: {3: 3}}


@dataclass(frozen=True)
class DirectionTable:
    """Sobol direction numerators ``V_j^s = numerators[j-1][s-1] / 2**s``."""

    numerators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.numerators:
            raise ValueError("direction table is empty")
        depth = {len(row) for row in self.numerators}
        if len(depth) != 1:
            raise ValueError("every dimension needs the same number of levels")
        for j, row in enumerate(self.numerators, start=1):
            for s, m in enumerate(row, start=1):
                if m % 2 == 0 or not 1 <= m < (1 << s):
                    raise ValueError(
                        f"direction numerator {m} at dim {j}, level {s} must be odd and < 2**{s}"
                    )

    @property
    def max_dim(self) -> int:
        return len(self.numerators)

    @property
    def max_level(self) -> int:
        return len(self.numerators[0])

    def direction(self, j: int, s: int) -> DyadicFraction:
        return DyadicFraction(self.numerators[j - 1][s - 1], s)

    def aligned(self, dim: int) -> np.ndarray:
        # (dim, max_level) uint64 numerators scaled to the common denominator 2**max_level
        L = self.max_level
        shifts = np.array([L - s for s in range(1, L + 1)], dtype=np.uint64)
        num = np.array(self.numerators[:dim], dtype=np.uint64)
        return num << shifts

    def check_reference(self, soft: bool = False) -> None:
        """Raise ``ValueError`` unless the pinned reference directions are reproduced."""
        refs = dict(REFERENCE_DIRECTIONS)
        if soft:
            refs.update(SOFT_REFERENCE_DIRECTIONS)
        for j, levels in refs.items():
            for s, m in levels.items():
                if j > self.max_dim or s > self.max_level:
                    continue
                got = self.numerators[j - 1][s - 1]
                if got != m:
                    raise ValueError(
                        f"direction table gives V_{j}^{s} = {got}/2**{s}, expected {m}/2**{s}"
                    )


def _expand(poly: int, initial: Sequence[int], levels: int) -> list[int]:
    # m_k = 2 a_1 m_{k-1} ^ 4 a_2 m_{k-2} ^ ... ^ 2**d m_{k-d} ^ m_{k-d}
    deg = poly.bit_length() - 1
    m = list(initial)
    if deg == 0:
        return [1] * levels
    for k in range(len(m), levels):
        new = m[k - deg] ^ (m[k - deg] << deg)
        for t in range(1, deg):
            if (poly >> (deg - t)) & 1:
                new ^= m[k - t] << t
        m.append(new)
    return m[:levels]


def build_direction_table(
    polynomials: Sequence[tuple[int, Sequence[int]]], max_level: int = 32
) -> DirectionTable:
    """Expand ``(polynomial, initial numerators)`` pairs to ``max_level`` levels."""
    rows = tuple(tuple(_expand(p, init, max_level)) for p, init in polynomials)
    return DirectionTable(rows)


_DEFAULT_TABLE = None


def default_direction_table() -> DirectionTable:
    """Embedded 40-dimension, 32-level table (checked against the reference points)."""
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        table = build_direction_table(DIRECTION_DATA, 32)
        table.check_reference(soft=True)
        _DEFAULT_TABLE = table
    return _DEFAULT_TABLE


def load_direction_table(path: str | os.PathLike, check: bool = True) -> DirectionTable:
    """Read a ``j s numerator`` text table; ``#`` starts a comment.

    The entries must cover a full ``max_dim x max_level`` rectangle.
    """
    entries = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'j s numerator', got {line!r}")
            j, s, m = (int(p) for p in parts)
            if j < 1 or s < 1:
                raise ValueError(f"{path}:{lineno}: dimension and level start at 1")
            if (j, s) in entries:
                raise ValueError(f"{path}:{lineno}: duplicate entry for j={j}, s={s}")
            entries[j, s] = m
    if not entries:
        raise ValueError(f"{path}: no direction numbers found")
    max_dim = max(j for j, _ in entries)
    max_level = max(s for _, s in entries)
    missing = [(j, s) for j in range(1, max_dim + 1) for s in range(1, max_level + 1)
               if (j, s) not in entries]
    if missing:
        raise ValueError(f"{path}: table incomplete, first missing entry j={missing[0][0]}, s={missing[0][1]}")
    table = DirectionTable(
        tuple(tuple(entries[j, s] for s in range(1, max_level + 1)) for j in range(1, max_dim + 1))
    )
    if check:
        table.check_reference()
    return table


def dump_direction_table(table: DirectionTable, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write("# j s numerator   (V_j^s = numerator / 2**s)\n")
        for j, row in enumerate(table.numerators, start=1):
            for s, m in enumerate(row, start=1):
                fh.write(f"{j} {s} {m}\n")


# --------------------------------------------------------------------------
# Sobol points


def _check_sobol_capacity(last_index, dim, table):
    if dim < 1:
        raise ValueError("dimension must be positive")
    if dim > table.max_dim:
        raise CapacityError(
            f"Sobol dimension {dim} exceeds the direction table's {table.max_dim} dimensions"
        )
    if last_index.bit_length() > table.max_level:
        raise CapacityError(
            f"index {last_index} needs {last_index.bit_length()} levels, "
            f"direction table has {table.max_level}"
        )


def sobol_point(i: int, dim: int, table: DirectionTable | None = None) -> np.ndarray:
    """Sobol point ``Q_i``: coordinate ``j`` xors ``V_j^s`` over the set bits ``s`` of ``i``."""
    _check_index(i)
    table = table or default_direction_table()
    i = int(i)
    _check_sobol_capacity(i, dim, table)
    L = table.max_level
    out = np.empty(dim)
    for j in range(dim):
        row = table.numerators[j]
        acc, s, k = 0, 0, i
        while k:
            if k & 1:
                acc ^= row[s] << (L - s - 1)
            k >>= 1
            s += 1
        out[j] = acc / (1 << L)
    return out


def sobol_points(n: int, dim: int, table: DirectionTable | None = None, start: int = 1) -> np.ndarray:
    """Sobol points with indices ``start .. start + n - 1`` as an ``(n, dim)`` array."""
    _check_index(start)
    if n < 0:
        raise ValueError("n must be non-negative")
    table = table or default_direction_table()
    last = start + n - 1
    if n:
        _check_index(last)
    _check_sobol_capacity(max(last, start), dim, table)
    dirs = table.aligned(dim)
    idx = np.arange(start, start + n, dtype=np.uint64)
    acc = np.zeros((n, dim), dtype=np.uint64)
    for s in range(max(last, 1).bit_length()):
        bit = ((idx >> np.uint64(s)) & np.uint64(1)).astype(bool)
        acc[bit] ^= dirs[:, s]
    return acc.astype(np.float64) / float(1 << table.max_level)


# --------------------------------------------------------------------------
# hybrid quasi/pseudo-random points


def _pseudo_coords(i: int, count: int, seed: int) -> np.ndarray:
    # PCG64 keyed on (seed, i): the same index and seed always give the same draws.
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(i)])))
    return rng.random(count)


def hybrid_point(i: int, dim: int, table: DirectionTable | None = None, seed: int = 0) -> np.ndarray:
    """Sobol coordinates up to the table's dimension, pseudo-random beyond it.

    The pseudo-random coordinates come from a PCG64 stream seeded with
    ``(seed, i)``.
    """
    table = table or default_direction_table()
    if dim <= table.max_dim:
        return sobol_point(i, dim, table)
    head = sobol_point(i, table.max_dim, table)
    return np.concatenate([head, _pseudo_coords(i, dim - table.max_dim, seed)])


def hybrid_points(n: int, dim: int, table: DirectionTable | None = None, seed: int = 0,
                  start: int = 1) -> np.ndarray:
    table = table or default_direction_table()
    if dim <= table.max_dim:
        return sobol_points(n, dim, table, start)
    head = sobol_points(n, table.max_dim, table, start)
    extra = dim - table.max_dim
    tail = np.array([_pseudo_coords(i, extra, seed) for i in range(start, start + n)])
    return np.hstack([head, tail.reshape(n, extra)])
