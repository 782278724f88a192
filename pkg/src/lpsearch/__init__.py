"""Quasi-random (Halton / Sobol LP-tau) global search with DFP refinement."""
from .domain import Box, FeasibleRegion, map_to_box, select_feasible
from .errors import CapacityError, ConfigError, DomainError, NoFeasiblePointError
from .lowdisc import (
    DirectionTable,
    DyadicFraction,
    PrimeList,
    default_direction_table,
    dyadic_xor,
    halton_point,
    halton_points,
    hybrid_point,
    load_direction_table,
    radical_inverse,
    sieve_primes,
    sobol_point,
    sobol_points,
)
from .refine import RefineConfig, RefineTrace, dfp_refine, fd_gradient, search_and_refine
from .search import GeneratorKind, SearchResult, global_search, grid_points, hit_probability

__version__ = "0.1.0"
