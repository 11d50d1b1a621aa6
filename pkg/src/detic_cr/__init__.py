"""Exact rate regions and linear schemes for the high-SNR (linear deterministic)
two-user interference channel with a cognitive relay."""

from .bounds import (
    capacity_mixed_regime,
    capacity_no_interference,
    compare_routes,
    deterministic_thm1,
    outer_bound_closed,
    outer_bound_rank,
    redundancy_identities,
)
from .channel import ChannelParams, new_params, parse_params, swap_users, transmit
from .exceptions import CapError, DeticError, ParameterError, RegimeError, RegionError
from .gf2 import BitMatrix, BitVector, rank, shift_matrix
from .oracle import OracleResult, compare_to_bound, search_linear_schemes
from .regions import Inequality, RateRegion, from_inequalities, mirror
from .schemes import (
    LinearScheme,
    brute_force_decode_check,
    decode_check,
    example1_scheme,
    example2_scheme,
    simulate_scheme,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "CapError",
    "ChannelParams",
    "DeticError",
    "Inequality",
    "LinearScheme",
    "OracleResult",
    "ParameterError",
    "RateRegion",
    "RegimeError",
    "RegionError",
    "brute_force_decode_check",
    "capacity_mixed_regime",
    "capacity_no_interference",
    "compare_routes",
    "compare_to_bound",
    "decode_check",
    "deterministic_thm1",
    "example1_scheme",
    "example2_scheme",
    "from_inequalities",
    "mirror",
    "new_params",
    "outer_bound_closed",
    "outer_bound_rank",
    "parse_params",
    "rank",
    "redundancy_identities",
    "search_linear_schemes",
    "shift_matrix",
    "simulate_scheme",
    "swap_users",
    "transmit",
]
