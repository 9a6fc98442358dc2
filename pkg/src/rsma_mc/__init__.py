"""Criticality-aware rate-splitting multi-connectivity uplink toolkit."""

from .innersolver import InfeasibleError
from .model import (
    ArrivalRates,
    ConfigError,
    PowerAllocation,
    RateAllocation,
    SystemConfig,
    load_config,
    rate_to_packets_per_slot,
    symmetric_config,
)
from .scasolver import (
    MaxMinPrivate,
    SolveOptions,
    SolveReport,
    SolveStatus,
    WeightedSum,
    solve_mc_rsma,
)
from .baselines import TdmSolution, solve_mc_tdm, solve_sc_tdm

__version__ = "0.1.0"

__all__ = [
    "ArrivalRates",
    "ConfigError",
    "InfeasibleError",
    "MaxMinPrivate",
    "PowerAllocation",
    "RateAllocation",
    "SolveOptions",
    "SolveReport",
    "SolveStatus",
    "SystemConfig",
    "TdmSolution",
    "WeightedSum",
    "load_config",
    "rate_to_packets_per_slot",
    "solve_mc_rsma",
    "solve_mc_tdm",
    "solve_sc_tdm",
    "symmetric_config",
]
