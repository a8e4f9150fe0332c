"""Python bindings for the blotto evolutionary-learning library."""

from ._core import (
    EpsilonMode,
    EquilibriumKind,
    ExpFit,
    FitnessMode,
    GAParams,
    GameConfig,
    Player,
    QuadFit,
    RunTrace,
    Strategy,
    ValuationMode,
    VersusPoint,
    align_by_valuation,
    concentration_share,
    continuum_allocation,
    derive_run_seed,
    discrete_equilibrium,
    evenly_spaced_valuations,
    fit_exponential,
    fit_quadratic,
    nash_3field,
    net_valuations,
    pearson,
    run,
    versus_equilibrium,
)

__all__ = [
    "EpsilonMode",
    "EquilibriumKind",
    "ExpFit",
    "FitnessMode",
    "GAParams",
    "GameConfig",
    "Player",
    "QuadFit",
    "RunTrace",
    "Strategy",
    "ValuationMode",
    "VersusPoint",
    "align_by_valuation",
    "concentration_share",
    "continuum_allocation",
    "derive_run_seed",
    "discrete_equilibrium",
    "evenly_spaced_valuations",
    "fit_exponential",
    "fit_quadratic",
    "nash_3field",
    "net_valuations",
    "pearson",
    "run",
    "versus_equilibrium",
]

__version__ = "0.1.0"
