from ._accel import NUMBA_ENABLED, accelerated
from .chain import chain_basis_index, chain_bits_from_index, chain_decode, chain_encode
from .epsilon import (
    ChainStrategy,
    GridStrategy,
    MetricDescriptor,
    discrete_metric,
    dyadic_metric,
    grid_strategy,
    play_epsilon,
    standard_metric,
)
from .optimize import mixed_state_average, optimize_finite, seesaw_once
from .strategies import (
    FiniteStrategy,
    GameReport,
    NonSeparableStrategy,
    orthogonal_encoding_strategy,
    play_finite,
    play_nonseparable,
    random_strategy,
    validate_strategy,
)

__all__ = [
    "NUMBA_ENABLED",
    "accelerated",
    "chain_basis_index",
    "chain_bits_from_index",
    "chain_decode",
    "chain_encode",
    "ChainStrategy",
    "GridStrategy",
    "MetricDescriptor",
    "discrete_metric",
    "dyadic_metric",
    "grid_strategy",
    "play_epsilon",
    "standard_metric",
    "mixed_state_average",
    "optimize_finite",
    "seesaw_once",
    "FiniteStrategy",
    "GameReport",
    "NonSeparableStrategy",
    "orthogonal_encoding_strategy",
    "play_finite",
    "play_nonseparable",
    "random_strategy",
    "validate_strategy",
]
