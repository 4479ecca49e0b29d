"""Chaotic-iteration pseudorandom generator with output permutation."""

from .core import (
    DEFAULT_B,
    DEFAULT_SEED,
    Generator,
    GeneratorConfig,
    PermParams,
    ci_step,
    ci_step_block,
    permute,
    unpermute,
)
from .functions import F1, IDENTITY, NEG, BooleanFunc, build_iteration_graph, is_strongly_connected, lookup
from .strategies import STRATEGIES, StrategyGen, next_strategy, seed

__version__ = "0.1.0"
