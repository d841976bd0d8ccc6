"""Seesaw search for the optimal finite-dimensional guessing strategy."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .kernels import seesaw
from .strategies import FiniteStrategy, GameReport, _make_report

DEFAULT_RESTARTS = 20
DEFAULT_ITERATIONS = 500
DEFAULT_TOL = 1e-10


def random_states(n: int, num_inputs: int, rng: np.random.Generator) -> np.ndarray:
    states = rng.standard_normal((num_inputs, n)) + 1j * rng.standard_normal((num_inputs, n))
    states /= np.sqrt(np.sum(np.abs(states) ** 2, axis=1))[:, None]
    return np.ascontiguousarray(states)


def seesaw_once(
    n: int,
    num_inputs: int,
    rng: np.random.Generator,
    iterations: int = DEFAULT_ITERATIONS,
    tol: float = DEFAULT_TOL,
) -> Tuple[FiniteStrategy, np.ndarray]:
    """One seesaw run from random start states; returns (strategy, history).

    The history holds the average guessing probability after each
    iteration and is non-decreasing by construction of the kernel.
    """
    states0 = random_states(n, num_inputs, rng)
    states, effects, history = seesaw(states0, iterations, tol)
    return FiniteStrategy(dim=n, states=states, effects=effects), history


def optimize_finite(
    n: int,
    num_inputs: int,
    seed: int = 0,
    iterations: int = DEFAULT_ITERATIONS,
    restarts: int = DEFAULT_RESTARTS,
    tol: float = DEFAULT_TOL,
) -> Tuple[FiniteStrategy, GameReport]:
    """Best strategy over independent seeded restarts.

    Each restart draws its start states from ``default_rng([seed, k])``, so
    a run is reproducible given (seed, restart index).
    """
    if n < 1 or num_inputs < 1:
        raise ValueError("dimension and input count must be positive")
    best: Tuple[float, FiniteStrategy] | None = None
    for k in range(restarts):
        rng = np.random.default_rng([seed, k])
        strategy, history = seesaw_once(n, num_inputs, rng, iterations, tol)
        score = float(history[-1])
        if best is None or score > best[0]:
            best = (score, strategy)
    assert best is not None
    strategy = best[1]
    from .kernels import guess_probabilities

    probs = guess_probabilities(strategy.states, strategy.effects)
    report = _make_report(
        "finite-optimized", list(range(num_inputs)), probs, dim=n
    )
    return strategy, report


def mixed_state_average(
    strategies: list[FiniteStrategy], weights: np.ndarray, povm_from: FiniteStrategy
) -> float:
    """Average guessing probability when each input sends the weighted mixture
    of the strategies' pure states, measured with ``povm_from``'s POVM.

    tr(E rho) for rho = sum_k w_k |psi_k><psi_k| is the weighted sum of the
    pure-state probabilities, which is how it is evaluated here.
    """
    from .kernels import guess_probabilities

    weights = np.asarray(weights, dtype=np.float64)
    weights = weights / weights.sum()
    total = 0.0
    for w, strat in zip(weights, strategies):
        probs = guess_probabilities(
            np.ascontiguousarray(strat.states), np.ascontiguousarray(povm_from.effects)
        )
        total += float(w * probs.mean())
    return total
