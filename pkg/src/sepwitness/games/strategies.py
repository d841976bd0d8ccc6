"""Strategies and reports for the prepare-and-measure guessing game.

Two regimes: the exact non-separable strategy (characteristic-function
states with the span-projection measurement, evaluated with sparse exact
arithmetic) and finite-dimensional strategies (dense states plus a POVM,
evaluated with the in-repo Hermitian kernels).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ..errors import DuplicateInputError, InvalidStrategyError
from ..hilbert import Ket, LabelLike, as_label, characteristic_state, inner_product
from .kernels import guess_probabilities, jacobi_eigh, psd_sqrt_pinv

STATE_NORM_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class GameReport:
    """Per-input guessing probabilities and their average, with run metadata."""

    kind: str
    inputs: Tuple
    guess_probs: Tuple[float, ...]
    average: float
    dim: Optional[int] = None
    epsilon: Optional[float] = None
    metric: Optional[str] = None

    @property
    def num_inputs(self) -> int:
        return len(self.inputs)

    def guessing_mass(self) -> float:
        return float(sum(self.guess_probs))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": [str(x) for x in self.inputs],
            "guess_probs": list(self.guess_probs),
            "average": self.average,
            "dim": self.dim,
            "num_inputs": self.num_inputs,
            "epsilon": self.epsilon,
            "metric": self.metric,
        }


def _make_report(kind: str, inputs: Sequence, probs: Sequence[float], **meta) -> GameReport:
    probs = tuple(float(p) for p in probs)
    average = float(sum(probs) / len(probs)) if probs else 0.0
    return GameReport(kind=kind, inputs=tuple(inputs), guess_probs=probs, average=average, **meta)


# -- non-separable strategy ------------------------------------------------


class NonSeparableStrategy:
    """Characteristic-function encoding with the span-projection measurement.

    The effect assigned to a finite outcome set S is the projection onto
    the span of the encoded states of S; restricted to disjoint singletons
    these sum to the projection onto the corresponding family, so the
    measure is additive by construction.
    """

    def state(self, x: LabelLike) -> Ket:
        return characteristic_state(x)

    def project_span(self, outcomes: Iterable[LabelLike], psi: Ket) -> Ket:
        """Apply the projection onto span{chi_s : s in outcomes} to psi."""
        out = Ket()
        for s in outcomes:
            chi = characteristic_state(s)
            out = out + inner_product(chi, psi) * chi
        return out

    def outcome_probability(self, outcomes: Iterable[LabelLike], psi: Ket) -> float:
        """Pr(y in outcomes | psi) for the span-projection measurement."""
        return sum(abs(inner_product(characteristic_state(s), psi)) ** 2 for s in outcomes)

    def guess_probability(self, x: LabelLike) -> float:
        return self.outcome_probability([x], self.state(x))

    def cross_probability(self, x: LabelLike, other: LabelLike) -> float:
        """Pr(y = other | state for x); exactly zero for distinct labels."""
        return self.outcome_probability([other], self.state(x))


def play_nonseparable(inputs: Sequence[LabelLike]) -> GameReport:
    """Run the sharp game with the non-separable strategy; g is exactly 1."""
    labels = [as_label(x) for x in inputs]
    if len(set(labels)) != len(labels):
        raise DuplicateInputError("inputs must be pairwise distinct")
    strategy = NonSeparableStrategy()
    probs = [strategy.guess_probability(x) for x in labels]
    return _make_report("nonseparable", labels, probs, dim=None)


# -- finite-dimensional strategies ------------------------------------------


@dataclass(frozen=True)
class FiniteStrategy:
    """Dense encoding states and POVM effects in dimension ``dim``.

    ``states`` has shape (num_inputs, dim) with unit rows; ``effects`` has
    shape (num_inputs, dim, dim), each Hermitian PSD, summing to at most
    the identity (an implicit completion effect absorbs the remainder).
    """

    dim: int
    states: np.ndarray
    effects: np.ndarray

    def __post_init__(self):
        states = np.ascontiguousarray(self.states, dtype=np.complex128)
        effects = np.ascontiguousarray(self.effects, dtype=np.complex128)
        states.setflags(write=False)
        effects.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "effects", effects)

    @property
    def num_inputs(self) -> int:
        return self.states.shape[0]


def validate_strategy(strategy: FiniteStrategy) -> None:
    """Raise InvalidStrategyError unless the POVM/normalization invariants hold."""
    states, effects = strategy.states, strategy.effects
    n = strategy.dim
    if states.ndim != 2 or states.shape[1] != n:
        raise InvalidStrategyError(f"states must have shape (m, {n})")
    if effects.shape != (states.shape[0], n, n):
        raise InvalidStrategyError(f"effects must have shape (m, {n}, {n})")
    norms = np.sqrt(np.sum(np.abs(states) ** 2, axis=1))
    worst = float(np.max(np.abs(norms - 1.0))) if len(norms) else 0.0
    if worst > STATE_NORM_TOL:
        raise InvalidStrategyError(f"state norms deviate from 1 by {worst:.3e}")
    total = np.zeros((n, n), dtype=np.complex128)
    for x in range(strategy.num_inputs):
        e = effects[x]
        asym = float(np.max(np.abs(e - e.conj().T)))
        if asym > PSD_TOL:
            raise InvalidStrategyError(f"effect {x} is not Hermitian (asymmetry {asym:.3e})")
        w, _ = jacobi_eigh(np.ascontiguousarray((e + e.conj().T) / 2.0))
        if w[0] < -PSD_TOL:
            raise InvalidStrategyError(f"effect {x} has eigenvalue {w[0]:.3e} < -{PSD_TOL}")
        total = total + e
    w, _ = jacobi_eigh(np.ascontiguousarray((total + total.conj().T) / 2.0))
    if w[-1] > 1.0 + PSD_TOL:
        raise InvalidStrategyError(
            f"effects sum has eigenvalue {w[-1]:.10f} > 1 + {PSD_TOL}: not dominated by identity"
        )


def play_finite(strategy: FiniteStrategy, inputs: Optional[Sequence[int]] = None) -> GameReport:
    """Evaluate g(x) = <psi_x, E_x psi_x> for the given input indices."""
    validate_strategy(strategy)
    if inputs is None:
        inputs = list(range(strategy.num_inputs))
    inputs = [int(i) for i in inputs]
    for i in inputs:
        if not 0 <= i < strategy.num_inputs:
            raise InvalidStrategyError(f"input index {i} outside 0..{strategy.num_inputs - 1}")
    sub_states = np.ascontiguousarray(strategy.states[inputs])
    sub_effects = np.ascontiguousarray(strategy.effects[inputs])
    probs = guess_probabilities(sub_states, sub_effects)
    return _make_report("finite", inputs, probs, dim=strategy.dim)


def orthogonal_encoding_strategy(n: int, num_inputs: int) -> FiniteStrategy:
    """The explicit bound-saturating strategy: G = min(n, m)/m exactly.

    The first min(n, m) inputs are encoded in orthogonal basis states and
    measured projectively; any remaining input is sent as the first basis
    state with a zero effect.
    """
    if n < 1 or num_inputs < 1:
        raise ValueError("dimension and input count must be positive")
    k = min(n, num_inputs)
    states = np.zeros((num_inputs, n), dtype=np.complex128)
    effects = np.zeros((num_inputs, n, n), dtype=np.complex128)
    for x in range(num_inputs):
        if x < k:
            states[x, x] = 1.0
            effects[x, x, x] = 1.0
        else:
            states[x, 0] = 1.0
    return FiniteStrategy(dim=n, states=states, effects=effects)


def random_strategy(n: int, num_inputs: int, rng: np.random.Generator) -> FiniteStrategy:
    """A random valid strategy: unit states plus a normalized random POVM.

    Raw PSD blocks A_x of random rank are conjugated by the inverse square
    root of their sum, so the effects sum to a projection and every POVM
    invariant holds by construction.
    """
    states = rng.standard_normal((num_inputs, n)) + 1j * rng.standard_normal((num_inputs, n))
    states /= np.sqrt(np.sum(np.abs(states) ** 2, axis=1))[:, None]
    raw = np.zeros((num_inputs, n, n), dtype=np.complex128)
    for x in range(num_inputs):
        rank = int(rng.integers(1, n + 1))
        block = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
        raw[x] = block @ block.conj().T
    total = np.ascontiguousarray(raw.sum(axis=0))
    root = psd_sqrt_pinv(total, 1e-12)
    effects = np.stack([root @ raw[x] @ root for x in range(num_inputs)])
    # symmetrize away the floating drift of the conjugation
    effects = (effects + np.conj(np.transpose(effects, (0, 2, 1)))) / 2.0
    return FiniteStrategy(dim=n, states=states, effects=effects)
