"""The relaxed guessing game: a guess counts when it lands in an open
epsilon-ball around the input.

Whether the relaxation closes the separable/non-separable gap depends on
the metric.  Three metrics are provided, all evaluated in exact rational
arithmetic so the open-ball comparisons d < eps never hinge on rounding:

- ``standard-on-interval``: |x - y| on a bounded interval.  A finite grid
  of orthogonal cell states wins the relaxed game outright.
- ``discrete``: 0/1 distances.  Balls of radius <= 1 are singletons, so
  the relaxed game collapses to the sharp one.
- ``dyadic``: 2^(-first differing binary digit) on [0, 1).  A length-N
  chain encoding wins at radius 2^(-N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from ..errors import OutOfRangeError
from ..hilbert import LabelLike, as_label
from .chain import chain_decode, chain_encode
from .kernels import guess_probabilities
from .strategies import FiniteStrategy, GameReport, _make_report, validate_strategy

STANDARD = "standard-on-interval"
DISCRETE = "discrete"
DYADIC = "dyadic"
METRIC_KINDS = (STANDARD, DISCRETE, DYADIC)


def as_radius(value: Union[Fraction, int, str, float]) -> Fraction:
    """Coerce a ball radius to an exact rational.

    Unlike labels, a float radius is accepted (via its exact binary value):
    the radius only thresholds distances, it never identifies states.
    """
    if isinstance(value, float):
        return Fraction(value)
    return as_label(value)


def _dyadic_distance(x: Fraction, y: Fraction) -> Fraction:
    if x == y:
        return Fraction(0)
    fx, fy = x, y
    index = 0
    while True:
        index += 1
        fx *= 2
        fy *= 2
        bx = 1 if fx >= 1 else 0
        by = 1 if fy >= 1 else 0
        if bx != by:
            return Fraction(1, 2**index)
        fx -= bx
        fy -= by


@dataclass(frozen=True)
class MetricDescriptor:
    """One of the three metrics, with interval bounds where relevant."""

    kind: str
    low: Fraction = Fraction(0)
    high: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}; expected one of {METRIC_KINDS}")
        object.__setattr__(self, "low", as_label(self.low))
        object.__setattr__(self, "high", as_label(self.high))
        if self.kind == STANDARD and not self.low < self.high:
            raise ValueError("interval must satisfy low < high")

    def distance(self, x: LabelLike, y: LabelLike) -> Fraction:
        x, y = as_label(x), as_label(y)
        if self.kind == STANDARD:
            return abs(x - y)
        if self.kind == DISCRETE:
            return Fraction(0) if x == y else Fraction(1)
        for value in (x, y):
            if not (0 <= value < 1):
                raise OutOfRangeError(f"dyadic metric is defined on [0, 1), got {value}")
        return _dyadic_distance(x, y)

    def in_ball(self, center: LabelLike, point: LabelLike, radius) -> bool:
        """Open-ball membership d(center, point) < radius, exactly."""
        return self.distance(center, point) < as_radius(radius)


def standard_metric(low: LabelLike = 0, high: LabelLike = 1) -> MetricDescriptor:
    return MetricDescriptor(STANDARD, as_label(low), as_label(high))


def discrete_metric() -> MetricDescriptor:
    return MetricDescriptor(DISCRETE)


def dyadic_metric() -> MetricDescriptor:
    return MetricDescriptor(DYADIC)


# -- grid strategy ----------------------------------------------------------


@dataclass(frozen=True)
class GridStrategy:
    """Orthogonal cell encoding for the standard metric on an interval.

    The interval splits into ``num_cells`` half-open cells (the last one
    closed) whose width is strictly below the ball radius, each input is
    encoded as its cell's basis state, the measurement is the cell
    projection, and the decoded guess is the cell midpoint.
    """

    low: Fraction
    high: Fraction
    num_cells: int

    @property
    def width(self) -> Fraction:
        return (self.high - self.low) / self.num_cells

    def cell_of(self, x: LabelLike) -> int:
        x = as_label(x)
        if not (self.low <= x <= self.high):
            raise OutOfRangeError(f"{x} outside [{self.low}, {self.high}]")
        if x == self.high:
            return self.num_cells - 1
        return int((x - self.low) / self.width)

    def midpoint(self, cell: int) -> Fraction:
        if not 0 <= cell < self.num_cells:
            raise OutOfRangeError(f"cell {cell} outside 0..{self.num_cells - 1}")
        return self.low + self.width * cell + self.width / 2

    def decode(self, x: LabelLike) -> Fraction:
        return self.midpoint(self.cell_of(x))

    def finite_strategy(self) -> FiniteStrategy:
        """The cell encoding as an explicit dense strategy (one input per cell)."""
        n = self.num_cells
        states = np.eye(n, dtype=np.complex128)
        effects = np.zeros((n, n, n), dtype=np.complex128)
        for c in range(n):
            effects[c, c, c] = 1.0
        return FiniteStrategy(dim=n, states=states, effects=effects)


def grid_strategy(interval, epsilon) -> GridStrategy:
    """Smallest grid whose cell width is strictly below epsilon.

    num_cells = floor(length / epsilon) + 1, computed in exact rational
    arithmetic: [0, 1] with eps = 1/2 gives 3 cells of width 1/3, and any
    eps exceeding the length gives a single cell.  Strict width < eps makes
    every in-cell pair closer than eps, so the midpoint guess always lands
    in the open ball.
    """
    if isinstance(interval, MetricDescriptor):
        low, high = interval.low, interval.high
    else:
        low, high = as_label(interval[0]), as_label(interval[1])
    eps = as_radius(epsilon)
    if eps <= 0:
        raise OutOfRangeError("epsilon must be positive")
    if not low < high:
        raise ValueError("interval must satisfy low < high")
    length = high - low
    num_cells = int(length / eps) + 1
    return GridStrategy(low=low, high=high, num_cells=num_cells)


# -- relaxed game -----------------------------------------------------------


@dataclass(frozen=True)
class ChainStrategy:
    """Truncated binary-expansion encoding on [0, 1) with num_sites bits."""

    num_sites: int


def play_epsilon(
    metric: MetricDescriptor,
    strategy: Union[GridStrategy, FiniteStrategy, ChainStrategy],
    epsilon,
    inputs: Sequence[LabelLike],
) -> GameReport:
    """Run the relaxed game: g_eps(x) = Pr(y lands in the open eps-ball of x).

    - GridStrategy: inputs are interval points; the cell measurement is
      deterministic, so g is an exact 0/1 indicator.
    - FiniteStrategy: inputs are input indices, with the metric read on the
      index labels; g_eps(i) sums the outcome probabilities over the ball.
      For the discrete metric at radius <= 1 the ball is the singleton {i},
      reproducing the sharp game term for term.
    - ChainStrategy: inputs are points of [0, 1); Bob decodes the truncated
      expansion, an exact dyadic rational.
    """
    eps = as_radius(epsilon)
    if eps <= 0:
        raise OutOfRangeError("epsilon must be positive")

    if isinstance(strategy, GridStrategy):
        labels = [as_label(x) for x in inputs]
        probs = [1.0 if metric.in_ball(x, strategy.decode(x), eps) else 0.0 for x in labels]
        return _make_report(
            "epsilon-grid", labels, probs,
            dim=strategy.num_cells, epsilon=float(eps), metric=metric.kind,
        )

    if isinstance(strategy, ChainStrategy):
        labels = [as_label(x) for x in inputs]
        probs = []
        for x in labels:
            decoded = chain_decode(chain_encode(x, strategy.num_sites))
            probs.append(1.0 if metric.in_ball(x, decoded, eps) else 0.0)
        return _make_report(
            "epsilon-chain", labels, probs,
            dim=2**strategy.num_sites, epsilon=float(eps), metric=metric.kind,
        )

    validate_strategy(strategy)
    indices = [int(i) for i in inputs]
    all_probs = _outcome_probabilities(strategy)
    probs = []
    for i in indices:
        ball = [j for j in range(strategy.num_inputs) if metric.in_ball(i, j, eps)]
        total = 0.0
        for j in ball:
            total += all_probs[i, j]
        probs.append(total)
    return _make_report(
        "epsilon-finite", indices, probs,
        dim=strategy.dim, epsilon=float(eps), metric=metric.kind,
    )


def _outcome_probabilities(strategy: FiniteStrategy) -> np.ndarray:
    """p[i, j] = Re <psi_i, E_j psi_i> via the same kernel as the sharp game."""
    m = strategy.num_inputs
    out = np.empty((m, m), dtype=np.float64)
    for j in range(m):
        effect_j = np.ascontiguousarray(
            np.broadcast_to(strategy.effects[j], (m, strategy.dim, strategy.dim))
        )
        out[:, j] = guess_probabilities(np.ascontiguousarray(strategy.states), effect_j)
    return out
