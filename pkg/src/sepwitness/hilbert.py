"""Sparse complex vectors over exact rational labels.

Vectors here live in the space of square-summable functions on an
uncountable index set: each one is a finitely-supported map from exact
labels to complex amplitudes.  Labels are arbitrary-precision rationals
(``fractions.Fraction``), so key comparisons are exact and vectors with
disjoint supports are orthogonal with no tolerance involved.  Amplitudes
are ordinary double-precision complex numbers.

Bipartite vectors reuse the same container with ``(label, label)`` pair
keys; ``BiKet`` is an alias documenting that convention (left key =
Alice, right key = Bob).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import EmptyStateError

Label = Fraction
LabelLike = Union[Fraction, int, str]


def as_label(value: LabelLike) -> Label:
    """Coerce an exact value to a label.

    Accepts Fractions, ints and strings understood by ``Fraction``.
    Floats are rejected: label identity must never depend on binary
    rounding, and a silently converted float would make disjoint-support
    orthogonality tests meaningless.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"labels must be exact rationals (Fraction, int or string), got {type(value).__name__}"
    )


class Ket:
    """Finitely-supported complex vector with exact keys.

    Immutable after construction.  Exactly-zero amplitudes are dropped
    eagerly so that the support is well defined for disjointness
    arguments; no threshold pruning is applied (see :meth:`pruned`).

    Keys may be any hashable exact value: labels for a single system,
    ``(label, label)`` pairs for a bipartite one.  Duplicate keys in the
    constructor input accumulate, which makes building superpositions
    from generators convenient.
    """

    __slots__ = ("_amp",)

    def __init__(self, amplitudes: Union[Mapping, Iterable[Tuple[object, complex]]] = ()):
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        amp: dict = {}
        for key, value in items:
            value = complex(value)
            if key in amp:
                value = amp[key] + value
            if value == 0:
                amp.pop(key, None)
            else:
                amp[key] = value
        self._amp = amp

    # -- access ---------------------------------------------------------

    @property
    def support(self) -> frozenset:
        return frozenset(self._amp)

    def amplitude(self, key) -> complex:
        return self._amp.get(key, 0j)

    def items(self) -> Iterator[Tuple[object, complex]]:
        return iter(self._amp.items())

    def sorted_items(self) -> list:
        return sorted(self._amp.items(), key=lambda kv: kv[0])

    def __len__(self) -> int:
        return len(self._amp)

    def __bool__(self) -> bool:
        return bool(self._amp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ket):
            return NotImplemented
        return self._amp == other._amp

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v:.6g}" for k, v in self.sorted_items()[:6])
        more = "" if len(self) <= 6 else f", ... ({len(self)} terms)"
        return f"Ket({{{body}{more}}})"

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "Ket") -> "Ket":
        out = dict(self._amp)
        for key, value in other._amp.items():
            acc = out.get(key, 0j) + value
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        ket = Ket.__new__(Ket)
        ket._amp = out
        return ket

    def __sub__(self, other: "Ket") -> "Ket":
        return self + (-1.0) * other

    def __neg__(self) -> "Ket":
        return (-1.0) * self

    def __mul__(self, scalar) -> "Ket":
        scalar = complex(scalar)
        if scalar == 0:
            return Ket()
        ket = Ket.__new__(Ket)
        ket._amp = {k: scalar * v for k, v in self._amp.items()}
        return ket

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Ket":
        return self * (1.0 / complex(scalar))

    def norm_sq(self) -> float:
        return sum(abs(v) ** 2 for v in self._amp.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def normalized(self) -> "Ket":
        n = self.norm()
        if n == 0:
            raise EmptyStateError("cannot normalize the zero vector")
        return self / n

    def pruned(self, tol: float = 0.0) -> "Ket":
        """Drop entries with |amplitude| <= tol (default keeps all nonzero)."""
        return Ket({k: v for k, v in self._amp.items() if abs(v) > tol})


BiKet = Ket


def inner_product(u: Ket, v: Ket) -> complex:
    """<u, v> over the finite intersection of supports; conjugate-linear in u."""
    if len(u) > len(v):
        return sum((u._amp[k].conjugate() * a for k, a in v._amp.items() if k in u._amp), 0j)
    return sum((a.conjugate() * v._amp[k] for k, a in u._amp.items() if k in v._amp), 0j)


def tensor_product(u: Ket, v: Ket) -> BiKet:
    """Pair-keyed product vector: amplitude at (x, y) is u(x) * v(y)."""
    return Ket(((ku, kv), au * av) for ku, au in u.items() for kv, av in v.items())


def characteristic_state(x: LabelLike) -> Ket:
    """Unit vector supported on the single label x."""
    return Ket({as_label(x): 1.0 + 0j})


def bi_characteristic_state(x: LabelLike, y: LabelLike) -> BiKet:
    """Unit bipartite vector supported on the single key pair (x, y)."""
    return Ket({(as_label(x), as_label(y)): 1.0 + 0j})
