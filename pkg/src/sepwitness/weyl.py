"""Weyl commutation-relation representations with an exact eigenbasis.

A representation is fixed by a phase-space direction along which the Weyl
operator acts diagonally on the characteristic-function basis, plus an
injective affine phase function giving each basis label its eigenphase.
With frame coordinates (r, t) -- r along the diagonal direction, t along
the orthogonal one -- the fixed convention is::

    W(r, 0) chi_l = exp(i r phi(l)) chi_l
    W(0, t) chi_l = chi_{l + t/slope}
    W(r, t)       = exp(-i r t / 2) W(r, 0) W(0, t)

which gives W(r, t) chi_l = exp(i (r t / 2 + r phi(l))) chi_{l + t/slope}
and satisfies the composition law

    W(p) W(q) = exp(i (p_r q_t - p_t q_r) / 2) W(p + q).

Lab-frame parameters (a, b) are converted to frame coordinates by the
inverse rotation, which preserves the symplectic form, so the same law
holds in lab coordinates.  Directions are stored as exact rational unit
vectors (axis cases and Pythagorean angles); for any other angle only
frame-coordinate application is available, keeping every key shift an
exact rational.

Phase arguments are accumulated exactly as rationals and exponentiated
once per application, so the only floating step is the final cis().
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Set, Tuple

from .errors import EmptyStateError
from .hilbert import Ket, Label, LabelLike, as_label, characteristic_state, inner_product

_TWO_PI = 2.0 * math.pi


def cis(arg: Fraction) -> complex:
    """exp(i * arg) for an exact rational argument."""
    return cmath.exp(1j * float(arg))


@dataclass(frozen=True)
class AffinePhase:
    """Injective rational-affine eigenphase function value(l) = slope*l + offset."""

    slope: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", as_label(self.slope))
        object.__setattr__(self, "offset", as_label(self.offset))
        if self.slope == 0:
            raise ValueError("phase function must be injective: slope must be nonzero")

    def __call__(self, label: Label) -> Fraction:
        return self.slope * label + self.offset

    def displacement(self, t: Fraction) -> Fraction:
        """Key shift realizing an orthogonal-direction frame parameter t."""
        return t / self.slope


IDENTITY_PHASE = AffinePhase()


@dataclass(frozen=True)
class WeylParams:
    """Lab-frame displacement (a along position, b along momentum)."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_label(self.a))
        object.__setattr__(self, "b", as_label(self.b))

    def __add__(self, other: "WeylParams") -> "WeylParams":
        return WeylParams(self.a + other.a, self.b + other.b)

    def symplectic(self, other: "WeylParams") -> Fraction:
        """a1*b2 - a2*b1, the cocycle exponent numerator."""
        return self.a * other.b - self.b * other.a


@dataclass(frozen=True)
class HalvorsonRep:
    """Representation descriptor: diagonal direction plus phase function.

    ``cos_theta``/``sin_theta`` hold the direction as exact rationals when
    it admits them (axes, Pythagorean angles); otherwise they are None and
    only :func:`apply_weyl_frame` is usable.  ``theta`` is a float kept for
    reporting.
    """

    cos_theta: Optional[Fraction]
    sin_theta: Optional[Fraction]
    theta: float
    phi: AffinePhase = field(default=IDENTITY_PHASE)

    def __post_init__(self):
        if (self.cos_theta is None) != (self.sin_theta is None):
            raise ValueError("direction components must be both exact or both absent")
        if self.cos_theta is not None:
            c = as_label(self.cos_theta)
            s = as_label(self.sin_theta)
            if c * c + s * s != 1:
                raise ValueError("direction must be an exact unit vector")
            object.__setattr__(self, "cos_theta", c)
            object.__setattr__(self, "sin_theta", s)

    @property
    def has_exact_direction(self) -> bool:
        return self.cos_theta is not None

    def frame_coordinates(self, params: WeylParams) -> Tuple[Fraction, Fraction]:
        """Rotate lab parameters into this rep's frame: (r, t) = R(-theta) (a, b)."""
        if not self.has_exact_direction:
            raise ValueError(
                "this representation has no exact lab-frame direction; "
                "supply frame coordinates via apply_weyl_frame"
            )
        c, s = self.cos_theta, self.sin_theta
        return c * params.a + s * params.b, -s * params.a + c * params.b


def position_rep(phi: AffinePhase = IDENTITY_PHASE) -> HalvorsonRep:
    """Default rep: W(a, 0) diagonal, W(0, b) shifts (theta = 0)."""
    return HalvorsonRep(Fraction(1), Fraction(0), 0.0, phi)


def momentum_rep(phi: AffinePhase = IDENTITY_PHASE) -> HalvorsonRep:
    """W(0, b) diagonal, W(a, 0) shifts (theta = pi/2)."""
    return HalvorsonRep(Fraction(0), Fraction(1), math.pi / 2, phi)


def rep_from_direction(
    cos_theta: LabelLike, sin_theta: LabelLike, phi: AffinePhase = IDENTITY_PHASE
) -> HalvorsonRep:
    """Rep diagonal along an exact rational unit vector (c, s)."""
    c, s = as_label(cos_theta), as_label(sin_theta)
    theta = math.atan2(float(s), float(c)) % _TWO_PI
    return HalvorsonRep(c, s, theta, phi)


def pythagorean_rep(m: int = 2, n: int = 1, phi: AffinePhase = IDENTITY_PHASE) -> HalvorsonRep:
    """Rep along the rational direction generated by the Pythagorean pair m > n >= 1.

    (m, n) = (2, 1) gives cos = 3/5, sin = 4/5.
    """
    if not (isinstance(m, int) and isinstance(n, int) and m > n >= 1):
        raise ValueError("need integers m > n >= 1")
    h = Fraction(m * m + n * n)
    return rep_from_direction(Fraction(m * m - n * n) / h, Fraction(2 * m * n) / h, phi)


_AXIS_DIRECTIONS = {
    0: (Fraction(1), Fraction(0)),
    1: (Fraction(0), Fraction(1)),
    2: (Fraction(-1), Fraction(0)),
    3: (Fraction(0), Fraction(-1)),
}


def rotated_rep(theta: float, phi: AffinePhase = IDENTITY_PHASE) -> HalvorsonRep:
    """Rep whose Weyl operator along the angle-theta direction is diagonal.

    Axis angles (multiples of pi/2) get exact directions.  Any other angle
    yields a frame-only rep: its action is available through
    :func:`apply_weyl_frame`, whose coordinates are exact by construction,
    while lab-frame application would need an irrational rotation and is
    refused.  Exact non-axis directions are available via
    :func:`rep_from_direction` / :func:`pythagorean_rep`.
    """
    theta = float(theta) % _TWO_PI
    for k, (c, s) in _AXIS_DIRECTIONS.items():
        target = k * math.pi / 2
        if abs(theta - target) <= 1e-12 or abs(theta - target - _TWO_PI) <= 1e-12:
            return HalvorsonRep(c, s, target % _TWO_PI, phi)
    return HalvorsonRep(None, None, theta, phi)


# -- actions --------------------------------------------------------------


def apply_weyl_frame(rep: HalvorsonRep, r: LabelLike, t: LabelLike, psi: Ket) -> Ket:
    """Act with the Weyl operator given by frame coordinates (r, t).

    r is the component along the rep's diagonal direction, t the orthogonal
    one.  Valid for every rep, including frame-only ones.
    """
    r = as_label(r)
    t = as_label(t)
    shift = rep.phi.displacement(t)
    half_rt = r * t / 2
    out = Ket.__new__(Ket)
    out._amp = {
        label + shift: amp * cis(half_rt + r * rep.phi(label)) for label, amp in psi.items()
    }
    return out


def apply_weyl(rep: HalvorsonRep, params: WeylParams, psi: Ket) -> Ket:
    """Act with W(a, b) in lab coordinates on a finitely-supported vector."""
    r, t = rep.frame_coordinates(params)
    return apply_weyl_frame(rep, r, t, psi)


def eigenbasis_overlap(rep: HalvorsonRep, b: LabelLike, mu: LabelLike, lam: LabelLike) -> complex:
    """<chi_mu, W_orth(b) chi_lam> for the orthogonal-direction operator.

    For the default rep this is literally <chi_mu, W(0, b) chi_lam>.  The
    value is computed through the generic action, not from the overlap
    condition, so the zero/nonzero dichotomy is a genuine consequence of
    the key arithmetic.
    """
    moved = apply_weyl_frame(rep, 0, b, characteristic_state(lam))
    return inner_product(characteristic_state(mu), moved)


def phase_difference_set(rep: HalvorsonRep, support) -> Set[Fraction]:
    """{phi(mu) - phi(lam)} over all ordered support pairs."""
    values = [rep.phi(label) for label in support]
    return {m - l for m in values for l in values}


def _smallest_positive_integer_outside(diffs: Set[Fraction]) -> Fraction:
    k = 1
    while Fraction(k) in diffs:
        k += 1
    return Fraction(k)


def find_momentum_eigenvector_violation(rep: HalvorsonRep, psi: Ket) -> Tuple[Fraction, float]:
    """Witness that psi is no eigenvector of the orthogonal-direction family.

    Returns (b, 2.0) where b is the smallest positive integer outside the
    finite difference set {phi(mu) - phi(lam)} of psi's support.  For that
    b the overlap <psi, W_orth(b) psi> vanishes exactly (disjoint supports),
    so ||W_orth(b) psi - exp(i b g) psi||^2 = 2 for every phase g, given
    unit-norm psi.
    """
    if not psi:
        raise EmptyStateError("the zero vector admits no eigenvector witness")
    b = _smallest_positive_integer_outside(phase_difference_set(rep, psi.support))
    return b, 2.0


def orthogonal_overlap(rep: HalvorsonRep, b: LabelLike, psi: Ket) -> complex:
    """<psi, W_orth(b) psi>, the matrix element witnessing the b-jump at 0."""
    return inner_product(psi, apply_weyl_frame(rep, 0, b, psi))


def eigenvector_residual_sq(rep: HalvorsonRep, b: LabelLike, gamma: float, psi: Ket) -> float:
    """||W_orth(b) psi - exp(i b gamma) psi||^2, evaluated directly."""
    moved = apply_weyl_frame(rep, 0, b, psi)
    phase = cmath.exp(1j * float(as_label(b)) * gamma)
    return (moved - phase * psi).norm_sq()
