"""Bipartite Weyl representations and the EPR defining conditions.

A bipartite rep pairs two single-party representations: Alice's operators
touch only the left key of a pair-keyed vector, Bob's only the right key.
The two EPR conditions are, for target eigenvalues (x, p)::

    (i)   W_A(a, 0) (x) W_B(a, 0)  psi = exp(i a x) psi   for all a
    (ii)  W_A(0, b) (x) W_B(0, -b) psi = exp(i b p) psi   for all b

The witness finder turns the countability argument against such a vector
into finite arithmetic: the left-key support induces a finite set of
admissible eigenphase differences, and any joint displacement whose
Alice-frame shift avoids that set moves the state onto a disjoint support,
forcing the squared residual of the combined condition to exactly 2.

For contrast, the sum/difference construction represents the same
eigenvalue data trivially -- as a product vector over the sum and
difference degrees of freedom -- at the price of not being bipartite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Set, Tuple

from .errors import EmptyStateError, NotNormalizedError
from .hilbert import BiKet, Ket, LabelLike, as_label
from .weyl import HalvorsonRep, WeylParams, cis, position_rep


@dataclass(frozen=True)
class EprTarget:
    """Target eigenvalues: x for the position sum, p for the momentum difference."""

    x: Fraction
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_label(self.x))
        object.__setattr__(self, "p", as_label(self.p))


@dataclass(frozen=True)
class BipartiteRep:
    """Tensor-product representation: factorwise single-party actions."""

    rep_a: HalvorsonRep
    rep_b: HalvorsonRep

    @property
    def bipartite(self) -> bool:
        return True


def bipartite_position_rep() -> BipartiteRep:
    return BipartiteRep(position_rep(), position_rep())


def apply_bipartite(
    rep: BipartiteRep, params_a: WeylParams, params_b: WeylParams, psi: BiKet
) -> BiKet:
    """Act with W_A(params_a) on left keys and W_B(params_b) on right keys."""
    ra, ta = rep.rep_a.frame_coordinates(params_a)
    rb, tb = rep.rep_b.frame_coordinates(params_b)
    phi_a, phi_b = rep.rep_a.phi, rep.rep_b.phi
    shift_a = phi_a.displacement(ta)
    shift_b = phi_b.displacement(tb)
    base = ra * ta / 2 + rb * tb / 2
    out = Ket.__new__(Ket)
    out._amp = {
        (lam + shift_a, mu + shift_b): amp * cis(base + ra * phi_a(lam) + rb * phi_b(mu))
        for (lam, mu), amp in psi.items()
    }
    return out


def epr_condition_residual(
    rep: BipartiteRep, target: EprTarget, a: LabelLike, b: LabelLike, psi: BiKet
) -> float:
    """Squared norm of the combined-condition residual at displacements (a, b).

    Applies the condition-(ii) operator followed by the condition-(i)
    operator and subtracts the target phase exp(i(ax + bp)) psi.  Zero for
    all (a, b) exactly when psi satisfies both EPR conditions.  Setting
    b = 0 probes condition (i) alone at a; a = 0 probes condition (ii).
    """
    a = as_label(a)
    b = as_label(b)
    if abs(psi.norm() - 1.0) > 1e-9:
        raise NotNormalizedError(f"candidate norm {psi.norm()!r} deviates from 1 beyond 1e-9")
    moved = apply_bipartite(rep, WeylParams(0, b), WeylParams(0, -b), psi)
    moved = apply_bipartite(rep, WeylParams(a, 0), WeylParams(a, 0), moved)
    return (moved - cis(a * target.x + b * target.p) * psi).norm_sq()


def left_support(psi: BiKet) -> Set:
    return {pair[0] for pair in psi.support}


def find_epr_violation(
    rep: BipartiteRep, target: EprTarget, psi: BiKet
) -> Tuple[Fraction, Fraction, float]:
    """Displacements (a, b) falsifying the combined EPR condition for psi.

    Requires rep_a to have an exact diagonal direction (the hypothesis that
    some phase-space operator on Alice's side has an eigenbasis).  The
    chosen (a, b) lies along the direction orthogonal to Alice's diagonal
    one, with frame shift equal to the smallest positive integer outside
    the finite difference set {phi_A(nu) - phi_A(lam)} of the left-key
    support.  Bob's side is never inspected.  The reported residual is
    exactly 2: the displaced state is supported disjointly from psi, so
    the overlap term vanishes identically for every target phase.
    """
    if not psi:
        raise EmptyStateError("the zero vector admits no violation witness")
    rep_a = rep.rep_a
    if not rep_a.has_exact_direction:
        raise ValueError("find_epr_violation needs an exact diagonal direction on Alice's side")
    phi = rep_a.phi
    values = [phi(lam) for lam in left_support(psi)]
    diffs = {m - l for m in values for l in values}
    r = 1
    while Fraction(r) in diffs:
        r += 1
    c, s = rep_a.cos_theta, rep_a.sin_theta
    return -s * r, c * r, 2.0


@dataclass(frozen=True)
class SumDifferenceRep:
    """Trivial representation over the sum/difference degrees of freedom.

    The first key of a state carries the eigenvalue of the position sum,
    the second the eigenvalue of the momentum difference.  Both joint
    condition operators act diagonally here, but neither factors through
    the Alice/Bob system bipartition, hence ``bipartite`` is False.
    """

    @property
    def bipartite(self) -> bool:
        return False

    def apply_condition_one(self, a: LabelLike, state: BiKet) -> BiKet:
        """Joint operator of condition (i): multiplies key (u, v) by exp(i a u)."""
        a = as_label(a)
        out = Ket.__new__(Ket)
        out._amp = {key: amp * cis(a * key[0]) for key, amp in state.items()}
        return out

    def apply_condition_two(self, b: LabelLike, state: BiKet) -> BiKet:
        """Joint operator of condition (ii): multiplies key (u, v) by exp(i b v)."""
        b = as_label(b)
        out = Ket.__new__(Ket)
        out._amp = {key: amp * cis(b * key[1]) for key, amp in state.items()}
        return out

    def condition_residuals(
        self, target: EprTarget, a: LabelLike, b: LabelLike, state: BiKet
    ) -> Tuple[float, float]:
        """Squared residuals of conditions (i) at a and (ii) at b."""
        a = as_label(a)
        b = as_label(b)
        res_one = (self.apply_condition_one(a, state) - cis(a * target.x) * state).norm_sq()
        res_two = (self.apply_condition_two(b, state) - cis(b * target.p) * state).norm_sq()
        return res_one, res_two


def make_gns_sum_difference_state(x: LabelLike, p: LabelLike) -> Tuple[BiKet, SumDifferenceRep]:
    """Product vector chi_x (x) chi_p in the sum/difference representation.

    Satisfies both EPR conditions with target (x, p) at zero residual for
    every displacement; included as the contrast case showing the
    obstruction is about bipartite structure, not eigenvalue conditions.
    """
    state = Ket({(as_label(x), as_label(p)): 1.0 + 0j})
    return state, SumDifferenceRep()
