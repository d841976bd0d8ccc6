import cmath
import math
from fractions import Fraction

import pytest

from sepwitness import (
    BipartiteRep,
    EmptyStateError,
    EprTarget,
    Ket,
    NotNormalizedError,
    WeylParams,
    apply_bipartite,
    bi_characteristic_state,
    epr_condition_residual,
    find_epr_violation,
    inner_product,
    make_gns_sum_difference_state,
    momentum_rep,
    position_rep,
    pythagorean_rep,
    rotated_rep,
)
from sepwitness.epr import bipartite_position_rep, left_support

from conftest import diagonal_biket, max_amp_diff, rand_biket, rand_fraction

ZERO_TARGET = EprTarget(0, 0)


def residual_by_overlap_formula(rep, target, a, b, psi):
    """Independent oracle: ||U psi - c psi||^2 = 2 - 2 Re(conj(c) <psi, U psi>)."""
    moved = apply_bipartite(rep, WeylParams(0, b), WeylParams(0, -b), psi)
    moved = apply_bipartite(rep, WeylParams(a, 0), WeylParams(a, 0), moved)
    phase = cmath.exp(1j * float(Fraction(a) * target.x + Fraction(b) * target.p))
    overlap = inner_product(psi, moved)
    return moved.norm_sq() + psi.norm_sq() - 2.0 * (phase.conjugate() * overlap).real


class TestApplyBipartite:
    def test_pure_shifts(self):
        out = apply_bipartite(
            bipartite_position_rep(), WeylParams(0, 1), WeylParams(0, -1),
            bi_characteristic_state(0, 0),
        )
        assert out.support == {(Fraction(1), Fraction(-1))}
        assert out.amplitude((Fraction(1), Fraction(-1))) == 1.0

    def test_diagonal_joint_phase(self):
        lam, mu, a = Fraction(2, 3), Fraction(-1, 5), Fraction(3, 2)
        out = apply_bipartite(
            bipartite_position_rep(), WeylParams(a, 0), WeylParams(a, 0),
            bi_characteristic_state(lam, mu),
        )
        assert out.support == {(lam, mu)}
        assert out.amplitude((lam, mu)) == pytest.approx(
            cmath.exp(1j * float(a * (lam + mu))), abs=1e-14
        )

    def test_factorwise_composition(self, rng):
        rep = bipartite_position_rep()
        identity = WeylParams(0, 0)
        for _ in range(30):
            psi = rand_biket(rng, int(rng.integers(1, 7)))
            pa = WeylParams(rand_fraction(rng, 6), rand_fraction(rng, 6))
            pb = WeylParams(rand_fraction(rng, 6), rand_fraction(rng, 6))
            joint = apply_bipartite(rep, pa, pb, psi)
            staged = apply_bipartite(rep, pa, identity, apply_bipartite(rep, identity, pb, psi))
            assert joint.support == staged.support
            assert max_amp_diff(joint, staged) <= 1e-12

    def test_norm_preserved(self, rng):
        rep = BipartiteRep(pythagorean_rep(), position_rep())
        psi = rand_biket(rng, 5)
        out = apply_bipartite(rep, WeylParams(1, 2), WeylParams(Fraction(1, 3), -1), psi)
        assert out.norm() == pytest.approx(1.0, abs=1e-12)


class TestConditionResidual:
    def test_condition_one_exact_on_product_state(self):
        psi = bi_characteristic_state(0, 0)
        for a in (Fraction(1), Fraction(-7, 3), Fraction(22, 7)):
            assert epr_condition_residual(bipartite_position_rep(), ZERO_TARGET, a, 0, psi) == 0

    def test_condition_two_disjoint_shift_gives_two(self):
        psi = bi_characteristic_state(0, 0)
        for p in (Fraction(0), Fraction(5, 2)):
            target = EprTarget(0, p)
            res = epr_condition_residual(bipartite_position_rep(), target, 0, 1, psi)
            # hand computation: 2 - 2 Re(conj(phase) * 0) = 2
            assert res == pytest.approx(2.0, abs=1e-12)

    def test_uniform_diagonal_state(self, rng):
        amp = 1.0 / math.sqrt(3.0)
        psi = Ket({(Fraction(k), Fraction(-k)): amp for k in range(3)})
        rep = bipartite_position_rep()
        for _ in range(20):
            a = rand_fraction(rng, 8)
            assert epr_condition_residual(rep, ZERO_TARGET, a, 0, psi) == 0
        assert epr_condition_residual(rep, ZERO_TARGET, 0, 10, psi) == pytest.approx(
            2.0, abs=1e-12
        )

    def test_matches_overlap_formula_oracle(self, rng):
        rep = bipartite_position_rep()
        for _ in range(30):
            psi = rand_biket(rng, int(rng.integers(1, 7)))
            a, b = rand_fraction(rng, 5), rand_fraction(rng, 5)
            target = EprTarget(rand_fraction(rng, 3), rand_fraction(rng, 3))
            direct = epr_condition_residual(rep, target, a, b, psi)
            assert direct == pytest.approx(
                residual_by_overlap_formula(rep, target, a, b, psi), abs=1e-12
            )

    def test_general_targets_reinstate_phases(self):
        # a diagonal-sum state with x != 0 passes condition (i) only at its own x
        psi = bi_characteristic_state(Fraction(3), Fraction(-2))  # sum = 1
        rep = bipartite_position_rep()
        assert epr_condition_residual(rep, EprTarget(1, 0), 2, 0, psi) == 0
        assert epr_condition_residual(rep, EprTarget(0, 0), 2, 0, psi) > 1e-3

    def test_not_normalized_rejected(self):
        psi = Ket({(Fraction(0), Fraction(0)): 1.1})
        with pytest.raises(NotNormalizedError):
            epr_condition_residual(bipartite_position_rep(), ZERO_TARGET, 1, 1, psi)


class TestFindViolation:
    def test_product_state_witness(self):
        a, b, res = find_epr_violation(bipartite_position_rep(), ZERO_TARGET, bi_characteristic_state(0, 0))
        assert (a, b) == (Fraction(0), Fraction(1))
        assert res == 2.0

    def test_truncated_epr_state(self):
        amp = 1.0 / math.sqrt(2.0)
        psi = Ket({(Fraction(0), Fraction(0)): amp, (Fraction(1), Fraction(-1)): amp})
        a, b, res = find_epr_violation(bipartite_position_rep(), ZERO_TARGET, psi)
        assert b == 2  # difference set is {-1, 0, 1}
        assert epr_condition_residual(bipartite_position_rep(), ZERO_TARGET, a, b, psi) == pytest.approx(
            2.0, abs=1e-12
        )

    def test_momentum_type_alice_targets_a_direction(self):
        rep = BipartiteRep(momentum_rep(), position_rep())
        amp = 1.0 / math.sqrt(2.0)
        psi = Ket({(Fraction(0), Fraction(0)): amp, (Fraction(1), Fraction(-1)): amp})
        a, b, _ = find_epr_violation(rep, ZERO_TARGET, psi)
        assert b == 0 and a == -2
        assert epr_condition_residual(rep, ZERO_TARGET, a, b, psi) == pytest.approx(2.0, abs=1e-12)

    def test_soundness_on_random_candidates(self, rng):
        reps = [
            bipartite_position_rep(),
            BipartiteRep(momentum_rep(), position_rep()),
            BipartiteRep(pythagorean_rep(), position_rep()),
        ]
        for rep in reps:
            for k in range(60):
                engineered = k % 3 == 0
                psi = (
                    diagonal_biket(rng, int(rng.integers(1, 6)), Fraction(0))
                    if engineered
                    else rand_biket(rng, int(rng.integers(1, 7)))
                )
                a, b, claimed = find_epr_violation(rep, ZERO_TARGET, psi)
                assert epr_condition_residual(rep, ZERO_TARGET, a, b, psi) == pytest.approx(
                    claimed, abs=1e-12
                )

    def test_bob_side_never_inspected(self, rng):
        # two candidates differing only in right keys get identical witnesses
        rep = bipartite_position_rep()
        lefts = [Fraction(0), Fraction(1, 2), Fraction(3)]
        amp = 1.0 / math.sqrt(3.0)
        psi1 = Ket({(l, Fraction(7)): amp for l in lefts})
        psi2 = Ket({(l, Fraction(-13, 5) + l): amp for l in lefts})
        assert find_epr_violation(rep, ZERO_TARGET, psi1) == find_epr_violation(
            rep, ZERO_TARGET, psi2
        )

    def test_zero_vector_rejected(self):
        with pytest.raises(EmptyStateError):
            find_epr_violation(bipartite_position_rep(), ZERO_TARGET, Ket())

    def test_frame_only_alice_rep_rejected(self):
        rep = BipartiteRep(rotated_rep(0.7), position_rep())
        with pytest.raises(ValueError):
            find_epr_violation(rep, ZERO_TARGET, bi_characteristic_state(0, 0))

    def test_left_support_helper(self):
        psi = Ket({(Fraction(0), Fraction(1)): 0.6, (Fraction(0), Fraction(2)): 0.8})
        assert left_support(psi) == {Fraction(0)}


class TestConditionOneCharacterization:
    def test_diagonal_support_iff_zero_residual(self, rng):
        rep = bipartite_position_rep()
        x = Fraction(2)
        target = EprTarget(x, 0)
        good = diagonal_biket(rng, 4, x)
        assert all(lam + mu == x for lam, mu in good.support)
        for _ in range(10):
            assert epr_condition_residual(rep, target, rand_fraction(rng, 8), 0, good) == 0
        # one off-diagonal key breaks the condition at a = 1 already
        bad = Ket(
            list(good.items())[:-1]
            + [((Fraction(100), Fraction(0)), list(good.items())[-1][1])]
        ).normalized()
        assert any(lam + mu != x for lam, mu in bad.support)
        assert epr_condition_residual(rep, target, 1, 0, bad) > 1e-6


class TestGnsContrast:
    def test_zero_residuals_for_sampled_displacements(self, rng):
        for x, p in ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))):
            state, rep = make_gns_sum_difference_state(x, p)
            target = EprTarget(x, p)
            for _ in range(100):
                a, b = rand_fraction(rng, 8), rand_fraction(rng, 8)
                res_one, res_two = rep.condition_residuals(target, a, b, state)
                assert res_one == 0
                assert res_two == 0

    def test_condition_one_phase_example(self):
        state, rep = make_gns_sum_difference_state(1, 2)
        out = rep.apply_condition_one(3, state)
        assert out.amplitude((Fraction(1), Fraction(2))) == cmath.exp(3j)

    def test_rep_flags(self):
        _, gns = make_gns_sum_difference_state(0, 0)
        assert gns.bipartite is False
        assert bipartite_position_rep().bipartite is True
