import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepwitness import (
    EmptyStateError,
    Ket,
    as_label,
    bi_characteristic_state,
    characteristic_state,
    inner_product,
    tensor_product,
)

from conftest import rand_fraction, rand_ket

SQRT_HALF = 1.0 / math.sqrt(2.0)

small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
big_fractions = st.fractions(
    min_value=-(2**256), max_value=2**256, max_denominator=2**64
)


class TestLabels:
    def test_coercion(self):
        assert as_label(Fraction(3, 7)) == Fraction(3, 7)
        assert as_label(5) == Fraction(5)
        assert as_label("22/7") == Fraction(22, 7)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_label(0.5)

    @given(big_fractions, big_fractions)
    def test_arithmetic_exact_with_huge_numerators(self, a, b):
        assert (a + b) - b == a
        assert a - a == 0

    @given(small_fractions)
    def test_canonical_form(self, a):
        assert math.gcd(a.numerator, a.denominator) == 1
        assert a.denominator > 0


class TestKet:
    def test_zero_amplitudes_dropped(self):
        k = Ket({Fraction(0): 0j, Fraction(1): 1.0})
        assert k.support == {Fraction(1)}

    def test_duplicate_keys_accumulate(self):
        k = Ket([(Fraction(2), 1.0), (Fraction(2), -1.0)])
        assert not k

    def test_exact_cancellation_in_sums(self):
        u = Ket({Fraction(0): 0.5 + 0.25j, Fraction(1, 3): -2.0})
        assert not (u - u)
        assert (u + (-1.0) * u).support == frozenset()

    def test_support_of_sum_within_union(self, rng):
        for _ in range(50):
            u = rand_ket(rng, int(rng.integers(1, 6)))
            v = rand_ket(rng, int(rng.integers(1, 6)))
            assert (u + v).support <= u.support | v.support

    def test_norm(self):
        k = Ket({Fraction(0): 3.0, Fraction(1): 4.0j})
        assert k.norm_sq() == pytest.approx(25.0, abs=0)
        assert k.norm() == pytest.approx(5.0, abs=0)

    def test_normalize_zero_raises(self):
        with pytest.raises(EmptyStateError):
            Ket().normalized()

    def test_pruned_threshold(self):
        k = Ket({Fraction(0): 1e-14, Fraction(1): 1.0})
        assert k.pruned().support == k.support
        assert k.pruned(1e-12).support == {Fraction(1)}

    def test_scalar_algebra(self):
        k = characteristic_state(0) + characteristic_state(1)
        assert (k / 2).amplitude(Fraction(0)) == 0.5
        assert (0 * k).support == frozenset()


class TestInnerProduct:
    def test_orthonormal_basis_self_overlap(self):
        chi = characteristic_state(Fraction(1, 2))
        assert inner_product(chi, chi) == 1

    def test_characteristic_state_examples(self):
        assert characteristic_state(0).support == {Fraction(0)}
        assert characteristic_state(0).norm() == 1.0
        assert characteristic_state(Fraction(22, 7)).support == {Fraction(22, 7)}

    def test_disjoint_support_is_exactly_zero(self):
        assert inner_product(characteristic_state(Fraction(1, 2)), characteristic_state(Fraction(1, 3))) == 0

    def test_hand_oracle_plus_minus(self):
        plus = (characteristic_state(0) + characteristic_state(1)) * SQRT_HALF
        minus = (characteristic_state(0) - characteristic_state(1)) * SQRT_HALF
        # direct finite sum: (1/2) - (1/2) = 0 with identical float terms
        assert inner_product(plus, minus) == 0

    def test_conjugate_linear_first_argument(self):
        u = Ket({Fraction(0): 1.0 + 2.0j})
        v = Ket({Fraction(0): 0.5 - 1.0j})
        alpha = 0.3 + 0.7j
        assert inner_product(alpha * u, v) == pytest.approx(
            alpha.conjugate() * inner_product(u, v), abs=1e-15
        )

    def test_delta_on_random_rational_pairs(self, rng):
        for _ in range(100):
            x, y = rand_fraction(rng, 10**6, 10**4), rand_fraction(rng, 10**6, 10**4)
            value = inner_product(characteristic_state(x), characteristic_state(y))
            assert value == (1 if x == y else 0)

    def test_cauchy_schwarz_random_sparse(self, rng):
        for _ in range(200):
            u = rand_ket(rng, int(rng.integers(1, 8)))
            v = rand_ket(rng, int(rng.integers(1, 8)))
            assert abs(inner_product(u, v)) <= u.norm() * v.norm() + 1e-12


class TestTensorProduct:
    def test_single_key(self):
        prod = tensor_product(characteristic_state(0), characteristic_state(0))
        assert prod.support == {(Fraction(0), Fraction(0))}
        assert prod.amplitude((Fraction(0), Fraction(0))) == 1

    def test_bilinearity_example(self):
        left = (characteristic_state(0) + characteristic_state(1)) * SQRT_HALF
        prod = tensor_product(left, characteristic_state(2))
        assert prod.support == {(Fraction(0), Fraction(2)), (Fraction(1), Fraction(2))}
        for key in prod.support:
            assert prod.amplitude(key) == pytest.approx(SQRT_HALF, abs=0)

    def test_norm_multiplicative_against_brute_force(self, rng):
        for _ in range(30):
            u = rand_ket(rng, int(rng.integers(1, 6))) * float(rng.uniform(0.2, 3.0))
            v = rand_ket(rng, int(rng.integers(1, 6))) * float(rng.uniform(0.2, 3.0))
            prod = tensor_product(u, v)
            # independent oracle: explicit double sum over all key pairs
            oracle = sum(
                abs(au) ** 2 * abs(av) ** 2 for _, au in u.items() for _, av in v.items()
            )
            assert prod.norm_sq() == pytest.approx(oracle, rel=1e-12)
            assert prod.norm() == pytest.approx(u.norm() * v.norm(), rel=1e-12)

    def test_support_is_cartesian_product(self, rng):
        u = rand_ket(rng, 3)
        v = rand_ket(rng, 4)
        expected = {(ku, kv) for ku in u.support for kv in v.support}
        assert tensor_product(u, v).support == expected

    def test_bi_characteristic(self):
        assert bi_characteristic_state("22/7", 1).support == {(Fraction(22, 7), Fraction(1))}
