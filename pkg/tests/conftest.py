"""Shared helpers: seeded exact-rational data generators for the tests.

These are deliberately independent of the generators the CLI experiments
use, so test data construction never shares a code path with the code
under test.
"""

from fractions import Fraction

import numpy as np
import pytest

from sepwitness import Ket


def rand_fraction(rng: np.random.Generator, max_num: int = 20, max_den: int = 12) -> Fraction:
    return Fraction(int(rng.integers(-max_num, max_num + 1)), int(rng.integers(1, max_den + 1)))


def rand_distinct_fractions(rng, count, max_num=20, max_den=12):
    out, seen = [], set()
    while len(out) < count:
        f = rand_fraction(rng, max_num, max_den)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def rand_ket(rng: np.random.Generator, size: int, max_num: int = 20, max_den: int = 12) -> Ket:
    labels = rand_distinct_fractions(rng, size, max_num, max_den)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Ket(zip(labels, amps)).normalized()


def rand_biket(rng: np.random.Generator, size: int, max_num: int = 12, max_den: int = 8) -> Ket:
    keys, seen = [], set()
    while len(keys) < size:
        pair = (rand_fraction(rng, max_num, max_den), rand_fraction(rng, max_num, max_den))
        if pair not in seen:
            seen.add(pair)
            keys.append(pair)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Ket(zip(keys, amps)).normalized()


def diagonal_biket(rng: np.random.Generator, size: int, x: Fraction) -> Ket:
    """Support on pairs (lam, x - lam): satisfies EPR condition (i) at target x."""
    lefts = rand_distinct_fractions(rng, size, 12, 8)
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return Ket(((lam, x - lam), a) for lam, a in zip(lefts, amps)).normalized()


def max_amp_diff(u: Ket, v: Ket) -> float:
    d = u - v
    return max((abs(a) for _, a in d.items()), default=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
