"""Binary-chain encoding of interval points onto spin-chain basis states.

A point x in [0, 1) is identified with its binary expansion; the first N
bits pick one of the 2^N computational basis states of a length-N chain.
Dyadic rationals use the terminating expansion (1/2 -> 100..., never
011...), which makes the encoding a well-defined bijection onto finite
bit strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from ..errors import OutOfRangeError
from ..hilbert import LabelLike, as_label


def chain_encode(x: LabelLike, num_sites: int) -> Tuple[int, ...]:
    """First num_sites bits of the binary expansion of x in [0, 1)."""
    x = as_label(x)
    if not (0 <= x < 1):
        raise OutOfRangeError(f"chain encoding needs x in [0, 1), got {x}")
    if num_sites < 1:
        raise ValueError("need at least one site")
    bits = []
    frac = x
    for _ in range(num_sites):
        frac *= 2
        if frac >= 1:
            bits.append(1)
            frac -= 1
        else:
            bits.append(0)
    return tuple(bits)


def chain_decode(bits: Sequence[int]) -> Fraction:
    """Dyadic rational with the given leading bits: sum b_i / 2^(i+1)."""
    value = Fraction(0)
    for i, bit in enumerate(bits):
        if bit not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {bit!r}")
        if bit:
            value += Fraction(1, 2 ** (i + 1))
    return value


def chain_basis_index(bits: Sequence[int]) -> int:
    """Computational basis index of the chain configuration (big-endian)."""
    index = 0
    for bit in bits:
        index = (index << 1) | int(bit)
    return index


def chain_bits_from_index(index: int, num_sites: int) -> Tuple[int, ...]:
    if not 0 <= index < 2**num_sites:
        raise OutOfRangeError(f"index {index} outside 0..{2 ** num_sites - 1}")
    return tuple((index >> (num_sites - 1 - i)) & 1 for i in range(num_sites))
