"""Desk-scale toolkit for Hilbert-space separability phenomena.

Exact sparse states over rational labels, Weyl commutation-relation
representations with an exact eigenbasis, mechanized non-existence
witnesses for momentum eigenvectors and for the EPR vector, and a
prepare-and-measure guessing game with its dimension-witness bound.
"""

from .epr import (
    BipartiteRep,
    EprTarget,
    SumDifferenceRep,
    apply_bipartite,
    bipartite_position_rep,
    epr_condition_residual,
    find_epr_violation,
    make_gns_sum_difference_state,
)
from .errors import (
    ConfigError,
    DuplicateInputError,
    EmptyStateError,
    InvalidStrategyError,
    NotNormalizedError,
    OutOfRangeError,
    SepwitnessError,
)
from .hilbert import (
    BiKet,
    Ket,
    Label,
    as_label,
    bi_characteristic_state,
    characteristic_state,
    inner_product,
    tensor_product,
)
from .weyl import (
    AffinePhase,
    HalvorsonRep,
    WeylParams,
    apply_weyl,
    apply_weyl_frame,
    eigenbasis_overlap,
    eigenvector_residual_sq,
    find_momentum_eigenvector_violation,
    momentum_rep,
    orthogonal_overlap,
    position_rep,
    pythagorean_rep,
    rep_from_direction,
    rotated_rep,
)

__version__ = "0.1.0"
