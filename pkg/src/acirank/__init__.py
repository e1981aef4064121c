"""Rank analysis and block decompositions of ACI-matrices.

An ACI-matrix has affine entries in which no indeterminate is shared by two
columns.  The package computes maxRank and Rank sets, factor and semifactor
sets, WST-decompositions and constantRank canonical forms.
"""

from .aci import (
    AciMatrix,
    AffineForm,
    ColumnSelector,
    Completion,
    Indeterminate,
    Shape,
    ShapeTag,
    ZeroBlock,
    classify_zero_block,
    complete,
    compose_block,
    left_multiply,
    permute_columns,
    row_coefficient_matrix,
    rows_linearly_independent,
    shape_of,
    validate_aci,
)
from .constant_rank import CanonicalForm, canonical_form, is_constant_rank, verify_canonical_form
from .decomposition import (
    FactorLattice,
    FDecomposition,
    SweepResult,
    WstDecomposition,
    enumerate_sets,
    is_factor_set,
    is_semifactor_set,
    sweep_bottom_to_top,
    verify_wst,
    wst_decompose,
    zero_block_witness,
)
from .errors import *  # noqa: F401,F403
from .parsing import MatrixDocument, load_matrix, matrix, parse_document, parse_entry, print_entry
from .rank import (
    DEFAULT_BUDGET,
    RankReport,
    SearchBudget,
    is_FCmR,
    is_FmR,
    is_FRmR,
    max_rank,
    min_rank_exhaustive,
    rank_report,
    rank_set_exhaustive,
    symbolic_rank,
)
from .scalars import FieldSpec, Scalar, enumerate_elements, scalar_arith

__version__ = "0.1.0"
