"""Exact index, Drazin and G-Drazin inverse computations over Q and GF(p)."""

from .drazin import CoreNilpotent, core_nilpotent, drazin_inverse
from .errors import (
    BudgetExceeded,
    CertificationFailure,
    DivisionByZero,
    FieldMismatch,
    GInverseError,
    InfiniteField,
    NotGDrazin,
    NotInvariant,
    NotNilpotent,
    ParseError,
    ShapeMismatch,
    Singular,
    StructureViolation,
)
from .field import GF, QQ, Field, Scalar, field_elements, parse_field, scalar_arith
from .gdrazin import (
    GDrazinFamily,
    GDrazinParams,
    GDrazinReport,
    GDrazinShape,
    build_JU_minus,
    count_gdrazin,
    format_params,
    gdrazin_from_params,
    param_shape,
    params_from_gdrazin,
    parse_params,
    sample_gdrazin,
    verify_gdrazin,
)
from .matrix import Matrix, image_basis, inverse, kernel_basis, rank, rref, solve
from .nilpotent import JordanChains, jordan_chains, jordan_matrix, shift_block
from .spectral import ASTDecomposition, IndexProfile, ast_decompose, index_profile
from .textio import format_matrix, parse_matrices, parse_matrix, read_matrix, write_matrix

__version__ = "0.1.0"
