"""Exact operator algebra over Grassmann variables: matrices, gamma matrices
and first-order mixing transformations."""

from .scalars import JetScalar, QQi, as_jet
from .grassmann import (
    MAX_GENERATORS,
    AlgebraSignature,
    SignatureError,
    State,
    conjugate_state,
    derivative,
    indices,
    left_mult_theta,
    mono_mul,
    monomial,
    rank,
    rank_project_oracle,
    wedge,
)
from .operators import (
    Operator,
    Word,
    op_add,
    op_apply,
    op_compose,
    op_conjugate,
    op_generator_deriv,
    op_generator_theta,
    op_identity,
    op_scale,
    op_transpose,
    op_zero,
    projector,
)
from .matrix_iso import (
    MatrixDense,
    NotAMatrixError,
    embed_column,
    embed_matrix,
    embed_row,
    extract_matrix,
    generalized_matrix,
)
from .clifford import (
    AnticommutationReport,
    GammaRep,
    check_anticommutation,
    embed_gamma,
    pauli_rep,
    primed_unit,
    vector_coords,
)
from .susy import (
    MixParams,
    Superfield,
    delta_coords,
    delta_coords_closed_form,
    make_params,
    supertranslate_superfield,
    transform_coefficients,
    transform_derivatives,
    transform_generators,
)

__version__ = "0.1.0"
