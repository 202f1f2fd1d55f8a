"""Two-qubit toolkit: operator Schmidt decompositions, Bell-diagonal state
geometry on the tetrahedron, and twin observables with a brute-force oracle."""

__version__ = "0.1.0"

from .linalg import (
    HermitianCheck,
    NullspaceResult,
    RankDecisionError,
    eigh,
    hermitian_check,
    hs_inner,
    partial_trace,
    pauli,
    random_unitary,
    real_nullspace,
    svd,
    tensor,
)
from .schmidt import (
    AntiunitaryMap,
    OperatorSchmidt,
    PureSchmidt,
    RangeProjector,
    correlation_operator,
    operator_schmidt,
    pure_schmidt,
    pure_twin_partner,
    range_projector,
    reconstruct,
)
from .mds import (
    CanonicalForm,
    InternalConsistencyError,
    MdsClass,
    StateVerdict,
    bell_state,
    bell_t_vector,
    build_T,
    canonicalize,
    classify,
    is_mds,
    is_state,
    sample_tetrahedron,
    t_from_weights,
    validate_density_matrix,
    weights_from_t,
)
from .twins import (
    CorrelationReport,
    ObservablePair,
    TwinSpace,
    analytic_edge_twins,
    analytic_vertex_twins,
    bell_twin_partner,
    biorthogonal_separable_forms,
    distant_correlation,
    is_twin_pair,
    ppt_separable,
    simultaneous_twins,
    subspace_residual,
    twin_space,
)

__all__ = [
    "__version__",
    "HermitianCheck",
    "NullspaceResult",
    "RankDecisionError",
    "eigh",
    "hermitian_check",
    "hs_inner",
    "partial_trace",
    "pauli",
    "random_unitary",
    "real_nullspace",
    "svd",
    "tensor",
    "AntiunitaryMap",
    "OperatorSchmidt",
    "PureSchmidt",
    "RangeProjector",
    "correlation_operator",
    "operator_schmidt",
    "pure_schmidt",
    "pure_twin_partner",
    "range_projector",
    "reconstruct",
    "CanonicalForm",
    "InternalConsistencyError",
    "MdsClass",
    "StateVerdict",
    "bell_state",
    "bell_t_vector",
    "build_T",
    "canonicalize",
    "classify",
    "is_mds",
    "is_state",
    "sample_tetrahedron",
    "t_from_weights",
    "validate_density_matrix",
    "weights_from_t",
    "CorrelationReport",
    "ObservablePair",
    "TwinSpace",
    "analytic_edge_twins",
    "analytic_vertex_twins",
    "bell_twin_partner",
    "biorthogonal_separable_forms",
    "distant_correlation",
    "is_twin_pair",
    "ppt_separable",
    "simultaneous_twins",
    "subspace_residual",
    "twin_space",
]
