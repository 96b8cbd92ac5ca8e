"""Numerical laboratory for commutator-norm inequalities.

Matrix algebra over real, complex and quaternionic scalars with
Frobenius geometry, field-reduction embeddings, Clifford frames, the
DDVV/BW inequality engine with exact class constants, canonical
maximizers, and a stochastic extremal search.
"""

__version__ = "0.1.0"

from .clifford import (
    CliffordFrame,
    build_algebra,
    build_system,
    coefficient_vectors,
    irreducible_dimension,
    span_tuple,
    validate_frame,
)
from .ddvv import (
    BwReport,
    ConstantQuery,
    DdvvReport,
    bw_constant,
    bw_report,
    conjugate_mix,
    ddvv_lhs,
    ddvv_rhs,
    equality_residuals,
    evaluate,
    gram_bound,
    optimal_constant,
)
from .embeddings import (
    complex_parts,
    complexify,
    complexify_commutator_residual,
    from_complex_parts,
    realify,
    realify_commutator_residual,
)
from .extremal import (
    SearchConfig,
    SearchResult,
    canonical_maximizer,
    erdos_mordell_demo,
    lhs_gradient,
    random_matrix,
    random_tuple,
    random_unitary,
    ratio_gradient,
    search_max_ratio,
)
from .matrix import (
    Matrix,
    MatrixClass,
    MatrixTuple,
    ScalarKind,
    Structure,
    classify,
    commutator,
    frob_inner,
    hermitian_split,
    project_structure,
    structure_residual,
)
from .quaternion import Quaternion

__all__ = [
    "__version__",
    "Quaternion",
    "Matrix",
    "MatrixClass",
    "MatrixTuple",
    "ScalarKind",
    "Structure",
    "classify",
    "commutator",
    "frob_inner",
    "hermitian_split",
    "project_structure",
    "structure_residual",
    "realify",
    "complexify",
    "complex_parts",
    "from_complex_parts",
    "realify_commutator_residual",
    "complexify_commutator_residual",
    "CliffordFrame",
    "irreducible_dimension",
    "build_algebra",
    "build_system",
    "validate_frame",
    "span_tuple",
    "coefficient_vectors",
    "ConstantQuery",
    "optimal_constant",
    "bw_constant",
    "ddvv_lhs",
    "ddvv_rhs",
    "BwReport",
    "bw_report",
    "gram_bound",
    "conjugate_mix",
    "equality_residuals",
    "DdvvReport",
    "evaluate",
    "SearchConfig",
    "SearchResult",
    "search_max_ratio",
    "canonical_maximizer",
    "lhs_gradient",
    "ratio_gradient",
    "erdos_mordell_demo",
    "random_matrix",
    "random_tuple",
    "random_unitary",
]
