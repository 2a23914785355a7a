"""Multipartite reduction maps, tripartite Werner states, and related separability tests."""

from multired.distill import equivalence_check, copy_factorization_check, reduction_distillable, tensor_power_grouped
from multired.reduction import (
    DetectionResult,
    MarginalSet,
    antisymmetric_decomposition_check,
    apply_on_subset,
    choi_operator,
    choi_pt_identity_check,
    detect,
    generalized_reduction_map,
    map_from_choi,
    marginal_compatibility_check,
    plus_state_projector,
    product_extension_negativity,
)
from multired.tensor import (
    eigenvalues_hermitian,
    is_psd,
    min_eigenvalue,
    pad_with_identity,
    partial_trace,
    partial_transpose,
    permutation_operator,
    schmidt_decompose,
    tensor_product,
)

__version__ = "0.1.0"
