"""Core complex-Hermitian linear algebra for the divergence library."""

from .core import (
    HolderEqualityResult,
    OrderViolationError,
    PsdElement,
    as_matrix,
    contraction_factor,
    hermitize,
    holder_equality_check,
    kosaki_embed,
    mat_pow,
    operator_norm,
    polar_decompose,
    schatten_norm,
    singular_values,
    support_cutoff,
    support_projection,
    support_rank,
    trace_power,
)
from .extended import ExtendedNonneg
from .jacobi import COMPILED, SpectralDecomposition, backend_name, eigh

__all__ = [
    "COMPILED",
    "ExtendedNonneg",
    "HolderEqualityResult",
    "OrderViolationError",
    "PsdElement",
    "SpectralDecomposition",
    "as_matrix",
    "backend_name",
    "contraction_factor",
    "eigh",
    "hermitize",
    "holder_equality_check",
    "kosaki_embed",
    "mat_pow",
    "operator_norm",
    "polar_decompose",
    "schatten_norm",
    "singular_values",
    "support_cutoff",
    "support_projection",
    "support_rank",
    "trace_power",
]
