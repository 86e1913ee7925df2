"""Exact sparse linear algebra: Smith normal form, field ranks, chain complexes."""

from .field import image_basis, kernel_basis, rank
from .homology import (
    ChainComplex,
    ComplexError,
    ExactnessReport,
    HomologyGroup,
    cokernel_group,
    cokernel_projection,
    homology_at,
    is_exact,
    matrix_rank,
    universal_coefficient_dims,
)
from .kernels import BACKEND
from .snf import invariant_factors_dense, smith_normal_form
from .sparse import MatrixError, SparseMatrix

__all__ = [
    "BACKEND",
    "ChainComplex",
    "ComplexError",
    "ExactnessReport",
    "HomologyGroup",
    "MatrixError",
    "SparseMatrix",
    "cokernel_group",
    "cokernel_projection",
    "homology_at",
    "image_basis",
    "invariant_factors_dense",
    "is_exact",
    "kernel_basis",
    "matrix_rank",
    "rank",
    "smith_normal_form",
    "universal_coefficient_dims",
]
