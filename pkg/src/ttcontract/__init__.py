"""Tensor contraction through tensor trains, with a brute-force reference."""

from .complexity import speedup_ratio, tcp_ops, tcp_ops_uniform, ttcp_ops, ttd_ops
from .errors import (
    DimensionMismatchError,
    FormatError,
    IndexOutOfBoundsError,
    NumericalError,
    ShapeError,
    TensorError,
)
from .linalg import SVDResult, matmul, svd, truncated_svd
from .tensor import (
    DenseTensor,
    Matrix,
    flatten,
    fold_vector,
    frobenius_norm,
    linear_index,
    mode_n_product,
    multi_index,
    permute,
    random_gaussian,
    refold_mode_n,
    stack,
    tcp,
    unfold,
)
from .tt import TTDecomposition, tt_reconstruct, tt_relative_error, tt_svd
from .ttcp import ContractionSpec, TTCPResult, kernel_matrix, to_dense, ttcp, ttcp_from_tt

__version__ = "0.1.0"
