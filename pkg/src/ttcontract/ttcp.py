"""Contraction of two tensors through their tensor trains.

Both operands are permuted so the contracted mode comes first and
decomposed. Their first cores then meet in a single small matrix product,
K = A_x^T A_y, and the remaining cores form a train for a permuted copy of
the result.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import DimensionMismatchError
from .linalg import matmul_counted
from .tensor import (
    DenseTensor,
    Matrix,
    Shape,
    as_matrix,
    permute,
    tcp,
    tcp_shape,
)
from .tt import TTDecomposition, tt_reconstruct, tt_svd

log = logging.getLogger(__name__)


class ContractionSpec(NamedTuple):
    """Contract mode ``n`` of x with mode ``m`` of y (both 1-based)."""

    n: int
    m: int


@dataclass(frozen=True, eq=False)
class TTCPResult:
    """Result of a train contraction.

    ``merged`` represents the result with modes in the order
    (I_N, ..., I_{n+1}, I_{n-1}, ..., I_1, J_1, ..., J_{m-1}, J_{m+1}, ..., J_M);
    permuting by ``output_permutation`` gives the canonical order. ``dense``
    is only set when an order-1 operand made the train route inapplicable.
    """

    merged: Optional[TTDecomposition]
    kernel: Optional[Matrix]
    output_permutation: tuple[int, ...]
    z_shape: Shape
    kernel_macs: int = 0
    dense: Optional[DenseTensor] = None

    @property
    def merged_cores(self) -> tuple[DenseTensor, ...]:
        return self.merged.cores if self.merged is not None else ()


def _as_spec(spec) -> ContractionSpec:
    return spec if isinstance(spec, ContractionSpec) else ContractionSpec(*spec)


def lead_permutation(order: int, n: int) -> tuple[int, ...]:
    """Permutation bringing mode n to the front, others kept in order."""
    return (n,) + tuple(k for k in range(1, order + 1) if k != n)


def kernel_matrix(ax, ay) -> Matrix:
    return _kernel(ax, ay)[0]


def _kernel(ax, ay) -> tuple[Matrix, int]:
    ax, ay = as_matrix(ax), as_matrix(ay)
    if ax.rows != ay.rows:
        raise DimensionMismatchError(
            f"first cores disagree on the contracted dimension: {ax.rows} vs {ay.rows}"
        )
    return matmul_counted(ax.T, ay)


def _merge(tx: TTDecomposition, ty: TTDecomposition, k: np.ndarray) -> TTDecomposition:
    cores = []
    # x side: cores N..2, each with its two rank modes swapped
    for c in reversed(tx.cores[1:]):
        cores.append(DenseTensor.from_array(np.transpose(c.array, (2, 1, 0))))
    # K absorbed into y's second core, remaining y cores unchanged
    g = ty.cores[1]
    p1, dim, p2 = g.shape
    fused = k @ g.data.reshape(p1, dim * p2, order="F")
    cores.append(DenseTensor((k.shape[0], dim, p2), fused.reshape(-1, order="F")))
    cores.extend(ty.cores[2:])
    return TTDecomposition(tuple(cores), max(tx.epsilon, ty.epsilon))


def ttcp_from_tt(
    tx: TTDecomposition, ty: TTDecomposition, spec=None
) -> TTCPResult:
    """Contract two trains whose first modes are the contracted ones.

    ``spec`` is informational only: the trains are already of the permuted
    operands, so the free modes appear in their original relative order.
    """
    if tx.source_shape[0] != ty.source_shape[0]:
        raise DimensionMismatchError(
            f"contracted dimensions differ: {tx.source_shape[0]} vs {ty.source_shape[0]}"
        )
    if tx.order < 2 or ty.order < 2:
        raise DimensionMismatchError("both trains need at least two cores")
    k, macs = _kernel(tx.boundary_matrix("first"), ty.boundary_matrix("first"))
    merged = _merge(tx, ty, np.asarray(k.array))
    nx = tx.order - 1
    perm = tuple(range(nx, 0, -1)) + tuple(range(nx + 1, merged.order + 1))
    z_shape = tx.source_shape[1:] + ty.source_shape[1:]
    return TTCPResult(merged, k, perm, z_shape, macs)


def ttcp(
    x: DenseTensor,
    y: DenseTensor,
    spec: Union[ContractionSpec, tuple[int, int]],
    epsilon: float,
    method: str = "lapack",
) -> TTCPResult:
    """x ×_n^m y via tensor trains of the permuted operands."""
    n, m = _as_spec(spec)
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    z_shape = tcp_shape(x.shape, y.shape, n, m)
    if x.order < 2 or y.order < 2:
        log.info(
            "order-%d x order-%d operands: using the direct contraction",
            x.order, y.order,
        )
        z = tcp(x, y, n, m)
        return TTCPResult(None, None, tuple(range(1, z.order + 1)), z_shape, 0, z)
    xr = permute(x, lead_permutation(x.order, n))
    yr = permute(y, lead_permutation(y.order, m))
    tx = tt_svd(xr, epsilon, method=method)
    ty = tt_svd(yr, epsilon, method=method)
    return ttcp_from_tt(tx, ty, (n, m))


def to_dense(r: TTCPResult) -> DenseTensor:
    if r.dense is not None:
        return r.dense
    z = permute(tt_reconstruct(r.merged), r.output_permutation)
    if z.shape != r.z_shape:
        raise DimensionMismatchError(
            f"reconstructed shape {z.shape} differs from expected {r.z_shape}"
        )
    return z
