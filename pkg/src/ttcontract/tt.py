"""Tensor-train decomposition by sequential truncated SVDs, and its reconstruction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ShapeError
from .linalg import truncated_svd
from .tensor import DenseTensor, Matrix, Shape, as_shape, frobenius_norm


@dataclass(frozen=True, eq=False)
class TTDecomposition:
    """Chain of order-3 cores; core n has shape (R_{n-1}, I_n, R_n).

    Boundary ranks are 1. The chain is validated on construction.
    """

    cores: tuple[DenseTensor, ...]
    epsilon: float = 0.0

    def __post_init__(self):
        cores = tuple(self.cores)
        if not cores:
            raise ShapeError("a tensor train needs at least one core")
        for k, c in enumerate(cores):
            if c.order != 3:
                raise ShapeError(f"core {k + 1} has order {c.order}, expected 3")
        if cores[0].shape[0] != 1 or cores[-1].shape[2] != 1:
            raise ShapeError(
                f"boundary ranks must be 1, got {cores[0].shape[0]} and {cores[-1].shape[2]}"
            )
        for k in range(len(cores) - 1):
            if cores[k].shape[2] != cores[k + 1].shape[0]:
                raise DimensionMismatchError(
                    f"rank mismatch between core {k + 1} {cores[k].shape} "
                    f"and core {k + 2} {cores[k + 1].shape}"
                )
        object.__setattr__(self, "cores", cores)

    @property
    def order(self) -> int:
        return len(self.cores)

    @property
    def ranks(self) -> tuple[int, ...]:
        return (1,) + tuple(c.shape[2] for c in self.cores)

    @property
    def source_shape(self) -> Shape:
        return tuple(c.shape[1] for c in self.cores)

    @property
    def num_params(self) -> int:
        return sum(c.size for c in self.cores)

    def boundary_matrix(self, which: str = "first") -> Matrix:
        """First core as an I_1 x R_1 matrix, or last core as R_{N-1} x I_N."""
        if which == "first":
            c = self.cores[0]
            return Matrix((c.shape[1], c.shape[2]), c.data)
        if which == "last":
            c = self.cores[-1]
            return Matrix((c.shape[0], c.shape[1]), c.data)
        raise ValueError(f"which must be 'first' or 'last', got {which!r}")

    def satisfies_rank_bound(self) -> bool:
        """R_n <= min(R_{n-1} I_n, I_{n+1} ... I_N), as any SVD sweep guarantees."""
        r, dims = self.ranks, self.source_shape
        return all(
            r[n] <= min(r[n - 1] * dims[n - 1], math.prod(dims[n:]))
            for n in range(1, len(dims))
        )


def tt_svd(x: DenseTensor, epsilon: float, method: str = "lapack") -> TTDecomposition:
    """Decompose ``x`` so that ||x - tt||_F <= epsilon * ||x||_F.

    Each of the N-1 truncated SVDs may discard at most
    epsilon * ||x||_F / sqrt(N-1) in Frobenius norm.
    """
    if x.order < 2:
        raise ShapeError(f"tt_svd needs a tensor of order >= 2, got order {x.order}")
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    dims = x.shape
    n_modes = len(dims)
    delta = epsilon / math.sqrt(n_modes - 1) * frobenius_norm(x)

    cores = []
    rank = 1
    z = x.data.reshape(dims[0], -1, order="F")
    for n in range(n_modes - 1):
        res = truncated_svd(z, delta, method=method)
        cores.append(DenseTensor((rank, dims[n], res.rank), res.u.data))
        sv = res.sigma[:, None] * res.vt.array
        rank = res.rank
        z = sv.reshape(rank * dims[n + 1], -1, order="F")
    cores.append(DenseTensor((rank, dims[-1], 1), z.reshape(-1, order="F")))
    return TTDecomposition(tuple(cores), float(epsilon))


def tt_reconstruct(t: TTDecomposition) -> DenseTensor:
    """Contract the chain left to right back into a dense tensor."""
    first = t.cores[0]
    w = first.data.reshape(first.shape[1], first.shape[2], order="F")
    for c in t.cores[1:]:
        r_prev, dim, r_next = c.shape
        w = w @ c.data.reshape(r_prev, dim * r_next, order="F")
        w = w.reshape(-1, r_next, order="F")
    return DenseTensor(t.source_shape, w.reshape(-1, order="F"))


def tt_relative_error(x: DenseTensor, t: TTDecomposition) -> float:
    if as_shape(x.shape) != t.source_shape:
        raise DimensionMismatchError(
            f"tensor shape {x.shape} differs from train shape {t.source_shape}"
        )
    approx = tt_reconstruct(t)
    diff = float(np.linalg.norm(x.data - approx.data))
    ref = frobenius_norm(x)
    if ref == 0.0:
        return 0.0 if diff == 0.0 else math.inf
    return diff / ref
