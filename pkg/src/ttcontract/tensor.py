"""Dense N-mode tensors stored in little-endian (first mode fastest) order.

Indices at the public surface are 1-based, mode numbers too. Internally the
flat buffer is a Fortran-ordered view of a numpy array, so folding a vector
into a tensor and reshaping unfoldings are pure relabelings.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import tcp_kernel
from .errors import DimensionMismatchError, IndexOutOfBoundsError, ShapeError

Shape = tuple[int, ...]


def as_shape(dims: Iterable[int]) -> Shape:
    """Validate mode dimensions and return them as a tuple."""
    out = []
    for d in dims:
        if isinstance(d, (bool, np.bool_)) or int(d) != d:
            raise ShapeError(f"mode dimension {d!r} is not an integer")
        if d < 1:
            raise ShapeError(f"mode dimension must be >= 1, got {d}")
        out.append(int(d))
    numel(out)
    return tuple(out)


def numel(dims: Iterable[int]) -> int:
    """Total element count; raises instead of wrapping on overflow."""
    total = math.prod(int(d) for d in dims)
    if total > sys.maxsize:
        raise ShapeError(f"element count {total} overflows a 64-bit index")
    return total


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Real tensor with shape and a flat float64 buffer in linear order."""

    shape: Shape
    data: np.ndarray

    def __post_init__(self):
        shape = as_shape(self.shape)
        data = np.ascontiguousarray(self.data, dtype=np.float64)
        if data.ndim != 1:
            data = data.reshape(-1)
        if data.size != numel(shape):
            raise ShapeError(
                f"data has {data.size} elements but shape {shape} needs {numel(shape)}"
            )
        if data.flags.writeable:
            # own copy so freezing never touches a caller's buffer
            if data is self.data or np.may_share_memory(data, self.data):
                data = data.copy()
            data.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_array(cls, arr) -> "DenseTensor":
        """Wrap a numpy array; its (i1, ..., iN) entry keeps its meaning."""
        arr = np.asarray(arr, dtype=np.float64)
        return cls(arr.shape, arr.reshape(-1, order="F"))

    @property
    def order(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return self.data.size

    @property
    def array(self) -> np.ndarray:
        """Read-only N-d view whose 0-based [i1-1, ..., iN-1] is the entry."""
        return self.data.reshape(self.shape, order="F")

    def at(self, *multi: int) -> float:
        """Entry at a 1-based multi-index."""
        return float(self.data[linear_index(multi, self.shape) - 1])

    def as_matrix(self) -> "Matrix":
        return Matrix(self.shape, self.data)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape={self.shape})"


class Matrix(DenseTensor):
    """Order-2 tensor. Shares its buffer with the tensor it came from."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.shape) != 2:
            raise ShapeError(f"a Matrix needs 2 modes, got shape {self.shape}")

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def as_tensor(self) -> DenseTensor:
        return DenseTensor(self.shape, self.data)

    @property
    def T(self) -> "Matrix":
        return Matrix.from_array(self.array.T)


def as_matrix(a) -> Matrix:
    """Coerce a DenseTensor of order 2 or a 2-d array-like to a Matrix."""
    if isinstance(a, Matrix):
        return a
    if isinstance(a, DenseTensor):
        return a.as_matrix()
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-d array, got {arr.ndim} dimensions")
    return Matrix.from_array(arr)


def _check_mode(n: int, order: int) -> None:
    if not 1 <= n <= order:
        raise IndexOutOfBoundsError(f"mode {n} is outside 1..{order}")


def linear_index(multi: Sequence[int], shape: Sequence[int]) -> int:
    """1-based little-endian position of a 1-based multi-index."""
    if len(multi) != len(shape):
        raise DimensionMismatchError(
            f"multi-index has {len(multi)} entries, shape has {len(shape)} modes"
        )
    pos, stride = 1, 1
    for k, (i, dim) in enumerate(zip(multi, shape)):
        if not 1 <= i <= dim:
            raise IndexOutOfBoundsError(f"index {i} of mode {k + 1} outside 1..{dim}")
        pos += (i - 1) * stride
        stride *= dim
    return pos


def multi_index(linear: int, shape: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`linear_index`."""
    total = numel(shape)
    if not 1 <= linear <= total:
        raise IndexOutOfBoundsError(f"linear position {linear} outside 1..{total}")
    rem = linear - 1
    out = []
    for dim in shape:
        rem, i = divmod(rem, dim)
        out.append(i + 1)
    return tuple(out)


def flatten(x: DenseTensor) -> np.ndarray:
    """vec(x): a copy of the linear-order buffer."""
    return x.data.copy()


def fold_vector(v, shape: Sequence[int]) -> DenseTensor:
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    shape = as_shape(shape)
    if v.size != numel(shape):
        raise DimensionMismatchError(
            f"vector of length {v.size} cannot fold into shape {shape}"
        )
    return DenseTensor(shape, v)


def unfold(x: DenseTensor, n: int) -> Matrix:
    """Mode-n unfolding: I_n rows, remaining modes (ascending) as columns."""
    _check_mode(n, x.order)
    arr = np.moveaxis(x.array, n - 1, 0)
    return Matrix.from_array(arr.reshape(x.shape[n - 1], -1, order="F"))


def refold_mode_n(m, shape: Sequence[int], n: int) -> DenseTensor:
    shape = as_shape(shape)
    _check_mode(n, len(shape))
    m = as_matrix(m)
    rest = tuple(d for k, d in enumerate(shape) if k != n - 1)
    if m.shape != (shape[n - 1], numel(rest)):
        raise DimensionMismatchError(
            f"matrix {m.shape} is not a mode-{n} unfolding of {shape}"
        )
    arr = m.array.reshape((shape[n - 1],) + rest, order="F")
    return DenseTensor.from_array(np.moveaxis(arr, 0, n - 1))


def stack(samples: Sequence[DenseTensor]) -> DenseTensor:
    """Group J equally shaped tensors along a new trailing mode."""
    if len(samples) == 0:
        raise ShapeError("cannot stack an empty list")
    shape = samples[0].shape
    for s in samples[1:]:
        if s.shape != shape:
            raise DimensionMismatchError(
                f"cannot stack shapes {shape} and {s.shape} together"
            )
    data = np.concatenate([s.data for s in samples])
    return DenseTensor(shape + (len(samples),), data)


def mode_n_product(x: DenseTensor, a, n: int) -> DenseTensor:
    """x ×_n a, computed as unfold, left multiply, refold."""
    _check_mode(n, x.order)
    a = as_matrix(a)
    if a.cols != x.shape[n - 1]:
        raise DimensionMismatchError(
            f"matrix has {a.cols} columns but mode {n} has dimension {x.shape[n - 1]}"
        )
    y = a.array @ unfold(x, n).array
    new_shape = x.shape[: n - 1] + (a.rows,) + x.shape[n:]
    return refold_mode_n(y, new_shape, n)


def tcp_shape(x_shape: Sequence[int], y_shape: Sequence[int], n: int, m: int) -> Shape:
    """Shape of x ×_n^m y: x's free modes then y's free modes."""
    _check_mode(n, len(x_shape))
    _check_mode(m, len(y_shape))
    if x_shape[n - 1] != y_shape[m - 1]:
        raise DimensionMismatchError(
            f"contracted dimensions differ: I_{n}={x_shape[n - 1]} vs J_{m}={y_shape[m - 1]}"
        )
    return tuple(x_shape[: n - 1]) + tuple(x_shape[n:]) + tuple(y_shape[: m - 1]) + tuple(y_shape[m:])


def tcp(x: DenseTensor, y: DenseTensor, n: int, m: int) -> DenseTensor:
    """Contraction x ×_n^m y by literal single-index summation.

    Every output entry is summed over the shared index in ascending order,
    so results are bit-stable. This is the reference against which the
    tensor-train route is checked.
    """
    out_shape = tcp_shape(x.shape, y.shape, n, m)
    k = x.shape[n - 1]
    a, b = math.prod(x.shape[: n - 1]), math.prod(x.shape[n:])
    c, d = math.prod(y.shape[: m - 1]), math.prod(y.shape[m:])
    z = tcp_kernel(x.data, y.data, a, k, b, c, d)
    return DenseTensor(out_shape, z)


def _check_perm(perm: Sequence[int], order: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, order + 1)):
        raise ShapeError(f"{perm} is not a permutation of 1..{order}")
    return perm


def permute(x: DenseTensor, perm: Sequence[int]) -> DenseTensor:
    """Mode k of the result is mode perm[k] of x (1-based). Copies data."""
    perm = _check_perm(perm, x.order)
    return DenseTensor.from_array(np.transpose(x.array, [p - 1 for p in perm]))


def inverse_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, p in enumerate(perm):
        inv[p - 1] = k + 1
    return tuple(inv)


def frobenius_norm(x: DenseTensor) -> float:
    # fsum is correctly rounded, so the result ignores element order
    return math.sqrt(math.fsum(x.data * x.data))


def random_gaussian(shape: Sequence[int], seed) -> DenseTensor:
    """i.i.d. standard normal entries from numpy's PCG64 generator.

    ``seed`` is anything ``numpy.random.default_rng`` accepts (an int or a
    sequence of ints). Entries are drawn in linear order.
    """
    shape = as_shape(shape)
    rng = np.random.default_rng(seed)
    return DenseTensor(shape, rng.standard_normal(numel(shape)))
