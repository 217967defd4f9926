"""TT1 (dense tensor) and TTD1 (tensor train) binary files.

Both start with one ASCII header line; the payload is little-endian float64
in linear order. TT1: ``TT1 <N> <I1> ... <IN>``. TTD1:
``TTD1 <N> <R0> <I1> <R1> ... <IN> <RN>`` followed by every core in turn.
"""

from __future__ import annotations

import os
from typing import Union

import numpy as np

from .errors import FormatError, TensorError
from .tensor import DenseTensor, as_shape, numel
from .tt import TTDecomposition

PathLike = Union[str, os.PathLike]
_F8 = np.dtype("<f8")


def _split_header(blob: bytes, magic: str) -> tuple[list[int], bytes]:
    nl = blob.find(b"\n")
    if nl < 0:
        raise FormatError("missing header line")
    try:
        words = blob[:nl].decode("ascii").split()
    except UnicodeDecodeError as exc:
        raise FormatError("header is not ASCII") from exc
    if not words or words[0] != magic:
        raise FormatError(f"expected magic {magic!r}, got {words[:1]}")
    try:
        ints = [int(w) for w in words[1:]]
    except ValueError as exc:
        raise FormatError(f"non-integer header field in {words!r}") from exc
    if not ints or ints[0] < 0:
        raise FormatError("header lacks a valid order")
    return ints, blob[nl + 1:]


def _payload(body: bytes, count: int) -> np.ndarray:
    need = count * _F8.itemsize
    if len(body) < need:
        raise FormatError(f"payload has {len(body)} bytes, expected {need}")
    if len(body) > need:
        raise FormatError(f"{len(body) - need} trailing bytes after payload")
    return np.frombuffer(body, dtype=_F8).astype(np.float64)


def dumps_tensor(x: DenseTensor) -> bytes:
    header = " ".join(["TT1", str(x.order)] + [str(d) for d in x.shape]) + "\n"
    return header.encode("ascii") + x.data.astype(_F8).tobytes()


def loads_tensor(blob: bytes) -> DenseTensor:
    ints, body = _split_header(blob, "TT1")
    order, dims = ints[0], ints[1:]
    if len(dims) != order:
        raise FormatError(f"header declares order {order} but lists {len(dims)} dims")
    try:
        return DenseTensor(tuple(dims), _payload(body, numel(dims)))
    except FormatError:
        raise
    except TensorError as exc:
        raise FormatError(str(exc)) from exc


def dumps_tt(t: TTDecomposition) -> bytes:
    fields = ["TTD1", str(t.order), "1"]
    for c in t.cores:
        fields += [str(c.shape[1]), str(c.shape[2])]
    body = b"".join(c.data.astype(_F8).tobytes() for c in t.cores)
    return (" ".join(fields) + "\n").encode("ascii") + body


def loads_tt(blob: bytes) -> TTDecomposition:
    ints, body = _split_header(blob, "TTD1")
    order, chain = ints[0], ints[1:]
    if order < 1 or len(chain) != 2 * order + 1:
        raise FormatError(f"TTD1 header for order {order} has {len(chain)} chain entries")
    ranks, dims = chain[0::2], chain[1::2]
    shapes = [(ranks[k], dims[k], ranks[k + 1]) for k in range(order)]
    try:
        sizes = [numel(as_shape(s)) for s in shapes]
        data = _payload(body, sum(sizes))
        cores, off = [], 0
        for s, size in zip(shapes, sizes):
            cores.append(DenseTensor(s, data[off:off + size]))
            off += size
        return TTDecomposition(tuple(cores))
    except FormatError:
        raise
    except TensorError as exc:
        raise FormatError(str(exc)) from exc


def write_tensor(path: PathLike, x: DenseTensor) -> None:
    with open(path, "wb") as f:
        f.write(dumps_tensor(x))


def read_tensor(path: PathLike) -> DenseTensor:
    with open(path, "rb") as f:
        return loads_tensor(f.read())


def write_tt(path: PathLike, t: TTDecomposition) -> None:
    with open(path, "wb") as f:
        f.write(dumps_tt(t))


def read_tt(path: PathLike) -> TTDecomposition:
    with open(path, "rb") as f:
        return loads_tt(f.read())
