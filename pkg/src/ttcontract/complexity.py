"""Exact operation-count models for direct and train-based contraction.

One multiply-accumulate counts as one operation. Counts are Python ints,
so values like 10**27 stay exact.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from .tensor import tcp_shape


class OpsModel(NamedTuple):
    label: str
    count: int


def _positive(**kw) -> None:
    for name, v in kw.items():
        if int(v) != v or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def tcp_ops(x_shape: Sequence[int], y_shape: Sequence[int], n: int, m: int) -> int:
    """Product of every x dimension and every free y dimension."""
    free = tcp_shape(x_shape, y_shape, n, m)
    return math.prod(free) * int(x_shape[n - 1])


def tcp_ops_uniform(i: int, n_order: int) -> int:
    """I^(2N-1): both operands of order N with every dimension I."""
    _positive(i=i, n_order=n_order)
    return int(i) ** (2 * int(n_order) - 1)


def ttcp_ops(i_n: int, r1: int, p1: int) -> int:
    """R_1 * I_n * P_1, the size of the kernel product. Takes no order."""
    _positive(i_n=i_n, r1=r1, p1=p1)
    return int(r1) * int(i_n) * int(p1)


def ttd_ops(i: int, n_order: int, r: int) -> int:
    """I^(N-1) * R^2, the extra cost of decomposing first."""
    _positive(i=i, n_order=n_order, r=r)
    return int(i) ** (int(n_order) - 1) * int(r) ** 2


def speedup_ratio(i: int, n_order: int, r: int) -> int:
    """Floor of I^(2N-1) / (I R^2)."""
    return tcp_ops_uniform(i, n_order) // ttcp_ops(i, r, r)


def ops_row(i: int, n_order: int, r: int) -> dict[str, int]:
    return {
        "I": i,
        "N": n_order,
        "R": r,
        "tcp_ops": tcp_ops_uniform(i, n_order),
        "ttcp_ops": ttcp_ops(i, r, r),
        "ttd_ops": ttd_ops(i, n_order, r),
        "speedup": speedup_ratio(i, n_order, r),
    }


def models(i: int, n_order: int, r: int) -> list[OpsModel]:
    row = ops_row(i, n_order, r)
    return [OpsModel(k, row[k]) for k in ("tcp_ops", "ttcp_ops", "ttd_ops", "speedup")]
