"""Compiled loops for the reference contraction and the counted matmul."""

import numpy as np
from numba import njit


@njit(cache=True)
def tcp_kernel(x, y, a, k, b, c, d):
    # x is (a, k, b) and y is (c, k, d) in first-index-fastest order;
    # z is (a, b, c, d) likewise. Each entry sums over k in ascending order.
    z = np.empty(a * b * c * d)
    for jd in range(d):
        for jc in range(c):
            for ib in range(b):
                for ia in range(a):
                    s = 0.0
                    for kk in range(k):
                        s += x[ia + a * (kk + k * ib)] * y[jc + c * (kk + k * jd)]
                    z[ia + a * (ib + b * (jc + c * jd))] = s
    return z


@njit(cache=True)
def matmul_kernel(a, b):
    # Returns (a @ b, number of multiply-accumulates performed).
    rows, inner = a.shape
    cols = b.shape[1]
    out = np.empty((rows, cols))
    macs = 0
    for j in range(cols):
        for i in range(rows):
            s = 0.0
            for p in range(inner):
                s += a[i, p] * b[p, j]
                macs += 1
            out[i, j] = s
    return out, macs
