"""Brute-force references, written without the package's index helpers."""

import itertools
import math

import numpy as np


def lin(multi, shape):
    # Eq. of the little-endian position, evaluated term by term (1-based)
    pos = 1
    for n, i in enumerate(multi):
        pos += (i - 1) * math.prod(shape[:n])
    return pos


def all_multi(shape):
    """Every 1-based multi-index, first mode fastest."""
    for rev in itertools.product(*[range(1, d + 1) for d in reversed(shape)]):
        yield tuple(reversed(rev))


def entry(data, shape, multi):
    return data[lin(multi, shape) - 1]


def brute_tcp(xdata, xshape, ydata, yshape, n, m):
    """Return {output multi-index: value} by summing over the shared index."""
    xs, ys = list(xshape), list(yshape)
    xfree = xs[: n - 1] + xs[n:]
    yfree = ys[: m - 1] + ys[m:]
    out = {}
    for zi in all_multi(tuple(xfree + yfree)):
        xi, yi = zi[: len(xfree)], zi[len(xfree):]
        s = 0.0
        for k in range(1, xs[n - 1] + 1):
            xm = xi[: n - 1] + (k,) + xi[n - 1:]
            ym = yi[: m - 1] + (k,) + yi[m - 1:]
            s += entry(xdata, xshape, xm) * entry(ydata, yshape, ym)
        out[zi] = s
    return out, tuple(xfree + yfree)


def jacobi_eigvals(s, tol=1e-15, max_sweeps=100):
    """Eigenvalues of a symmetric matrix by the cyclic two-sided Jacobi method."""
    a = np.array(s, dtype=float)
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(sum(a[i, j] ** 2 for i in range(n) for j in range(n) if i != j))
        if off <= tol * max(np.linalg.norm(a), 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                sn = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q], rot[q, p] = sn, -sn
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))[::-1]
