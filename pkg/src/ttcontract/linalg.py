"""Matrix kernels used by TT-SVD and the contraction: matmul and (truncated) SVD."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import matmul_kernel
from .errors import DimensionMismatchError, NumericalError
from .tensor import Matrix, as_matrix

EPS = np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class SVDResult:
    """Leading ``rank`` singular triplets: a ~= u @ diag(sigma) @ vt."""

    u: Matrix
    sigma: np.ndarray
    vt: Matrix
    rank: int

    def reconstruct(self) -> Matrix:
        return Matrix.from_array((self.u.array * self.sigma) @ self.vt.array)


def matmul(a, b) -> Matrix:
    return matmul_counted(a, b)[0]


def matmul_counted(a, b) -> tuple[Matrix, int]:
    """Product by explicit loops; also returns the multiply-accumulate count.

    Each entry sums over the inner index in ascending order.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.cols != b.rows:
        raise DimensionMismatchError(
            f"inner dimensions differ: {a.shape} times {b.shape}"
        )
    out, macs = matmul_kernel(np.asarray(a.array), np.asarray(b.array))
    return Matrix.from_array(out), int(macs)


def _jacobi_svd(a: np.ndarray, tol: float = None, max_sweeps: int = 60):
    """One-sided (Hestenes) Jacobi SVD of a tall matrix.

    Column pairs are visited in round-robin order; the pairs of one round are
    disjoint, so a whole round is rotated at once with array operations.
    """
    m, n = a.shape
    if tol is None:
        tol = m * EPS
    u = np.array(a, dtype=np.float64, order="F")
    v = np.eye(n)
    players = n + (n % 2)
    rounds = []
    order = list(range(players))
    for _ in range(players - 1):
        half = players // 2
        pairs = [(order[i], order[players - 1 - i]) for i in range(half)]
        pairs = [(min(p), max(p)) for p in pairs if max(p) < n]
        if pairs:
            rounds.append(np.array(pairs).T)
        order = [order[0], order[-1]] + order[1:-1]

    for _ in range(max_sweeps):
        rotated = False
        for p, q in rounds:
            up, uq = u[:, p], u[:, q]
            alpha = np.einsum("ij,ij->j", up, up)
            beta = np.einsum("ij,ij->j", uq, uq)
            gamma = np.einsum("ij,ij->j", up, uq)
            active = np.abs(gamma) > tol * np.sqrt(alpha * beta)
            if not active.any():
                continue
            rotated = True
            p, q = p[active], q[active]
            alpha, beta, gamma = alpha[active], beta[active], gamma[active]
            up, uq = up[:, active], uq[:, active]
            zeta = (beta - alpha) / (2.0 * gamma)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            u[:, p] = c * up - s * uq
            u[:, q] = s * up + c * uq
            vp, vq = v[:, p], v[:, q]
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        if not rotated:
            break
    else:
        raise NumericalError(f"Jacobi SVD did not converge in {max_sweeps} sweeps")

    sigma = np.sqrt(np.einsum("ij,ij->j", u, u))
    idx = np.argsort(-sigma, kind="stable")
    sigma, u, v = sigma[idx], u[:, idx], v[:, idx]
    good = sigma > (sigma[0] * m * EPS if n else 0.0)
    u[:, good] /= sigma[good]
    if not good.all():
        u = _complete_basis(u, good)
    return u, sigma, v.T


def _complete_basis(u: np.ndarray, good: np.ndarray) -> np.ndarray:
    """Replace columns of u for null singular values with orthonormal fillers."""
    m = u.shape[0]
    basis = [u[:, k] for k in np.flatnonzero(good)]
    out = u.copy()
    candidates = iter(np.eye(m))
    for k in np.flatnonzero(~good):
        while True:
            w = next(candidates).copy()
            for _ in range(2):
                for b in basis:
                    w -= np.dot(b, w) * b
            nrm = np.linalg.norm(w)
            if nrm > 1e-8:
                break
        w /= nrm
        basis.append(w)
        out[:, k] = w
    return out


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> None:
    # largest-magnitude entry of each u column made positive, mirrored in vt
    if u.size == 0:
        return
    rows = np.argmax(np.abs(u), axis=0)
    flip = u[rows, np.arange(u.shape[1])] < 0
    u[:, flip] *= -1
    vt[flip, :] *= -1


def svd(a, method: str = "lapack") -> SVDResult:
    """Thin SVD, rank = min(rows, cols).

    ``method="lapack"`` uses numpy's LAPACK driver; ``method="jacobi"`` uses
    the one-sided Jacobi routine in this module. Both apply the same sign
    convention, so outputs agree up to rounding for distinct singular values.
    """
    a = as_matrix(a)
    arr = np.asarray(a.array)
    if not np.isfinite(arr).all():
        raise NumericalError("SVD input has non-finite entries")
    if method == "lapack":
        try:
            u, s, vt = np.linalg.svd(arr, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"LAPACK SVD failed: {exc}") from exc
        u, vt = np.array(u), np.array(vt)
    elif method == "jacobi":
        if a.rows >= a.cols:
            u, s, vt = _jacobi_svd(arr)
        else:
            v, s, ut = _jacobi_svd(arr.T)
            u, vt = ut.T.copy(), v.T.copy()
    else:
        raise ValueError(f"unknown SVD method {method!r}")
    _fix_signs(u, vt)
    return SVDResult(Matrix.from_array(u), s, Matrix.from_array(vt), len(s))


def truncation_rank(sigma: np.ndarray, delta: float, shape: tuple[int, int]) -> int:
    """Smallest r >= 1 whose discarded tail has Frobenius norm <= delta.

    With delta == 0, singular values at or below max(shape) * eps * sigma_1
    count as zero.
    """
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    if len(sigma) == 0:
        return 1
    if delta == 0:
        floor = max(shape) * EPS * sigma[0]
        return max(1, int(np.count_nonzero(sigma > floor)))
    # tail[r] = norm of sigma[r:], r = 0..K
    tail = np.sqrt(np.append(np.cumsum((sigma ** 2)[::-1])[::-1], 0.0))
    ok = np.flatnonzero(tail[1:] <= delta)
    return int(ok[0]) + 1


def truncated_svd(a, delta: float, method: str = "lapack") -> SVDResult:
    """δ-truncated SVD: keep the fewest triplets with ||a - U S Vt||_F <= delta."""
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    full = svd(a, method=method)
    r = truncation_rank(full.sigma, delta, (full.u.rows, full.vt.cols))
    return SVDResult(
        Matrix.from_array(full.u.array[:, :r]),
        full.sigma[:r].copy(),
        Matrix.from_array(full.vt.array[:r, :]),
        r,
    )
