import numpy as np
import pytest

from ttcontract import (
    DenseTensor,
    DimensionMismatchError,
    ShapeError,
    TTDecomposition,
    frobenius_norm,
    random_gaussian,
    tt_reconstruct,
    tt_relative_error,
    tt_svd,
)


def rank_one(shape, seed):
    g = np.random.default_rng(seed)
    arr = np.ones(())
    for d in shape:
        arr = np.multiply.outer(arr, g.standard_normal(d))
    return DenseTensor.from_array(arr)


def hilbert_like(shape):
    idx = np.indices(shape) + 1
    return DenseTensor.from_array(1.0 / idx.sum(axis=0))


def test_rank_one_tensor_gives_unit_ranks():
    x = rank_one((4, 5, 6), 0)
    t = tt_svd(x, 1e-10)
    assert t.ranks == (1, 1, 1, 1)
    assert tt_relative_error(x, t) < 1e-12


def test_random_cube_exact():
    x = random_gaussian((20, 20, 20), 1)
    t = tt_svd(x, 0.0)
    assert t.ranks == (1, 20, 20, 1)
    assert tt_relative_error(x, t) <= 1e-9


def test_matrix_reconstruction_against_matmul():
    x = random_gaussian((6, 9), 2)
    t = tt_svd(x, 0.0)
    a = t.boundary_matrix("first").array
    b = t.boundary_matrix("last").array
    np.testing.assert_allclose(a @ b, x.array, rtol=0, atol=1e-10 * frobenius_norm(x))
    np.testing.assert_allclose(tt_reconstruct(t).data, x.data, atol=1e-10 * frobenius_norm(x))


def test_order4_roundtrip():
    x = random_gaussian((4, 3, 5, 2), 3)
    t = tt_svd(x, 0.0)
    assert t.order == 4 and t.source_shape == (4, 3, 5, 2)
    assert t.satisfies_rank_bound()
    assert tt_relative_error(x, t) <= 1e-9


def test_zero_tensor():
    x = DenseTensor((3, 4, 2), np.zeros(24))
    t = tt_svd(x, 0.1)
    assert not tt_reconstruct(t).data.any()
    assert tt_relative_error(x, t) == 0.0


@pytest.mark.parametrize("eps", [0.1, 0.3])
def test_accuracy_contract(eps):
    for seed in range(5):
        x = random_gaussian((6, 5, 4, 3), seed)
        t = tt_svd(x, eps)
        assert tt_relative_error(x, t) <= eps + 1e-9


def test_error_monotone_in_epsilon():
    x = random_gaussian((5, 6, 5, 4), 8)
    errs = [tt_relative_error(x, tt_svd(x, e)) for e in (0.0, 0.05, 0.1, 0.3, 0.6)]
    for lo, hi in zip(errs, errs[1:]):
        assert lo <= hi + 1e-9


def test_smooth_tensor_compresses():
    x = hilbert_like((12, 12, 12))
    t = tt_svd(x, 0.1)
    assert t.num_params < x.size
    assert tt_relative_error(x, t) <= 0.1


def test_jacobi_backend_gives_same_cores():
    x = random_gaussian((4, 5, 3), 4)
    t1, t2 = tt_svd(x, 0.0), tt_svd(x, 0.0, method="jacobi")
    assert t1.ranks == t2.ranks
    for c1, c2 in zip(t1.cores, t2.cores):
        np.testing.assert_allclose(c1.data, c2.data, atol=1e-10)


def test_errors():
    with pytest.raises(ShapeError):
        tt_svd(random_gaussian((5,), 0), 0.1)
    with pytest.raises(ValueError):
        tt_svd(random_gaussian((2, 2), 0), -0.1)
    with pytest.raises(DimensionMismatchError):
        tt_relative_error(random_gaussian((2, 3), 0), tt_svd(random_gaussian((3, 2), 0), 0))


def test_chain_validation():
    good = DenseTensor((1, 2, 3), np.zeros(6))
    with pytest.raises(DimensionMismatchError):
        TTDecomposition((good, DenseTensor((2, 2, 1), np.zeros(4))))
    with pytest.raises(ShapeError):
        TTDecomposition((DenseTensor((2, 2, 1), np.zeros(4)),))
    with pytest.raises(ShapeError):
        TTDecomposition((DenseTensor((2, 2), np.zeros(4)),))
