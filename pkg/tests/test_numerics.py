import numpy as np
import pytest
from numpy.testing import assert_allclose

from rskpca import numerics


def random_symmetric(n, seed):
    a = np.random.default_rng(seed).normal(size=(n, n))
    return (a + a.T) / 2


class TestSymEig:
    def test_identity(self):
        dec = numerics.sym_eig(np.eye(3))
        assert_allclose(dec.eigenvalues, [1.0, 1.0, 1.0])

    def test_diagonal_sorted_descending(self):
        dec = numerics.sym_eig(np.diag([3.0, 1.0, 2.0]))
        assert_allclose(dec.eigenvalues, [3.0, 2.0, 1.0])

    def test_reconstruction(self):
        a = random_symmetric(6, seed=0)
        dec = numerics.sym_eig(a)
        rebuilt = dec.eigenvectors @ np.diag(dec.eigenvalues) @ dec.eigenvectors.T
        assert np.linalg.norm(a - rebuilt) < 1e-8

    def test_columns_orthonormal(self):
        dec = numerics.sym_eig(random_symmetric(8, seed=1))
        gram = dec.eigenvectors.T @ dec.eigenvectors
        assert np.max(np.abs(gram - np.eye(8))) < 1e-10

    def test_eigenpairs_solve_problem(self):
        a = random_symmetric(7, seed=2)
        dec = numerics.sym_eig(a)
        scale = np.max(np.abs(dec.eigenvalues))
        residual = a @ dec.eigenvectors - dec.eigenvectors * dec.eigenvalues[None, :]
        assert np.max(np.abs(residual)) < 1e-8 * scale

    def test_trace_identity(self):
        a = random_symmetric(9, seed=3)
        assert_allclose(numerics.sym_eig(a).eigenvalues.sum(), np.trace(a), rtol=1e-8)

    def test_spectrum_invariant_under_permutation(self):
        a = random_symmetric(10, seed=4)
        perm = np.random.default_rng(5).permutation(10)
        permuted = a[np.ix_(perm, perm)]
        assert_allclose(
            numerics.sym_eig(a).eigenvalues,
            numerics.sym_eig(permuted).eigenvalues,
            rtol=1e-8,
            atol=1e-12,
        )

    def test_sign_convention(self):
        dec = numerics.sym_eig(random_symmetric(6, seed=6))
        for col in dec.eigenvectors.T:
            assert col[np.argmax(np.abs(col))] > 0

    def test_deterministic(self):
        a = random_symmetric(12, seed=7)
        first = numerics.sym_eig(a)
        second = numerics.sym_eig(a.copy())
        assert np.array_equal(first.eigenvalues, second.eigenvalues)
        assert np.array_equal(first.eigenvectors, second.eigenvectors)

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            numerics.sym_eig(np.ones((2, 3)))

    def test_rejects_non_symmetric(self):
        a = np.array([[1.0, 2.0], [1.0, 1.0]])
        with pytest.raises(ValueError, match="symmetric"):
            numerics.sym_eig(a)


class TestLstsq:
    def test_orthonormal_basis_identity(self):
        b = np.linalg.qr(np.random.default_rng(0).normal(size=(6, 3)))[0]
        res = numerics.lstsq(b, b)
        assert_allclose(res.solution, np.eye(3), atol=1e-10)
        assert not res.rank_deficient

    def test_self_alignment_identity(self):
        b = np.random.default_rng(1).normal(size=(8, 4))
        assert_allclose(numerics.lstsq(b, b).solution, np.eye(4), atol=1e-10)

    def test_plant_and_recover(self):
        rng = np.random.default_rng(2)
        b = rng.normal(size=(10, 3))
        planted = rng.normal(size=(3, 3))
        res = numerics.lstsq(b, b @ planted)
        assert_allclose(res.solution, planted, atol=1e-8)

    def test_residual_orthogonal_to_column_space(self):
        rng = np.random.default_rng(3)
        b = rng.normal(size=(9, 4))
        y = rng.normal(size=(9, 2))
        res = numerics.lstsq(b, y)
        residual = y - b @ res.solution
        assert np.max(np.abs(b.T @ residual)) < 1e-8

    def test_rank_deficient_flagged_minimum_norm(self):
        rng = np.random.default_rng(4)
        col = rng.normal(size=(7, 1))
        b = np.hstack([col, col])  # rank 1
        y = rng.normal(size=(7, 2))
        res = numerics.lstsq(b, y)
        assert res.rank_deficient
        assert res.rank == 1
        # minimum-norm solution splits the weight across the equal columns
        assert_allclose(res.solution[0], res.solution[1], atol=1e-10)

    def test_rejects_underdetermined(self):
        with pytest.raises(ValueError, match="rows"):
            numerics.lstsq(np.ones((2, 3)), np.ones((2, 1)))

    def test_rejects_mismatched_rows(self):
        with pytest.raises(ValueError):
            numerics.lstsq(np.ones((4, 2)), np.ones((3, 2)))
