import numpy as np
import pytest

from fpclogit.basis import create_bspline, create_fourier, eval_basis, gram_matrix
from fpclogit.errors import InsufficientData
from fpclogit.fdata import FunctionalDataSet, eval_fd, mean_fd
from fpclogit.fpca import fpca_filtered, fpca_ordinary, variance_table

from helpers import eig2_sym, inv_sqrtm2_sym, sqrtm2_sym


@pytest.fixture
def hand_instance():
    """3 curves on the degree-1 hat pair over [0, 1]."""
    basis = create_bspline((0.0, 1.0), 2, degree=1)
    coefs = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    return FunctionalDataSet(basis=basis, coefs=coefs)


def brute_force_fpca(coefs, psi, metric_power):
    """Hand-rolled 2x2 analysis: metric_power 'half' or 'full'."""
    centered = coefs - coefs.mean(axis=0)
    transform = sqrtm2_sym(psi) if metric_power == "half" else psi
    h = centered @ transform
    values, vectors = eig2_sym(h.T @ h / (coefs.shape[0] - 1))
    return values, h @ vectors, inv_sqrtm2_sym(psi) @ vectors


class TestOrdinary:
    def test_identical_curves_zero_variance(self):
        basis = create_fourier((0.0, 1.0), 5)
        fd = FunctionalDataSet(basis=basis, coefs=np.tile(np.arange(5.0), (4, 1)))
        res = fpca_ordinary(fd)
        assert np.all(res.eigenvalues == 0.0)
        assert np.all(res.scores == 0.0)

    def test_hand_instance_matches_brute_force(self, hand_instance):
        psi = gram_matrix(hand_instance.basis).psi
        res = fpca_ordinary(hand_instance)
        values, scores, coefs = brute_force_fpca(hand_instance.coefs, psi, "half")
        assert np.abs(res.eigenvalues - values).max() <= 1e-10
        assert np.abs(res.scores - scores).max() <= 1e-10
        assert np.abs(res.eigenfn_coefs - coefs).max() <= 1e-10

    def test_single_curve_rejected(self, hand_instance):
        fd = FunctionalDataSet(basis=hand_instance.basis, coefs=np.ones((1, 2)))
        with pytest.raises(InsufficientData):
            fpca_ordinary(fd)


class TestFiltered:
    def test_identity_gram_coincides_with_ordinary(self):
        basis = create_fourier((1.0, 12.0), 7)
        rng = np.random.default_rng(21)
        fd = FunctionalDataSet(basis=basis, coefs=rng.normal(size=(15, 7)))
        a = fpca_ordinary(fd)
        b = fpca_filtered(fd)
        assert np.abs(a.eigenvalues - b.eigenvalues).max() <= 1e-10
        assert np.abs(a.scores - b.scores).max() <= 1e-10
        assert np.abs(a.eigenfn_coefs - b.eigenfn_coefs).max() <= 1e-10

    def test_hand_instance_matches_brute_force(self, hand_instance):
        psi = gram_matrix(hand_instance.basis).psi
        res = fpca_filtered(hand_instance)
        values, scores, coefs = brute_force_fpca(hand_instance.coefs, psi, "full")
        assert np.abs(res.eigenvalues - values).max() <= 1e-10
        assert np.abs(res.scores - scores).max() <= 1e-10
        assert np.abs(res.eigenfn_coefs - coefs).max() <= 1e-10


@pytest.fixture
def random_result():
    basis = create_bspline((1.0, 12.0), 8, degree=3)
    rng = np.random.default_rng(33)
    fd = FunctionalDataSet(basis=basis, coefs=rng.normal(size=(25, 8)))
    return fd, fpca_ordinary(fd), fpca_filtered(fd)


class TestInvariants:
    def test_score_columns_centered(self, random_result):
        _, ordinary, filtered = random_result
        for res in (ordinary, filtered):
            assert np.abs(res.scores.mean(axis=0)).max() <= 1e-10

    def test_score_variance_equals_eigenvalue(self, random_result):
        _, ordinary, filtered = random_result
        for res in (ordinary, filtered):
            var = res.scores.var(axis=0, ddof=1)
            assert np.abs(var - res.eigenvalues).max() <= 1e-8 * res.eigenvalues[0]

    def test_score_columns_uncorrelated(self, random_result):
        _, ordinary, filtered = random_result
        for res in (ordinary, filtered):
            cov = np.cov(res.scores, rowvar=False, ddof=1)
            off = cov - np.diag(np.diag(cov))
            assert np.abs(off).max() <= 1e-8 * res.eigenvalues.max()

    def test_eigenfunctions_gram_orthonormal(self, random_result):
        _, ordinary, filtered = random_result
        psi = ordinary.gram.psi
        for res in (ordinary, filtered):
            should_be_eye = res.eigenfn_coefs.T @ psi @ res.eigenfn_coefs
            assert np.abs(should_be_eye - np.eye(8)).max() <= 1e-8

    def test_eigenvalue_sum_is_total_variance(self, random_result):
        fd, ordinary, filtered = random_result
        centered = fd.coefs - fd.coefs.mean(axis=0)
        psi = ordinary.gram.psi
        from fpclogit.linalg import matrix_sqrt_sym

        for res, transform in ((ordinary, matrix_sqrt_sym(psi)), (filtered, psi)):
            h = centered @ transform
            trace = np.trace(h.T @ h / (fd.n_curves - 1))
            assert abs(res.eigenvalues.sum() - trace) <= 1e-8 * trace

    def test_full_reconstruction_on_grid(self, random_result):
        fd, ordinary, _ = random_result
        grid = np.linspace(1, 12, 100)
        eigen_curves = eval_basis(fd.basis, grid) @ ordinary.eigenfn_coefs
        rebuilt = eval_fd(mean_fd(fd), grid)[0] + ordinary.scores @ eigen_curves.T
        assert np.abs(rebuilt - eval_fd(fd, grid)).max() <= 1e-6

    def test_truncated_reconstruction_error_monotone(self, random_result):
        fd, ordinary, _ = random_result
        grid = np.linspace(1, 12, 100)
        values = eval_fd(fd, grid)
        mean_values = eval_fd(mean_fd(fd), grid)[0]
        eigen_curves = eval_basis(fd.basis, grid) @ ordinary.eigenfn_coefs
        errors = []
        for q in range(1, 9):
            rebuilt = mean_values + ordinary.scores[:, :q] @ eigen_curves[:, :q].T
            errors.append(np.trapezoid((values - rebuilt) ** 2, grid, axis=1).sum())
        assert all(b <= a + 1e-10 for a, b in zip(errors, errors[1:]))

    def test_scores_match_integral_oracle(self, random_result):
        fd, ordinary, _ = random_result
        grid = np.linspace(1, 12, 10_001)
        centered_values = eval_fd(fd, grid) - eval_fd(mean_fd(fd), grid)[0]
        eigen_curves = eval_basis(fd.basis, grid) @ ordinary.eigenfn_coefs
        for j in range(8):
            integral = np.trapezoid(centered_values * eigen_curves[:, j], grid, axis=1)
            assert np.abs(integral - ordinary.scores[:, j]).max() <= 1e-5

    def test_half_metric_identity(self, random_result):
        fd, ordinary, _ = random_result
        from fpclogit.linalg import matrix_sqrt_sym

        centered = fd.coefs - fd.coefs.mean(axis=0)
        h = centered @ matrix_sqrt_sym(ordinary.gram.psi)
        # scores V' rebuilds the half-metric coefficients
        v = matrix_sqrt_sym(ordinary.gram.psi) @ ordinary.eigenfn_coefs
        assert np.abs(ordinary.scores @ v.T - h).max() <= 1e-8

    def test_rank_capped_by_curves(self):
        basis = create_bspline((0.0, 1.0), 8, degree=3)
        rng = np.random.default_rng(5)
        fd = FunctionalDataSet(basis=basis, coefs=rng.normal(size=(4, 8)))
        res = fpca_ordinary(fd)
        assert res.n_components == 3
        assert np.all(res.eigenvalues[3:] == 0.0)
        assert np.all(res.scores[:, 3:] == 0.0)
        assert res.rank <= 3


class TestVarianceTable:
    def test_simple_percentages(self):
        basis = create_fourier((0.0, 1.0), 3)
        rng = np.random.default_rng(8)
        fd = FunctionalDataSet(basis=basis, coefs=rng.normal(size=(30, 3)))
        res = fpca_ordinary(fd)
        table = variance_table(res, "A")
        lam = res.eigenvalues
        assert np.allclose(table.percent, 100 * lam / lam.sum())
        assert np.allclose(table.cumulative, np.cumsum(table.percent))
        assert table.labels == ("A.1", "A.2", "A.3")

    def test_two_component_split(self):
        # eigenvalues (3, 1) -> 75 / 25
        basis = create_fourier((0.0, 1.0), 3)
        scores = np.array([[2.0, 0.0], [-2.0, 0.0], [0.0, 2.0 / np.sqrt(3)], [0.0, -2.0 / np.sqrt(3)]])
        coefs = np.column_stack([scores, np.zeros(4)])
        fd = FunctionalDataSet(basis=basis, coefs=coefs)
        res = fpca_ordinary(fd)
        table = variance_table(res, "X")
        assert np.allclose(table.percent[:2], [75.0, 25.0])
        assert table.cumulative[-1] == pytest.approx(100.0)

    def test_rank_one(self):
        basis = create_fourier((0.0, 1.0), 3)
        base = np.array([1.0, 2.0, -1.0])
        coefs = np.outer([1.0, -1.0, 2.0, -2.0], base)
        fd = FunctionalDataSet(basis=basis, coefs=coefs)
        table = variance_table(fpca_ordinary(fd), "A")
        assert np.allclose(table.percent, [100.0, 0.0, 0.0])

    def test_text_rendering(self):
        basis = create_fourier((0.0, 1.0), 3)
        rng = np.random.default_rng(9)
        fd = FunctionalDataSet(basis=basis, coefs=rng.normal(size=(10, 3)))
        text = variance_table(fpca_ordinary(fd), "A").to_text(decimals=1)
        assert "A.1" in text and "cumulative" in text
