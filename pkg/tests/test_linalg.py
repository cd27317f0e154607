"""Tests for the small dense matrix toolbox."""
import numpy as np
import pytest

from floqnet.exceptions import NonDiagonalizable, SingularInput
from floqnet.linalg import determinant, eigenvalues, expm, kron, \
    log_principal, sort_spectrum

EQ13_LAPLACIAN = np.array([[2.0, -1.0, -1.0],
                           [-1.0, 2.0, -1.0],
                           [-1.0, -1.0, 2.0]])


def brute_force_kron(a, b):
    pa, ra = a.shape
    qb, sb = b.shape
    out = np.zeros((pa * qb, ra * sb), dtype=np.result_type(a, b))
    for i in range(pa):
        for j in range(ra):
            for k in range(qb):
                for l in range(sb):
                    out[i * qb + k, j * sb + l] = a[i, j] * b[k, l]
    return out


def cofactor_det(a):
    n = a.shape[0]
    if n == 1:
        return a[0, 0]
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * a[0, j] * cofactor_det(minor)
    return total


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_block_permutation(self):
        swap = np.array([[0.0, 1.0], [1.0, 0.0]])
        result = kron(swap, np.eye(2))
        expected = np.zeros((4, 4))
        expected[:2, 2:] = np.eye(2)
        expected[2:, :2] = np.eye(2)
        assert np.array_equal(result, expected)

    def test_matches_elementwise_definition(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((3, 3))
        b = rng.standard_normal((2, 2))
        assert np.allclose(kron(a, b), brute_force_kron(a, b), atol=1e-14)

    def test_mixed_product_property(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = rng.standard_normal((3, 2))
            b = rng.standard_normal((2, 4))
            c = rng.standard_normal((2, 3))
            d = rng.standard_normal((4, 2))
            lhs = kron(a, b) @ kron(c, d)
            rhs = kron(a @ c, b @ d)
            assert np.abs(lhs - rhs).max() < 1e-10

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            kron(np.array([[np.inf]]), np.eye(2))


class TestEigenvalues:
    def test_identity(self):
        assert np.allclose(eigenvalues(np.eye(3)), np.ones(3))

    def test_rotation_generator(self):
        w = eigenvalues(np.array([[0.0, 1.0], [-1.0, 0.0]]))
        assert np.allclose(w, [1j, -1j])  # +i sorts first

    def test_eq13_laplacian_spectrum(self):
        # characteristic polynomial -s(s-3)^2: eigenvalues {3, 3, 0}
        w = eigenvalues(EQ13_LAPLACIAN)
        assert np.abs(w - np.array([3.0, 3.0, 0.0])).max() < 1e-12

    def test_conjugate_pairs_for_real_input(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            a = rng.standard_normal((5, 5))
            w = eigenvalues(a)
            paired = sort_spectrum(np.conj(w))
            assert np.abs(w - paired).max() < 1e-9 * max(1.0, np.abs(w).max())

    def test_product_matches_determinant(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            dim = int(rng.integers(2, 9))
            a = rng.standard_normal((dim, dim))
            det = determinant(a)
            prod = np.prod(eigenvalues(a))
            assert abs(prod - det) < 1e-8 * max(abs(det), 1e-12)

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            eigenvalues(np.eye(65))

    def test_sort_order_is_deterministic(self):
        w = sort_spectrum([1 - 2j, 1 + 2j, -3.0, 0.5])
        assert w[0] == -3.0
        assert w[1] == 1 + 2j and w[2] == 1 - 2j
        assert w[3] == 0.5


class TestDeterminant:
    def test_identity(self):
        assert determinant(np.eye(4)) == pytest.approx(1.0)

    def test_laplacian_is_singular(self):
        assert abs(determinant(EQ13_LAPLACIAN)) < 1e-14

    def test_matches_cofactor_expansion(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            a = rng.standard_normal((4, 4))
            ref = cofactor_det(a)
            assert abs(determinant(a) - ref) < 1e-10 * max(abs(ref), 1e-12)


class TestLogPrincipal:
    def test_identity_gives_zero(self):
        assert np.abs(log_principal(np.eye(3))).max() < 1e-14

    def test_diagonal(self):
        m = np.diag([np.e, np.e ** 2])
        assert np.allclose(log_principal(m), np.diag([1.0, 2.0]), atol=1e-12)

    def test_exp_log_round_trip(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            # well-conditioned: diagonally dominant + modest skew
            a = np.eye(4) * 2.0 + 0.3 * rng.standard_normal((4, 4))
            rebuilt = expm(log_principal(a))
            rel = np.abs(rebuilt - a).max() / np.abs(a).max()
            assert rel < 1e-8

    def test_negative_axis_lands_on_principal_branch(self):
        log_m = log_principal(np.diag([-1.0, 2.0]))
        w = eigenvalues(log_m)
        imag = np.sort(w.imag)
        assert imag[0] == pytest.approx(0.0, abs=1e-12)
        assert imag[1] == pytest.approx(np.pi, abs=1e-12)

    def test_trace_imag_bounded(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            a = np.eye(3) + 0.5 * rng.standard_normal((3, 3))
            tr = np.trace(log_principal(a))
            assert -np.pi * 3 < tr.imag <= np.pi * 3

    def test_zero_eigenvalue_raises(self):
        with pytest.raises(SingularInput):
            log_principal(np.diag([1.0, 0.0]))

    def test_defective_matrix_raises(self):
        with pytest.raises(NonDiagonalizable):
            log_principal(np.array([[1.0, 1.0], [0.0, 1.0]]))


class TestExpm:
    def test_zero_matrix(self):
        assert np.array_equal(expm(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        m = expm(np.diag([1.5, -0.5]))
        assert np.allclose(m, np.diag([np.exp(1.5), np.exp(-0.5)]),
                           rtol=1e-13)

    def test_inverse_round_trip(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            a = rng.standard_normal((4, 4))
            a *= 5.0 / max(np.linalg.norm(a), 1e-9)
            product = expm(a) @ expm(-a)
            assert np.abs(product - np.eye(4)).max() < 1e-10

    def test_rotation_generator(self):
        t = 0.7
        m = expm(t * np.array([[0.0, 1.0], [-1.0, 0.0]]))
        expected = np.array([[np.cos(t), np.sin(t)],
                             [-np.sin(t), np.cos(t)]])
        assert np.allclose(m, expected, atol=1e-14)
