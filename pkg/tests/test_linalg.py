import math

import numpy as np
import pytest

from polargd.exceptions import NonFiniteInputError, NotOrthogonalError
from polargd.geometry import haar_sample
from polargd.linalg import (
    exp_skew,
    orthogonal_schur,
    skew_part,
    spectral_norm,
    svd_factors,
)

from conftest import rotation


class TestSvd:
    def test_identity(self):
        f = svd_factors(np.eye(3))
        assert np.allclose(f.sigma, [1, 1, 1])
        # U and V agree up to the same orthogonal factor, so U V^T is I
        assert np.allclose(f.u @ f.v.T, np.eye(3), atol=1e-14)

    def test_diagonal(self):
        f = svd_factors(np.diag([1.0, 2.0]))
        assert np.allclose(f.sigma, [2.0, 1.0])

    def test_reconstruction_random(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 21))
            c = rng.standard_normal((n, n))
            f = svd_factors(c)
            assert np.all(np.diff(f.sigma) <= 0)
            assert np.all(f.sigma >= 0)
            err = np.linalg.norm(f.reconstruct() - c)
            assert err <= 1e-12 * max(1.0, np.linalg.norm(c))

    def test_sign_convention_deterministic(self, rng):
        c = rng.standard_normal((6, 6))
        f1 = svd_factors(c)
        f2 = svd_factors(c.copy())
        assert np.array_equal(f1.u, f2.u)
        assert np.array_equal(f1.v, f2.v)
        for j in range(6):
            k = int(np.argmax(np.abs(f1.u[:, j])))
            assert f1.u[k, j] > 0

    def test_nonfinite_rejected(self):
        c = np.eye(2)
        c[0, 0] = np.nan
        with pytest.raises(NonFiniteInputError):
            svd_factors(c)


class TestSpectralNorm:
    def test_identity(self):
        assert spectral_norm(np.eye(4)) == pytest.approx(1.0, abs=1e-14)

    def test_diagonal(self):
        assert spectral_norm(np.diag([1.0, 2.0])) == pytest.approx(2.0, abs=1e-14)

    def test_skew_two_by_two(self):
        # singular values of [[0, -t], [t, 0]] are (|t|, |t|)
        theta = 0.37
        assert spectral_norm(np.array([[0.0, -theta], [theta, 0.0]])) == pytest.approx(
            theta, abs=1e-14
        )


class TestOrthogonalSchur:
    def test_identity(self):
        canon = orthogonal_schur(np.eye(3))
        assert np.allclose(canon.phi, 0.0)
        assert canon.det_sign == 1
        assert canon.r_max == 0.0

    def test_rotation_angle_pair(self):
        canon = orthogonal_schur(rotation(0.7))
        assert sorted(canon.phi) == pytest.approx([-0.7, 0.7], abs=1e-12)
        assert canon.r_max == pytest.approx(0.7, abs=1e-12)

    def test_paired_minus_ones(self):
        q = np.diag([1.0, -1.0, -1.0])
        canon = orthogonal_schur(q)
        assert canon.det_sign == 1
        sizes = sorted((b.size, b.angle) for b in canon.blocks)
        assert sizes == [(1, 0.0), (2, math.pi)]
        pi_block = [b for b in canon.blocks if b.size == 2][0]
        assert pi_block.start == 1  # pi rotation on coordinates 2-3
        assert np.allclose(canon.reconstruct(), q, atol=1e-12)
        assert np.sort(canon.phi) == pytest.approx([0.0, math.pi, math.pi])

    def test_nonadjacent_minus_ones_are_paired(self):
        q = np.diag([-1.0, 1.0, -1.0])
        canon = orthogonal_schur(q)
        assert canon.det_sign == 1
        assert sorted(b.size for b in canon.blocks) == [1, 2]
        assert np.allclose(canon.reconstruct(), q, atol=1e-12)

    def test_lone_minus_one(self):
        canon = orthogonal_schur(np.diag([1.0, 1.0, -1.0]))
        assert canon.det_sign == -1
        lone = [b for b in canon.blocks if b.size == 1 and b.angle == math.pi]
        assert len(lone) == 1

    def test_reconstruction_haar(self, rng):
        for n in (2, 5, 17, 50):
            q = haar_sample(n, rng)
            canon = orthogonal_schur(q)
            assert np.linalg.norm(canon.reconstruct() - q) <= 1e-10

    def test_angle_pairing_and_pi_parity(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 13))
            q = haar_sample(n, rng)
            if rng.integers(2):
                q = q.copy()
                q[:, 0] = -q[:, 0]  # visit both components
            canon = orthogonal_schur(q)
            det = float(np.linalg.det(q))
            n_pi_entries = int(np.sum(np.abs(np.abs(canon.phi) - math.pi) < 1e-12))
            assert (n_pi_entries % 2 == 1) == (det < 0)
            interior = np.array(
                [r for r in canon.phi if 1e-12 < abs(r) < math.pi - 1e-12]
            )
            # strictly interior angles come in +- couples
            assert abs(interior.sum()) <= 1e-9
            assert len(interior) % 2 == 0

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NotOrthogonalError):
            orthogonal_schur(np.diag([1.0, 2.0]))


class TestExpSkew:
    def test_zero(self):
        assert np.allclose(exp_skew(np.zeros((3, 3))), np.eye(3))

    def test_two_by_two_closed_form(self):
        theta = 1.234
        omega = np.array([[0.0, -theta], [theta, 0.0]])
        assert np.allclose(exp_skew(omega), rotation(theta), atol=1e-14)

    def test_orthogonal_output(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 31))
            omega = skew_part(rng.standard_normal((n, n)))
            e = exp_skew(omega)
            assert np.linalg.norm(e.T @ e - np.eye(n)) <= 1e-12

    def test_one_by_one(self):
        assert exp_skew(np.zeros((1, 1))) == pytest.approx(1.0)
