import numpy as np
import pytest

from polargd.baselines import compare_solvers, polar_via_newton, polar_via_svd
from polargd.exceptions import NoConvergenceError, SingularInputError
from polargd.geometry import haar_sample
from polargd.objective import make_problem

from conftest import rotation


class TestPolarViaSvd:
    def test_symmetric_positive_definite(self, rng):
        a = rng.standard_normal((4, 4))
        c = a.T @ a + 4 * np.eye(4)
        f = polar_via_svd(c)
        assert np.allclose(f.x, np.eye(4), atol=1e-10)
        assert np.allclose(f.p, c, atol=1e-10)

    def test_orthogonal_input(self):
        c = rotation(0.8)
        f = polar_via_svd(c)
        assert np.allclose(f.x, c, atol=1e-12)
        assert np.allclose(f.p, np.eye(2), atol=1e-12)

    def test_sign_split_diagonal(self):
        f = polar_via_svd(np.diag([-2.0, 3.0]))
        assert np.allclose(f.x, np.diag([-1.0, 1.0]), atol=1e-12)
        assert np.allclose(f.p, np.diag([2.0, 3.0]), atol=1e-12)

    def test_factor_invariants(self, rng):
        for _ in range(50):
            n = int(rng.integers(2, 9))
            c = rng.standard_normal((n, n))
            f = polar_via_svd(c)
            assert np.linalg.norm(f.x @ f.p - c) <= 1e-10 * np.linalg.norm(c)
            assert np.linalg.norm(f.p - f.p.T) <= 1e-10
            assert np.linalg.eigvalsh(f.p).min() >= -1e-10


class TestPolarViaNewton:
    def test_orthogonal_fixed_point(self):
        c = rotation(1.2)
        f = polar_via_newton(c)
        assert f.iterations == 1
        assert np.allclose(f.x, c, atol=1e-12)

    def test_diagonal_quadratic_tail(self):
        # scalar Newton x <- (x + 1/x)/2 on each singular value
        c = np.diag([1.0, 10.0])
        f = polar_via_newton(c, tol=1e-14)
        assert np.allclose(f.x, np.eye(2), atol=1e-12)
        errs = []
        xk = c.copy()
        for _ in range(f.iterations):
            errs.append(np.linalg.norm(xk - np.eye(2)))
            xk = 0.5 * (xk + np.linalg.inv(xk).T)
        late = [e for e in errs if 1e-14 < e < 1e-2]
        for a, b in zip(late, late[1:]):
            assert b <= a**1.5  # at least superlinear once close

    def test_agreement_with_svd(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 11))
            c = rng.standard_normal((n, n)) + 3 * np.eye(n)
            assert np.linalg.norm(polar_via_newton(c).x - polar_via_svd(c).x) <= 1e-8

    def test_ill_conditioned_agreement(self, rng):
        for cond in (1e2, 1e4, 1e6):
            n = 8
            u, v = haar_sample(n, rng), haar_sample(n, rng)
            c = (u * np.geomspace(1.0, 1.0 / cond, n)) @ v.T
            assert np.linalg.norm(polar_via_newton(c).x - polar_via_svd(c).x) <= 1e-8

    def test_singular_rejected(self, rng):
        u, v = haar_sample(3, rng), haar_sample(3, rng)
        c = (u * np.array([2.0, 1.0, 0.0])) @ v.T
        with pytest.raises(SingularInputError):
            polar_via_newton(c)

    def test_no_convergence(self):
        with pytest.raises(NoConvergenceError):
            polar_via_newton(np.diag([1.0, 10.0]), tol=1e-14, max_iters=2)


class TestOracleIdentity:
    def test_procrustes_optimum_is_polar_of_transpose(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            u, v = haar_sample(n, rng), haar_sample(n, rng)
            spec = np.sort(rng.uniform(0.05, 3.0, n))[::-1]
            c = (u * spec) @ v.T
            p = make_problem(c)
            assert np.linalg.norm(p.x_star - polar_via_svd(c.T).x) <= 1e-10

    def test_best_approximation(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 7))
            c = rng.standard_normal((n, n))
            x = polar_via_svd(c).x
            base = np.linalg.norm(c - x)
            for _ in range(20):
                q = haar_sample(n, rng)
                if np.linalg.det(q) < 0:
                    q[:, 0] = -q[:, 0]
                assert base <= np.linalg.norm(c - q) + 1e-9


class TestCompareSolvers:
    def test_identity(self):
        record = compare_solvers(np.eye(3))
        names = [m.method for m in record.methods]
        assert names == ["svd", "rgd", "newton"]
        rgd = record.methods[1]
        assert rgd.iterations == 0
        assert rgd.residual_to_svd <= 1e-12

    def test_ill_conditioned_agreement(self, rng):
        n = 20
        u, v = haar_sample(n, rng), haar_sample(n, rng)
        c = (u * np.geomspace(1.0, 1e-3, n)) @ v.T
        record = compare_solvers(c, grad_tol=1e-11)
        for m in record.methods:
            assert m.residual_to_svd <= 1e-7

    def test_singular_excludes_newton(self, rng):
        u, v = haar_sample(4, rng), haar_sample(4, rng)
        c = (u * np.array([2.0, 1.0, 0.5, 0.0])) @ v.T
        record = compare_solvers(c)
        assert record.singular
        assert [m.method for m in record.methods] == ["svd", "rgd"]
        assert abs(record.f_gap_rgd) <= 1e-7

    def test_record_serializes(self, rng):
        record = compare_solvers(np.eye(2))
        doc = record.to_record()
        assert doc["n"] == 2
        assert isinstance(doc["methods"], list)
