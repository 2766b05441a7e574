import numpy as np
import pytest

import ardw
from ardw.errors import (
    BadVariance,
    NotPositiveDefinite,
    UnstableRho,
    UnstableTheta,
    ZeroTheta,
)
from ardw.limit_theory import build_B_parts, spectral_radius

from conftest import random_stable_params


def params(theta, rho, sigma2=1.0):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return ardw.ModelParams(p=len(theta), theta=theta, rho=rho, sigma2=sigma2)


class TestStability:
    def test_well_inside_region(self):
        ardw.check_stability(params([0.5], 0.3))

    def test_theta_norm_too_large(self):
        with pytest.raises(UnstableTheta):
            ardw.check_stability(params([0.6, 0.5], 0.0))

    def test_rho_boundary_excluded(self):
        with pytest.raises(UnstableRho):
            ardw.check_stability(params([0.5], 1.0))

    def test_zero_theta(self):
        with pytest.raises(ZeroTheta):
            ardw.check_stability(params([0.0], 0.3))

    def test_bad_variance(self):
        with pytest.raises(BadVariance):
            ardw.check_stability(params([0.5], 0.3, sigma2=0.0))


class TestBetaAlpha:
    def test_beta_p1(self):
        assert ardw.beta_vector(params([0.4], 0.3)) == pytest.approx([0.7])

    def test_beta_rho_zero_collapses(self, rng):
        for _ in range(10):
            prm = random_stable_params(rng)
            prm0 = ardw.ModelParams(p=prm.p, theta=prm.theta, rho=0.0)
            assert ardw.beta_vector(prm0) == pytest.approx(prm.theta)

    def test_beta_p2_hand(self):
        # (0.4 + 0.2, -0.3 - 0.4*0.2)
        beta = ardw.beta_vector(params([0.4, -0.3], 0.2))
        assert beta == pytest.approx([0.6, -0.38])

    def test_alpha_rho_zero(self):
        assert ardw.alpha_scalar(params([0.5, 0.2], 0.0)) == 1.0

    def test_alpha_p1(self):
        assert ardw.alpha_scalar(params([0.5], 0.3)) == pytest.approx(
            1.0 / (1.0 - 0.0225), rel=1e-14
        )

    def test_alpha_p2(self):
        assert ardw.alpha_scalar(params([0.4, -0.3], 0.2)) == pytest.approx(
            1.0 / (1.0 - 0.0036), rel=1e-14
        )


class TestSystemMatrix:
    def test_p1_entries(self):
        th, rho = 0.5, 0.3
        B = ardw.build_B(params([th], rho))
        b = th + rho
        expected = np.array(
            [
                [1.0, -b, th * rho],
                [-b, 1.0 + th * rho, 0.0],
                [th * rho, -b, 1.0],
            ]
        )
        assert B == pytest.approx(expected)

    def test_rho_zero_is_plain_part(self, rng):
        for _ in range(10):
            prm = random_stable_params(rng)
            prm0 = ardw.ModelParams(p=prm.p, theta=prm.theta, rho=0.0)
            B1, _ = build_B_parts(prm0)
            assert ardw.build_B(prm0) == pytest.approx(B1)

    def test_decomposition(self, rng):
        for _ in range(50):
            prm = random_stable_params(rng)
            B1, B2 = build_B_parts(prm)
            assert ardw.build_B(prm) == pytest.approx(B1 + prm.rho * B2, abs=1e-14)

    def test_defining_residual(self, rng):
        for _ in range(20):
            prm = random_stable_params(rng)
            B = ardw.build_B(prm)
            lam = ardw.solve_lambda(B)
            e = np.zeros(prm.p + 2)
            e[0] = 1.0
            assert np.linalg.norm(B @ lam - e, np.inf) <= 1e-10 * np.linalg.norm(
                lam, np.inf
            )


class TestLambda:
    def test_pure_ar1_closed_form(self):
        lam = ardw.solve_lambda(ardw.build_B(params([0.5], 0.0)))
        assert lam == pytest.approx([4.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0], rel=1e-12)

    def test_against_lyapunov_oracle(self, rng):
        for _ in range(50):
            prm = random_stable_params(rng)
            lam = ardw.solve_lambda(ardw.build_B(prm))
            oracle = ardw.lyapunov_lambda_oracle(prm, prm.p + 1)
            assert np.max(np.abs(lam - oracle)) < 1e-9

    def test_lambda0_positive(self, rng):
        for _ in range(20):
            prm = random_stable_params(rng)
            assert ardw.solve_lambda(ardw.build_B(prm))[0] > 0.0


class TestToeplitz:
    def test_scalar_case(self):
        lam = np.array([2.0, 0.5])
        np.testing.assert_allclose(ardw.toeplitz_delta(lam, 1), [[2.0]])

    def test_ar1_2x2(self):
        lam = ardw.solve_lambda(ardw.build_B(params([0.5], 0.0)))
        expected = np.array([[4.0, 2.0], [2.0, 4.0]]) / 3.0
        assert ardw.toeplitz_delta(lam, 2) == pytest.approx(expected, rel=1e-12)

    def test_positive_definite_random(self, rng):
        for _ in range(30):
            prm = random_stable_params(rng)
            lam = ardw.solve_lambda(ardw.build_B(prm))
            for m in (prm.p, prm.p + 1):
                delta = ardw.toeplitz_delta(lam, m)
                assert np.linalg.eigvalsh(delta)[0] > 0.0

    def test_inconsistent_lambda_rejected(self):
        with pytest.raises(NotPositiveDefinite):
            ardw.toeplitz_delta(np.array([1.0, 2.0]), 2)


class TestCompanion:
    def test_p1_rho_zero(self):
        C = ardw.companion_matrix(params([0.5], 0.0))
        np.testing.assert_allclose(C, [[0.5, 0.0], [1.0, 0.0]])
        assert spectral_radius(C) == pytest.approx(0.5, abs=1e-10)

    def test_p1_eigenvalues_factor(self):
        # eigenvalues are rho and the AR root theta
        th, rho = 0.6, -0.4
        eig = np.linalg.eigvals(ardw.companion_matrix(params([th], rho)))
        assert sorted(np.real(eig)) == pytest.approx(sorted([rho, th]), abs=1e-12)

    def test_spectral_radius_below_one(self, rng):
        for _ in range(30):
            prm = random_stable_params(rng)
            C = ardw.companion_matrix(prm)
            assert np.max(np.abs(np.linalg.eigvals(C))) < 1.0


class TestLyapunovOracle:
    def test_ar1_closed_form(self):
        lam = ardw.lyapunov_lambda_oracle(params([0.5], 0.0), 2)
        assert lam == pytest.approx([4.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0], rel=1e-12)

    def test_sigma2_free(self):
        a = ardw.lyapunov_lambda_oracle(params([0.4, -0.3], 0.2, sigma2=1.0), 3)
        b = ardw.lyapunov_lambda_oracle(params([0.4, -0.3], 0.2, sigma2=7.0), 3)
        assert a == pytest.approx(b, rel=1e-13)

    def test_linear_recursion_relations(self, rng):
        # lam_d = beta . (lam_{d-1}..lam_{d-p}) - tail * lam_{d-p-1} + delta_d
        for _ in range(20):
            prm = random_stable_params(rng)
            p = prm.p
            lam = ardw.lyapunov_lambda_oracle(prm, p + 1)
            beta = ardw.beta_vector(prm)
            tail = prm.theta[-1] * prm.rho
            for d in range(p + 2):
                lags = np.array([lam[abs(d - i)] for i in range(1, p + 1)])
                rhs = beta @ lags - tail * lam[abs(d - p - 1)] + (1.0 if d == 0 else 0.0)
                assert lam[d] == pytest.approx(rhs, abs=1e-10)


class TestLimitSummary:
    def test_p1_theta_star(self):
        s = ardw.limit_summary(params([0.5], 0.3))
        assert s.theta_star[0] == pytest.approx(0.8 / 1.15, rel=1e-14)

    def test_p1_closed_forms_grid(self):
        grid = [-0.9, -0.5, -0.1, 0.1, 0.5, 0.9]
        for th in grid:
            for rho in grid:
                s = ardw.limit_summary(params([th], rho))
                ts = (th + rho) / (1.0 + th * rho)
                sig = (1 - th**2) * (1 - th * rho) * (1 - rho**2) / (1 + th * rho) ** 3
                s2r = (
                    (1 - th * rho)
                    / (1 + th * rho) ** 3
                    * (
                        (th + rho) ** 2 * (1 + th * rho) ** 2
                        + (th * rho) ** 2 * (1 - th**2) * (1 - rho**2)
                    )
                )
                assert s.theta_star[0] == pytest.approx(ts, abs=1e-12)
                assert s.rho_star == pytest.approx(th * rho * ts, abs=1e-12)
                assert s.Sigma_theta[0, 0] == pytest.approx(sig, abs=1e-12)
                assert s.sigma2_rho == pytest.approx(s2r, abs=1e-12)

    def test_rho_zero_reductions(self, rng):
        for _ in range(10):
            prm = random_stable_params(rng)
            prm0 = ardw.ModelParams(p=prm.p, theta=prm.theta, rho=0.0)
            s = ardw.limit_summary(prm0)
            assert s.theta_star == pytest.approx(prm.theta, rel=1e-12)
            assert s.rho_star == 0.0
            assert s.d_star == 2.0
            assert s.Sigma_theta == pytest.approx(np.linalg.inv(s.Delta_p), rel=1e-10)
            # variance of the serial correlation estimate collapses to theta_p^2
            assert s.sigma2_rho == pytest.approx(prm.theta[-1] ** 2, rel=1e-10)

    def test_consistency_relations(self, rng):
        for _ in range(30):
            prm = random_stable_params(rng)
            s = ardw.limit_summary(prm)
            p = prm.p
            J = np.fliplr(np.eye(p))
            assert s.d_star == pytest.approx(2.0 * (1.0 - s.rho_star), rel=1e-14)
            assert s.sigma2_D == pytest.approx(4.0 * s.sigma2_rho, rel=1e-14)
            assert s.Sigma_theta == pytest.approx(s.Sigma_theta.T, abs=1e-12)
            assert s.Sigma_theta == pytest.approx(J @ s.Sigma_theta @ J, abs=1e-12)
            assert s.Delta_p1[:p, :p] == pytest.approx(s.Delta_p)
            # coefficient-vector identity between the Toeplitz matrix and
            # the limiting estimate
            assert s.Delta_p @ s.theta_star == pytest.approx(
                s.Lambda[1 : p + 1], abs=1e-9
            )

    def test_gamma_blocks(self, rng):
        for _ in range(30):
            prm = random_stable_params(rng)
            s = ardw.limit_summary(prm)
            p = prm.p
            J = np.fliplr(np.eye(p))
            e = np.zeros(p)
            e[0] = 1.0
            assert s.Gamma[:p, :p] == pytest.approx(s.Sigma_theta, abs=1e-9)
            off = prm.theta[-1] * prm.rho * (J @ s.Sigma_theta @ e)
            assert s.Gamma[:p, p] == pytest.approx(off, abs=1e-9)

    def test_gamma_singular_flag(self):
        # theta* last component vanishes exactly when theta = -rho at order 1
        assert ardw.limit_summary(params([0.5], -0.5)).gamma_singular
        assert not ardw.limit_summary(params([0.5], 0.3)).gamma_singular
