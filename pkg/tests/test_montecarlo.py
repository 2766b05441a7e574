import json

import numpy as np
import pytest

import ardw
from ardw.montecarlo import DEFAULT_SUITE, _theta_hat_path


def params(theta, rho, sigma2=1.0):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return ardw.ModelParams(p=len(theta), theta=theta, rho=rho, sigma2=sigma2)


def small_config(**kw):
    base = dict(
        params_list=(params([0.5], 0.0), params([0.5], 0.5)),
        n_list=(100,),
        reps=200,
        master_seed=42,
    )
    base.update(kw)
    return ardw.StudyConfig(**base)


class TestStudyConfig:
    def test_reps_floor(self):
        with pytest.raises(ValueError):
            small_config(reps=50)

    def test_level_range(self):
        with pytest.raises(ValueError):
            small_config(level=1.5)

    def test_from_json(self, tmp_path):
        raw = {
            "params_list": [
                {"p": 1, "theta": [0.5], "rho": 0.0},
                {"p": 2, "theta": [0.4, -0.3], "rho": -0.5, "sigma2": 2.0},
            ],
            "n_list": [100, 300],
            "reps": 250,
            "level": 0.1,
            "master_seed": 7,
            "noise": {"family": "uniform"},
            "tests": ["dw_chi2", "durbin_h"],
        }
        path = tmp_path / "config.json"
        path.write_text(json.dumps(raw))
        cfg = ardw.StudyConfig.from_json(path)
        assert cfg.reps == 250
        assert cfg.level == 0.1
        assert cfg.n_list == (100, 300)
        assert cfg.tests == ("dw_chi2", "durbin_h")
        assert cfg.noise.family == "uniform"
        assert cfg.params_list[1].sigma2 == 2.0
        assert cfg.params_list[1].theta == pytest.approx([0.4, -0.3])

    def test_default_suite_is_stable(self):
        for prm in DEFAULT_SUITE:
            ardw.check_stability(prm)


class TestSizePowerStudy:
    def test_table_shape_and_bounds(self):
        table = ardw.size_power_study(small_config())
        assert len(table.rows) == 2 * 1 * 5
        for r in table.rows:
            assert 0.0 <= r["rejection_rate"] <= 1.0
            assert 0.0 <= r["inapplicable_rate"] <= 1.0
            assert r["rejection_rate"] + r["inapplicable_rate"] <= 1.0 + 1e-12
            assert r["reps"] == 200

    def test_size_within_monte_carlo_error(self):
        cfg = small_config(n_list=(500,), reps=400)
        table = ardw.size_power_study(cfg)
        r = table.rate(0, 500, "dw_chi2")
        stderr = np.sqrt(0.05 * 0.95 / 400)
        assert abs(r - 0.05) <= 4.0 * stderr

    def test_power_exceeds_size(self):
        cfg = small_config(n_list=(500,), reps=300)
        table = ardw.size_power_study(cfg)
        assert table.rate(1, 500, "dw_chi2") > table.rate(0, 500, "dw_chi2") + 0.3

    def test_worker_count_does_not_change_table(self):
        cfg = small_config(reps=120)
        serial = ardw.size_power_study(cfg, workers=1).to_csv()
        parallel = ardw.size_power_study(cfg, workers=4).to_csv()
        assert serial == parallel

    def test_master_seed_changes_table(self):
        a = ardw.size_power_study(small_config(master_seed=1)).to_csv()
        b = ardw.size_power_study(small_config(master_seed=2)).to_csv()
        assert a != b

    def test_csv_and_json_outputs(self, tmp_path):
        table = ardw.size_power_study(small_config(reps=100))
        csv_path = tmp_path / "table.csv"
        json_path = tmp_path / "table.json"
        table.to_csv(csv_path)
        table.to_json(json_path)
        header = csv_path.read_text().splitlines()[0]
        assert header == (
            "params_id,n,test_name,rejection_rate,inapplicable_rate,mc_stderr,reps"
        )
        rows = json.loads(json_path.read_text())
        assert len(rows) == len(table.rows)
        assert rows[0]["test_name"] == "dw_chi2"


class TestCltDiagnostic:
    def test_joint_covariance_converges(self):
        prm = params([0.5], 0.3)
        report = ardw.clt_diagnostic(prm, n=2000, reps=1500, seed=0)
        assert report["kept"] == 1500
        assert not report["gamma_singular"]
        assert report["rel_frobenius_joint"] < 0.15
        assert report["rel_error_var_dw"] < 0.15

    def test_singular_joint_skipped(self):
        # theta = -rho makes the limiting serial correlation vanish and the
        # joint asymptotic covariance singular
        report = ardw.clt_diagnostic(params([0.5], -0.5), n=500, reps=200, seed=1)
        assert report["gamma_singular"]
        assert np.isnan(report["rel_frobenius_joint"])


class TestRateDiagnostic:
    def test_theta_hat_path_matches_full_fits(self):
        traj = ardw.simulate(params([0.4, -0.3], 0.2), 200, seed=6)
        stages, theta = _theta_hat_path(traj.x, 2, start=50)
        for k in (50, 120, 200):
            i = int(np.where(stages == k)[0][0])
            ref, _ = ardw.ols_theta(traj.x[: k + 1], 2)
            assert theta[i] == pytest.approx(ref, abs=1e-10)

    def test_qsl_and_lil_behave(self):
        # single-path fluctuations of the log-averaged outer product are
        # large, so average the final matrix over several independent paths
        prm = params([0.5], 0.3)
        limits = ardw.limit_summary(prm)
        mats = []
        for seed in range(8):
            report = ardw.rate_diagnostic(prm, n_max=200_000, seed=seed)
            rows = report["checkpoints"]
            assert rows
            mats.append(np.array(rows[-1]["qsl_matrix"]))
            # iterated-logarithm normalization stays within a generous band
            for row in rows:
                assert row["lil_over_trace"] < 10.0
        mean_qsl = np.mean(mats, axis=0)
        rel = np.linalg.norm(mean_qsl - limits.Sigma_theta) / np.linalg.norm(
            limits.Sigma_theta
        )
        assert rel < 0.35

    def test_report_is_json_serializable(self):
        report = ardw.rate_diagnostic(params([0.5], 0.0), n_max=5000, seed=1)
        json.dumps(report)
