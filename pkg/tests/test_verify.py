import math

import numpy as np
import pytest
from scipy.special import ndtr

from nilelab.verify import (MCConfig, VerificationError, VerificationReport,
                            GridPointResult, ZeroMeanSpec,
                            cond_moment_dependence, fisher_info, identity,
                            rao_zero_cov, run_grid, variance_table,
                            verify_ancillarity, verify_first_order,
                            verify_independence, zero_mean_from_ancillary)


def _cfg(seed=0, replicates=20_000, grid=(0.5, 2.0), n=5, workers=1):
    return MCConfig(master_seed=seed, replicates=replicates, theta_grid=grid,
                    n=n, workers=workers)


class TestMCConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            MCConfig(0, 0, (1.0,), 5)
        with pytest.raises(ValueError):
            MCConfig(0, 10, (1.0,), 0)
        with pytest.raises(ValueError):
            MCConfig(0, 10, (1.0,), 5, workers=0)

    def test_grid_coerced_to_floats(self):
        cfg = MCConfig(0, 10, (1, 2), 5)
        assert cfg.theta_grid == (1.0, 2.0)


class TestRunGridDeterminism:
    @pytest.mark.parametrize("workers", [2, 4])
    def test_bit_identical_across_worker_counts(self, workers):
        base = _cfg(seed=7, replicates=5_000)
        par = _cfg(seed=7, replicates=5_000, workers=workers)
        a, _ = run_grid("nile", base.theta_grid, base.n, 1.0, base, ["ancillary", "sample_mean"])
        b, _ = run_grid("nile", par.theta_grid, par.n, 1.0, par, ["ancillary", "sample_mean"])
        for pa, pb in zip(a, b):
            for k in pa:
                assert np.array_equal(pa[k], pb[k])

    def test_seed_changes_output(self):
        a, _ = run_grid("nile", (1.0,), 5, 1.0, _cfg(seed=1, grid=(1.0,)), ["ancillary"])
        b, _ = run_grid("nile", (1.0,), 5, 1.0, _cfg(seed=2, grid=(1.0,)), ["ancillary"])
        assert not np.array_equal(a[0]["ancillary"], b[0]["ancillary"])

    def test_replicate_count_respected(self):
        out, _ = run_grid("uniform_location", (0.0,), 3, 1.0,
                          _cfg(grid=(0.0,), replicates=1234), ["ancillary"])
        assert out[0]["ancillary"].size == 1234


class TestAncillarity:
    def test_nile_product_invariant(self):
        rep = verify_ancillarity("nile", "nile_product", _cfg(grid=(0.5, 1.0, 4.0)))
        assert rep.verdict == "pass"
        assert rep.statistics["max_ks"] < rep.statistics["ks_threshold"]

    def test_normal_cv_ratio_invariant(self):
        rep = verify_ancillarity("normal_cv", "normal_cv_ratio",
                                 _cfg(grid=(0.5, 2.0), n=10))
        assert rep.verdict == "pass"

    def test_uniform_range_invariant(self):
        rep = verify_ancillarity("uniform_location", "uniform_range",
                                 _cfg(grid=(-2.0, 0.0, 3.0)))
        assert rep.verdict == "pass"

    def test_negative_control_sample_mean(self):
        # the sample mean is emphatically not ancillary
        rep = verify_ancillarity("nile", "sample_mean", _cfg())
        assert rep.verdict == "fail"

    def test_needs_two_grid_points(self):
        with pytest.raises(ValueError):
            verify_ancillarity("nile", "nile_product", _cfg(grid=(1.0,)))


class TestFirstOrder:
    def test_h_matches_closed_form(self):
        rep = verify_first_order("bivariate_gaussian_corr", "first_order_h",
                                 _cfg(grid=(-0.9, 0.0, 0.9), replicates=50_000, n=1))
        assert rep.verdict == "pass"
        assert rep.statistics["target_mean"] == pytest.approx(
            2.0 * (2.0 * ndtr(1.0) - 1.0))

    def test_positive_indicator_matches_cdf(self):
        rep = verify_first_order("normal_cv", "positive_indicator",
                                 _cfg(grid=(0.5, 1.0, 2.0), n=1))
        assert rep.verdict == "pass"
        assert rep.statistics["target_mean"] == pytest.approx(ndtr(1.0))

    def test_negative_control_mean(self):
        # E xbar = theta varies along the grid
        rep = verify_first_order("normal_unit", "sample_mean", _cfg())
        assert rep.verdict == "fail"


class TestIndependence:
    def test_mean_and_sd_independent_for_normal(self):
        rep = verify_independence("sample_mean", "sample_sd", "normal_cv",
                                  _cfg(grid=(1.0,), n=10, replicates=50_000))
        assert rep.verdict == "pass"
        assert rep.statistics["min_p_value"] >= rep.statistics["alpha"]

    def test_mle_depends_on_ancillary(self):
        rep = verify_independence("nile_mle", "nile_product", "nile",
                                  _cfg(grid=(1.0,), n=1, replicates=50_000))
        assert rep.verdict == "fail"

    def test_mean_independent_of_range_conditional_claim_fails(self):
        # xbar and the range are dependent for uniform samples
        rep = verify_independence("sample_mean", "uniform_range",
                                  "uniform_location",
                                  _cfg(grid=(0.0,), n=2, replicates=50_000))
        assert rep.verdict == "fail"


class TestRaoZeroCov:
    def test_positive_control_complete_family(self):
        # N(theta, 1): complete sufficient statistic, condition must hold
        u = ZeroMeanSpec(id="first-contrast", source="diff12",
                         transform=identity, center=0.0, center_se=0.0)
        rep = rao_zero_cov("sample_mean", u, "normal_unit",
                           _cfg(grid=(0.5, 1.0, 2.0), replicates=50_000, n=2))
        assert rep.verdicts["zero-covariance"] == "pass"

    def test_nile_mle_violates(self):
        u = zero_mean_from_ancillary("log-of-ancillary", "ancillary", np.log, "nile",
                                     n=1, seed=11, calibration_n=200_000)
        rep = rao_zero_cov("nile_mle", u, "nile",
                           _cfg(grid=(0.5, 1.0, 2.0), replicates=100_000, n=1))
        assert rep.verdicts["zero-covariance"] == "fail"
        assert rep.statistics["max_abs_z"] > 4.0

    def test_self_check_aborts_on_bad_center(self):
        u = ZeroMeanSpec(id="mis-centered", source="ancillary", transform=identity,
                         center=0.0, center_se=1e-6)  # E W = 1, not 0
        with pytest.raises(VerificationError):
            rao_zero_cov("nile_mle", u, "nile", _cfg(grid=(1.0,), n=1))

    def test_power_validated(self):
        u = ZeroMeanSpec(id="x", source="ancillary", transform=identity,
                         center=1.0, center_se=0.0)
        with pytest.raises(ValueError):
            rao_zero_cov("nile_mle", u, "nile", _cfg(grid=(1.0,), n=1), power=0)

    def test_calibration_center_near_known_value(self):
        # E log(xbar ybar) at n = 1 is -2 * Euler-Mascheroni
        u = zero_mean_from_ancillary("log-of-ancillary", "ancillary", np.log, "nile",
                                     n=1, seed=3, calibration_n=400_000)
        gamma = 0.5772156649015329
        assert abs(u.center + 2.0 * gamma) < 4.0 * u.center_se


class TestCondMomentDependence:
    def test_star_estimator_second_moment_varies(self):
        rep = cond_moment_dependence("nile_star", "nile", 1.0,
                                     _cfg(grid=(1.0,), n=1, replicates=200_000),
                                     overlay=True)
        assert rep.verdicts["no-dependence"] == "fail"
        # quadrature overlay tracks the bin means
        for p in rep.points:
            assert abs(p.statistics["prediction_z"]) < 4.0

    def test_fixture_shows_no_dependence(self):
        rep = cond_moment_dependence("sample_mean", "normal_unit", 1.0,
                                     _cfg(grid=(1.0,), n=2, replicates=100_000),
                                     w_stat="diff12")
        assert rep.verdicts["no-dependence"] == "pass"


class TestFisherInfo:
    def test_matches_closed_form(self):
        rep = fisher_info(1.0, 1.0, _cfg(grid=(1.0,), replicates=400_000))
        assert rep.verdict == "pass"
        assert rep.statistics["closed_form"] == pytest.approx(3.0)
        assert rep.statistics["info_ratio"] == pytest.approx(3.0)

    def test_scales_with_theta_and_c(self):
        rep = fisher_info(2.0, 0.5, _cfg(grid=(2.0,), replicates=400_000))
        assert rep.verdict == "pass"
        assert rep.statistics["closed_form"] == pytest.approx(6.0 / 4.0)
        assert rep.statistics["info_ratio"] == pytest.approx(2 * 0.25 + 1)


class TestVarianceTable:
    def test_nile_estimators(self):
        rep = variance_table(["nile_mle", "nile_star"], "nile",
                             _cfg(grid=(1.0, 2.0), n=5, replicates=50_000))
        assert rep.verdict == "pass"
        for p in rep.points:
            for name in ("nile_mle", "nile_star"):
                assert f"{name}.bias" in p.estimates
                assert f"{name}.variance" in p.estimates
                assert f"{name}.mse" in p.estimates
                assert p.estimates[f"{name}.variance"] > 0

    def test_star_estimator_unbiased_in_table(self):
        rep = variance_table(["nile_star"], "nile",
                             _cfg(grid=(2.0,), n=5, replicates=100_000))
        p = rep.points[0]
        assert abs(p.estimates["nile_star.bias"]) < 3 * p.se["nile_star.bias"]


class TestReportStructure:
    def test_json_dict_keys(self):
        rep = verify_ancillarity("nile", "nile_product",
                                 _cfg(replicates=2_000))
        d = rep.to_json_dict()
        for key in ("claim", "config", "grid", "estimates", "se", "statistics",
                    "verdicts", "verdict", "degenerate_count", "seed", "version"):
            assert key in d
        assert d["seed"] == 0
        assert d["config"]["replicates"] == 2_000

    def test_verdict_ordering(self):
        def mk(verdicts):
            return VerificationReport(claim="x", config={}, grid=[], points=[],
                                      statistics={}, verdicts=verdicts, seed=0)
        assert mk({"a": "pass", "b": "fail"}).verdict == "fail"
        assert mk({"a": "pass", "b": "inconclusive"}).verdict == "inconclusive"
        assert mk({"a": "pass"}).verdict == "pass"

    def test_table_rows_shape(self):
        rep = verify_ancillarity("nile", "nile_product",
                                 _cfg(replicates=2_000, grid=(0.5, 2.0)))
        header, rows = rep.table_rows()
        assert header == ["param", "quantity", "estimate", "se", "statistic"]
        assert len(rows) == 2  # one quantity per grid point
        for row in rows:
            assert len(row) == len(header)
