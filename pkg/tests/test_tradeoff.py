import numpy as np
import pytest

import frozen
from qie import tradeoff, workstats
from qie.cycle import CycleSpec, energetics, solve_corners
from qie.errors import DomainError, StalledEngineError
from qie.medium import TWO_LEVEL, heat_capacity


def spec_with(tau_h=1.0, sigma_h=0.1):
    return CycleSpec(TWO_LEVEL, 1.0, 4.0, 2.0, 1.0, sigma_h, tau_h, 1.0)


class TestFanoEfficiencyProduct:
    def test_reference_values(self, fig_spec):
        assert tradeoff.fano_efficiency_product(fig_spec, (5.0, 3.0)) == pytest.approx(
            frozen.FANO_ETA_PAPER, rel=1e-12
        )
        assert tradeoff.fano_efficiency_product(fig_spec, (4.0, 2.0)) == pytest.approx(
            frozen.FANO_ETA_DERIVED, rel=1e-12
        )

    def test_invariant_under_cycle_time(self):
        reference = tradeoff.fano_efficiency_product(spec_with(tau_h=1.0), (5.0, 3.0))
        value = tradeoff.fano_efficiency_product(spec_with(tau_h=100.0), (5.0, 3.0))
        assert value == pytest.approx(reference, rel=1e-12)

    @pytest.mark.parametrize("tau_h", [0.5, 1.0, 2.0, 10.0, 100.0])
    def test_consistent_with_fano_times_eta(self, tau_h):
        spec = spec_with(tau_h=tau_h)
        report = workstats.complete_report(spec, coeffs=(4.0, 2.0))
        product = tradeoff.fano_efficiency_product(spec, (4.0, 2.0))
        assert report.fano * report.eta == pytest.approx(product, rel=1e-11)

    def test_constancy_across_times(self):
        values = [
            tradeoff.fano_efficiency_product(spec_with(tau_h=tau), None)
            for tau in (0.5, 1.0, 2.0, 10.0, 100.0)
        ]
        spread = (max(values) - min(values)) / values[0]
        assert spread < 1e-10


class TestScaledMetrics:
    def test_kappa_one_reproduces_energetics(self, fig_spec):
        report = energetics(fig_spec, solve_corners(fig_spec))
        metrics = tradeoff.scaled_metrics(fig_spec, tradeoff.ScalingParams(1.0, 1.0, 2.0), (5.0, 3.0))
        assert metrics.eta == pytest.approx(report.eta, rel=1e-14)
        assert metrics.power == pytest.approx(report.power, rel=1e-14)
        assert metrics.work_mean == pytest.approx(report.w, rel=1e-14)

    def test_reference_point(self, fig_spec):
        metrics = tradeoff.scaled_metrics(fig_spec, tradeoff.ScalingParams(10.0, 1.0, 2.0), (5.0, 3.0))
        assert metrics.eta == pytest.approx(frozen.ETA_K10, rel=1e-12)
        assert metrics.power == pytest.approx(frozen.POWER_K10, rel=1e-12)

    def test_limits_at_large_kappa(self, fig_spec):
        limits = tradeoff.scaling_limits(fig_spec, (4.0, 2.0))
        metrics = tradeoff.scaled_metrics(fig_spec, tradeoff.ScalingParams(1e8, 1.0, 2.0), (4.0, 2.0))
        assert abs(metrics.eta - 1.0) < 1e-7
        assert abs(metrics.power - limits.power) < 1e-6 * limits.power
        assert abs(metrics.fano - limits.fano) < 1e-6 * limits.fano
        assert limits.power == pytest.approx(frozen.POWER_LIMIT, rel=1e-12)

    def test_variance_kappa_invariant(self, fig_spec):
        variances = {
            tradeoff.scaled_metrics(fig_spec, tradeoff.ScalingParams(k, 1.0, 2.0), (4.0, 2.0)).work_variance
            for k in (1.0, 10.0, 100.0, 1e4)
        }
        assert len(variances) == 1

    def test_invalid_scaling_params(self):
        with pytest.raises(DomainError):
            tradeoff.ScalingParams(0.0, 1.0, 2.0)
        with pytest.raises(DomainError):
            tradeoff.ScalingParams(1.0, 2.0, 1.0)
        with pytest.raises(DomainError):
            tradeoff.ScalingParams(1.0, -1.0, 2.0)


class TestConvergenceExponents:
    def test_gamma_equals_two_alpha(self, fig_spec):
        kappas = np.geomspace(1e2, 1e5, 13)
        eta_slope, power_slope = tradeoff.convergence_exponents(fig_spec, 1.0, 2.0, kappas)
        assert eta_slope == pytest.approx(-1.0, rel=0.02)
        assert power_slope == pytest.approx(-1.0, rel=0.02)

    def test_gamma_above_two_alpha(self, fig_spec):
        kappas = np.geomspace(1e2, 1e5, 13)
        eta_slope, power_slope = tradeoff.convergence_exponents(fig_spec, 1.0, 3.0, kappas)
        assert eta_slope == pytest.approx(-2.0, rel=0.02)
        assert power_slope == pytest.approx(-1.0, rel=0.02)

    def test_gamma_below_two_alpha(self, fig_spec):
        kappas = np.geomspace(1e4, 1e7, 13)
        eta_slope, power_slope = tradeoff.convergence_exponents(fig_spec, 1.0, 1.5, kappas)
        assert eta_slope == pytest.approx(-0.5, rel=0.02)
        assert power_slope == pytest.approx(-0.5, rel=0.02)

    def test_too_few_points_rejected(self, fig_spec):
        with pytest.raises(DomainError):
            tradeoff.convergence_exponents(fig_spec, 1.0, 2.0, [1.0, 10.0, 1e4])

    def test_narrow_span_rejected(self, fig_spec):
        with pytest.raises(DomainError):
            tradeoff.convergence_exponents(fig_spec, 1.0, 2.0, np.geomspace(1, 100, 8))


class TestCovInfo:
    def test_reference_value(self, fig_spec):
        assert tradeoff.cov_info(fig_spec, (5.0, 3.0)) == pytest.approx(
            frozen.COV_INFO_PAPER, rel=1e-12
        )

    def test_reversible_denominator(self):
        spec = spec_with(sigma_h=0.0)
        report = energetics(spec, solve_corners(spec))
        expected = np.sqrt(workstats.closed_form_variance(spec, (5.0, 3.0)))
        expected /= spec.t_h * report.delta_s
        assert tradeoff.cov_info(spec, (5.0, 3.0)) == pytest.approx(expected, rel=1e-13)

    def test_stalled_engine_rejected(self, fig_spec):
        delta_s = energetics(fig_spec, solve_corners(fig_spec)).delta_s
        stalled = CycleSpec(TWO_LEVEL, 1.0, 4.0, 2.0, 1.0, 2.0 * delta_s, 1.0, 1.0)
        with pytest.raises(StalledEngineError):
            tradeoff.cov_info(stalled, (5.0, 3.0))


class TestCovRatio:
    def test_reference_point(self):
        point = tradeoff.cov_ratio(0.5, 0.25, 0.5, 1.0, 1.0, TWO_LEVEL, (5.0, 3.0))
        assert point.cov_ratio == pytest.approx(frozen.COV_RATIO_EX, rel=1e-12)
        assert point.lower_bound == pytest.approx(frozen.COV_RATIO_LO, rel=1e-12)
        assert point.upper_bound == pytest.approx(frozen.COV_RATIO_UP, rel=1e-12)
        assert point.info_more_stable

    def test_reduction_matches_direct_cov_quotient(self):
        # Independent oracle: build the two closed-form coefficients of
        # variation with explicit cold-bath bookkeeping and take the quotient.
        t_1, t_2, t_h, omega_fb = 0.5, 0.25, 1.0, 1.0
        c_1 = heat_capacity(TWO_LEVEL, omega_fb, t_1)
        c_2 = heat_capacity(TWO_LEVEL, omega_fb, t_2)
        q_h = 0.2752
        for t_c, eta_ratio in ((0.3, 0.5), (0.77, 0.9), (0.05, 0.25)):
            eta_c = 1.0 - t_c / t_h
            eta_heat = eta_ratio * eta_c
            q_c = (eta_heat - 1.0) * q_h
            cov_heat = eta_c * t_h * np.sqrt(c_1 + c_2) / (q_c + q_h)
            f_a = 1.0 + 5.0 * (t_1 / t_h) ** 2
            f_b = 1.0 + 3.0 * (t_2 / t_h) ** 2
            cov_info_heat_engine_qh = t_h * np.sqrt(f_a * c_1 + f_b * c_2) / q_h
            direct = cov_info_heat_engine_qh / cov_heat
            reduced = tradeoff.cov_ratio(t_1, t_2, eta_ratio, omega_fb, t_h, TWO_LEVEL, (5.0, 3.0))
            assert reduced.cov_ratio == pytest.approx(direct, rel=1e-12)

    def test_upper_bound_tight_at_cold_output(self):
        point = tradeoff.cov_ratio(0.5, 1e-4, 0.7, 1.0, 1.0, TWO_LEVEL, (5.0, 3.0))
        assert abs(point.cov_ratio - point.upper_bound) <= 1e-3 * point.upper_bound

    def test_reversible_equal_temperatures_not_more_stable(self):
        point = tradeoff.cov_ratio(0.5, 0.5, 1.0, 1.0, 1.0, TWO_LEVEL, (5.0, 3.0))
        assert point.cov_ratio >= 1.0

    def test_bounds_contain_ratio_randomized(self):
        rng = np.random.default_rng(21)
        for _ in range(500):
            t_1 = rng.uniform(0.05, 2.0)
            t_2 = t_1 * rng.uniform(0.05, 1.0)
            eta_ratio = rng.uniform(0.05, 1.0)
            point = tradeoff.cov_ratio(t_1, t_2, eta_ratio, 1.0, 1.0, TWO_LEVEL, (5.0, 3.0))
            assert point.lower_bound - 1e-12 <= point.cov_ratio <= point.upper_bound + 1e-12

    @pytest.mark.parametrize(
        "t_1,t_2,eta_ratio", [(0.0, 0.1, 0.5), (0.5, -0.1, 0.5), (0.5, 0.25, 1.5), (0.5, 0.25, 0.0)]
    )
    def test_domain_errors(self, t_1, t_2, eta_ratio):
        with pytest.raises(DomainError):
            tradeoff.cov_ratio(t_1, t_2, eta_ratio)

    def test_vanishing_heat_capacities_rejected(self):
        with pytest.raises(DomainError):
            tradeoff.cov_ratio(1e-6, 1e-6, 0.5)


class TestStabilityRegion:
    def test_grid_order_and_flags(self):
        t1_values = [0.5, 1.0]
        t2_values = [0.1, 0.3]
        points = tradeoff.stability_region(t1_values, t2_values, 0.5)
        assert [(p.t_1, p.t_2) for p in points] == [
            (0.5, 0.1), (0.5, 0.3), (1.0, 0.1), (1.0, 0.3)
        ]
        assert all(p.info_more_stable == (p.cov_ratio < 1.0) for p in points)

    def test_region_shrinks_toward_reversibility(self):
        t1_values = np.linspace(0.1, 2.0, 15)
        t2_values = np.linspace(0.05, 1.0, 15)
        counts = [
            sum(p.info_more_stable for p in tradeoff.stability_region(t1_values, t2_values, er))
            for er in (0.5, 0.75, 0.95)
        ]
        assert counts[0] > counts[1] > counts[2] > 0

    def test_empty_region_when_lower_bound_exceeds_one(self):
        # eta_ratio = 1 and T2 >= 1 force lower bound = sqrt(f_b) * 1 >= 2.
        points = tradeoff.stability_region([2.0, 3.0], [1.0, 1.5], 1.0)
        assert not any(p.info_more_stable for p in points)
