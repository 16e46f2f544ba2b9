"""Trade-off analytics: Fano-efficiency constancy, fast-thermalization
scaling, convergence exponents, and the information-vs-heat-engine
coefficient-of-variation comparison with its universal bounds.

The kappa-scaling replaces tau_h -> tau_h/kappa^alpha and
sigma_h -> sigma_h/kappa^gamma with gamma > alpha > 0, so the dissipation
term vanishes faster than the stroke shortens and efficiency approaches one
at finite power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .cycle import CycleSpec, energetics, solve_corners
from .errors import DomainError, StalledEngineError
from .medium import PolarizationSpectrum, heat_capacity
from .workstats import (
    DEFAULT_ATOM_CAP,
    DEFAULT_MERGE_TOL,
    closed_form_variance,
    resolve_variance,
)


@dataclass(frozen=True)
class ScalingParams:
    """Fast-thermalization scaling point: kappa with exponents gamma > alpha > 0."""

    kappa: float
    alpha: float
    gamma: float

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.kappa, self.alpha, self.gamma)):
            raise DomainError("scaling parameters must be finite")
        if self.kappa <= 0:
            raise DomainError("kappa must be positive")
        if not (self.gamma > self.alpha > 0):
            raise DomainError("exponents must satisfy gamma > alpha > 0")


class ScaledMetrics(NamedTuple):
    eta: float
    power: float
    fano: float
    work_mean: float
    work_variance: float


class ScalingLimits(NamedTuple):
    eta: float
    power: float
    fano: float


@dataclass(frozen=True)
class ComparisonPoint:
    """One (T_1, T_2) comparison of info-engine vs heat-engine relative fluctuations."""

    t_1: float
    t_2: float
    eta_ratio: float
    cov_ratio: float
    lower_bound: float
    upper_bound: float

    @property
    def info_more_stable(self) -> bool:
        return self.cov_ratio < 1.0


def fano_efficiency_product(
    spec: CycleSpec,
    coeffs: tuple[float, float] | None = (5.0, 3.0),
    merge_tol: float = DEFAULT_MERGE_TOL,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> float:
    """The cycle-time-independent constant fano * eta = sigma_w^2 / (T_h * delta_S)."""
    report = energetics(spec, solve_corners(spec))
    sigma_w2 = resolve_variance(spec, coeffs, merge_tol, atom_cap)
    return sigma_w2 / (spec.t_h * report.delta_s)


def eta_power_work(
    spec: CycleSpec, delta_s: float, scaling: ScalingParams
) -> tuple[float, float, float]:
    """(eta, power, work_mean) at one scaling point, from the analytic forms."""
    damp = scaling.kappa ** (scaling.alpha - scaling.gamma)
    eta = 1.0 - damp * spec.sigma_h / (delta_s * spec.tau_h)
    work = spec.t_h * (delta_s - damp * spec.sigma_h / spec.tau_h)
    tau_total = spec.tau_fb + spec.tau_h * scaling.kappa ** (-scaling.alpha)
    return eta, abs(work) / tau_total, work


def scaled_metrics(
    spec: CycleSpec,
    scaling: ScalingParams,
    coeffs: tuple[float, float] | None = None,
    merge_tol: float = DEFAULT_MERGE_TOL,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> ScaledMetrics:
    """Efficiency, power, Fano factor and work mean/variance at one kappa.

    The work variance does not depend on kappa (the isothermal work is
    deterministic), so only the mean rescales.
    """
    report = energetics(spec, solve_corners(spec))
    eta, power, work = eta_power_work(spec, report.delta_s, scaling)
    sigma_w2 = resolve_variance(spec, coeffs, merge_tol, atom_cap)
    if work == 0.0:
        raise StalledEngineError("Fano factor undefined at the stall boundary W = 0")
    return ScaledMetrics(eta, power, sigma_w2 / abs(work), work, sigma_w2)


def scaling_limits(
    spec: CycleSpec,
    coeffs: tuple[float, float] | None = None,
    merge_tol: float = DEFAULT_MERGE_TOL,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> ScalingLimits:
    """kappa -> infinity limits: eta -> 1, power -> T_h*delta_S/tau_fb, and
    fano -> the Fano-efficiency constant."""
    report = energetics(spec, solve_corners(spec))
    return ScalingLimits(
        eta=1.0,
        power=spec.t_h * report.delta_s / spec.tau_fb,
        fano=fano_efficiency_product(spec, coeffs, merge_tol, atom_cap),
    )


def convergence_exponents(
    spec: CycleSpec,
    alpha: float,
    gamma: float,
    kappas: Sequence[float],
) -> tuple[float, float]:
    """Fitted power-law slopes of |eta - 1| and |power - limit| vs kappa.

    Unweighted least squares on log-log data with the analytic limits
    subtracted.  Expected slopes: alpha - gamma for the efficiency; -alpha
    for the power when gamma >= 2*alpha, alpha - gamma otherwise.
    """
    grid = np.asarray(sorted(float(k) for k in kappas))
    if grid.size < 4:
        raise DomainError("need at least 4 kappa grid points to fit exponents")
    if grid[0] <= 0:
        raise DomainError("kappa grid must be positive")
    if grid[-1] / grid[0] < 0.999e3:
        raise DomainError("kappa grid must span at least 3 decades")
    report = energetics(spec, solve_corners(spec))
    power_limit = spec.t_h * report.delta_s / spec.tau_fb
    eta_dev = np.empty(grid.size)
    power_dev = np.empty(grid.size)
    for i, kappa in enumerate(grid):
        eta, power, _ = eta_power_work(spec, report.delta_s, ScalingParams(kappa, alpha, gamma))
        eta_dev[i] = abs(eta - 1.0)
        power_dev[i] = abs(power - power_limit)
    if np.any(eta_dev == 0) or np.any(power_dev == 0):
        raise DomainError("zero deviation on the grid; no power law to fit")
    log_k = np.log(grid)
    eta_slope = float(np.polyfit(log_k, np.log(eta_dev), 1)[0])
    power_slope = float(np.polyfit(log_k, np.log(power_dev), 1)[0])
    return eta_slope, power_slope


def cov_info(
    spec: CycleSpec,
    coeffs: tuple[float, float] | None = (5.0, 3.0),
    merge_tol: float = DEFAULT_MERGE_TOL,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> float:
    """Coefficient of variation sigma_w/Q_h of the information cycle (kappa = 1)."""
    report = energetics(spec, solve_corners(spec))
    if report.q_h <= 0:
        raise StalledEngineError("coefficient of variation undefined for a stalled engine")
    sigma_w2 = resolve_variance(spec, coeffs, merge_tol, atom_cap)
    return math.sqrt(sigma_w2) / report.q_h


def cov_ratio(
    t_1: float,
    t_2: float,
    eta_ratio: float,
    omega_fb: float = 1.0,
    t_h: float = 1.0,
    spectrum: PolarizationSpectrum | None = None,
    coeffs: tuple[float, float] = (5.0, 3.0),
) -> ComparisonPoint:
    """COV_info / COV_heat for matched engines, with the universal bounds.

    The quotient of the two closed-form coefficients of variation reduces to
    eta_ratio * sqrt((f_a*C_1 + f_b*C_2) / (C_1 + C_2)): the heat-engine heat
    Q_c + Q_h equals eta_heat * Q_h, so every dependence on the cold bath
    enters through eta_ratio = eta_heat/eta_C alone.  Bounds follow from
    f_b(T_2) <= weighted mean <= f_a(T_1), valid whenever f_b(T_2) <= f_a(T_1)
    (guaranteed for T_2 <= T_1); points violating that premise are still
    reported, not rejected.
    """
    if spectrum is None:
        spectrum = PolarizationSpectrum((2.0, 1.0))
    if not (t_1 > 0 and t_2 > 0):
        raise DomainError("temperatures must be positive")
    if not (0 < eta_ratio <= 1):
        raise DomainError("eta_ratio must lie in (0, 1]")
    a, b = coeffs
    c_1 = heat_capacity(spectrum, omega_fb, t_1)
    c_2 = heat_capacity(spectrum, omega_fb, t_2)
    if c_1 + c_2 == 0.0:
        raise DomainError("both heat capacities vanish; the ratio is undefined")
    f_a = 1.0 + a * (t_1 / t_h) ** 2
    f_b = 1.0 + b * (t_2 / t_h) ** 2
    ratio = eta_ratio * math.sqrt((f_a * c_1 + f_b * c_2) / (c_1 + c_2))
    return ComparisonPoint(
        t_1=t_1,
        t_2=t_2,
        eta_ratio=eta_ratio,
        cov_ratio=ratio,
        lower_bound=eta_ratio * math.sqrt(f_b),
        upper_bound=eta_ratio * math.sqrt(f_a),
    )


def stability_region(
    t1_values: Sequence[float],
    t2_values: Sequence[float],
    eta_ratio: float,
    omega_fb: float = 1.0,
    t_h: float = 1.0,
    spectrum: PolarizationSpectrum | None = None,
    coeffs: tuple[float, float] = (5.0, 3.0),
) -> list[ComparisonPoint]:
    """Evaluate cov_ratio over a rectangular (T_1, T_2) grid, T_1-major order."""
    return [
        cov_ratio(t_1, t_2, eta_ratio, omega_fb, t_h, spectrum, coeffs)
        for t_1 in t1_values
        for t_2 in t2_values
    ]
