"""Finite-time Carnot information cycle: corner states and mean energetics.

The cycle runs measurement-and-feedback (1-2) at fixed frequency omega_fb,
an isentropic compression (2-3), an isothermal expansion (3-4) at the hot
temperature, and an isentropic expansion (4-1) closing the loop.  The two
isentropes pin the intermediate temperatures through the omega/T invariance
of the thermal state, so T_1 and T_2 are derived, not free inputs.  Isentrope
durations are zero; the cycle time is tau_fb + tau_h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateCycleError, DomainError
from .medium import (
    PolarizationSpectrum,
    ThermalState,
    gibbs_state,
    state_observables,
)


@dataclass(frozen=True)
class CycleSpec:
    """Input parameters of one cycle evaluation.

    sigma_h is the low-dissipation entropy-production coefficient of the hot
    isotherm (entropy * time units); the heat it exchanges in time tau_h is
    T_h * (delta_S - sigma_h / tau_h).
    """

    spectrum: PolarizationSpectrum
    omega_fb: float
    omega3: float
    omega4: float
    t_h: float
    sigma_h: float
    tau_h: float
    tau_fb: float

    def __post_init__(self):
        numbers = (self.omega_fb, self.omega3, self.omega4, self.t_h,
                   self.sigma_h, self.tau_h, self.tau_fb)
        if not all(math.isfinite(x) for x in numbers):
            raise DomainError("cycle parameters must be finite")
        if self.omega3 <= self.omega4:
            raise DegenerateCycleError(
                f"degenerate cycle: omega3 ({self.omega3}) must exceed omega4 ({self.omega4})"
            )
        if self.omega4 <= 0 or self.omega_fb <= 0:
            raise DomainError("frequencies must be positive")
        if self.t_h <= 0:
            raise DomainError("hot temperature must be positive")
        if self.tau_h <= 0 or self.tau_fb <= 0:
            raise DomainError("branch durations must be positive")
        if self.sigma_h < 0:
            raise DomainError("dissipation coefficient must be non-negative")


@dataclass(frozen=True)
class CycleCorners:
    """The four resolved corner states and the derived temperatures T_1 > T_2."""

    t_1: float
    t_2: float
    state_1: ThermalState
    state_2: ThermalState
    state_3: ThermalState
    state_4: ThermalState


@dataclass(frozen=True)
class EngineReport:
    """Per-evaluation scalars; stochastic fields are filled in by workstats."""

    delta_s: float
    q_h: float
    delta_u_h: float
    w_h: float
    w: float
    eta: float
    power: float
    stalled: bool
    sigma_w2: float | None = field(default=None)
    fano: float | None = field(default=None)
    cov: float | None = field(default=None)


def solve_corners(spec: CycleSpec) -> CycleCorners:
    """Resolve the corner states from the isentropic closure conditions.

    The isentropes force omega_fb/T_2 = omega3/T_h and omega_fb/T_1 =
    omega4/T_h, hence T_1 = T_h*omega_fb/omega4 and T_2 = T_h*omega_fb/omega3.
    """
    t_1 = spec.t_h * spec.omega_fb / spec.omega4
    t_2 = spec.t_h * spec.omega_fb / spec.omega3
    state_1 = gibbs_state(spec.spectrum, spec.omega_fb, t_1)
    state_2 = gibbs_state(spec.spectrum, spec.omega_fb, t_2)
    state_3 = gibbs_state(spec.spectrum, spec.omega3, spec.t_h)
    state_4 = gibbs_state(spec.spectrum, spec.omega4, spec.t_h)
    s1 = state_observables(state_1).entropy
    s2 = state_observables(state_2).entropy
    s3 = state_observables(state_3).entropy
    s4 = state_observables(state_4).entropy
    if abs(s2 - s3) > 1e-12 or abs(s4 - s1) > 1e-12:
        raise DomainError("isentropic closure violated beyond 1e-12; parameters ill-conditioned")
    return CycleCorners(t_1, t_2, state_1, state_2, state_3, state_4)


def entropy_change(corners: CycleCorners) -> float:
    """Entropy gained over the hot isotherm, S(omega_fb, T_1) - S(omega_fb, T_2)."""
    s1 = state_observables(corners.state_1).entropy
    s2 = state_observables(corners.state_2).entropy
    return s1 - s2


def energetics(spec: CycleSpec, corners: CycleCorners) -> EngineReport:
    """Deterministic cycle energetics in the low-dissipation regime.

    Q_h = T_h*(delta_S - sigma_h/tau_h), the total mean work W equals Q_h,
    eta = 1 - sigma_h/(delta_S*tau_h), and power = |W|/(tau_fb + tau_h).
    The `stalled` flag marks Q_h <= 0; eta and power are still reported.
    """
    delta_s = entropy_change(corners)
    if delta_s <= 0:
        raise DomainError("entropy change must be positive; efficiency undefined")
    q_h = spec.t_h * (delta_s - spec.sigma_h / spec.tau_h)
    u_3 = state_observables(corners.state_3).internal_energy
    u_4 = state_observables(corners.state_4).internal_energy
    delta_u_h = u_4 - u_3
    w_h = q_h - delta_u_h
    eta = 1.0 - spec.sigma_h / (delta_s * spec.tau_h)
    power = abs(q_h) / (spec.tau_fb + spec.tau_h)
    return EngineReport(
        delta_s=delta_s,
        q_h=q_h,
        delta_u_h=delta_u_h,
        w_h=w_h,
        w=q_h,
        eta=eta,
        power=power,
        stalled=q_h <= 0,
    )
