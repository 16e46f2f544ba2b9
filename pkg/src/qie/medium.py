"""Finite diagonal working media: spectra, Gibbs states, thermal observables.

Natural units k_B = hbar = 1 throughout.  The Hamiltonian is the scaling form
H = omega * diag(levels), so every thermal quantity depends on omega and
temperature only through omega/T.  A temperature of exactly 0.0 is accepted
everywhere as the T -> 0+ sentinel and produces the ground-state occupation
(ties between degenerate ground levels split uniformly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class PolarizationSpectrum:
    """Eigenvalues of the dimensionless level operator, stored sorted ascending."""

    levels: tuple[float, ...]

    def __init__(self, levels: Sequence[float]):
        values = tuple(sorted(float(x) for x in levels))
        if len(values) < 2:
            raise DomainError("spectrum needs at least two levels")
        if not all(math.isfinite(x) for x in values):
            raise DomainError("spectrum levels must be finite")
        if values[0] == values[-1]:
            raise DomainError("spectrum needs at least two distinct levels")
        object.__setattr__(self, "levels", values)

    @property
    def dim(self) -> int:
        return len(self.levels)

    def energies(self, omega: float) -> np.ndarray:
        return omega * np.asarray(self.levels, dtype=float)


TWO_LEVEL = PolarizationSpectrum((2.0, 1.0))


@dataclass(frozen=True)
class ThermalState:
    """Gibbs occupation of a spectrum at a given frequency and temperature."""

    spectrum: PolarizationSpectrum
    omega: float
    temperature: float
    probs: tuple[float, ...]

    def energies(self) -> np.ndarray:
        return self.spectrum.energies(self.omega)


class StateObservables(NamedTuple):
    internal_energy: float
    entropy: float
    energy_variance: float


def _validate_omega_temperature(omega: float, temperature: float) -> None:
    if not (math.isfinite(omega) and math.isfinite(temperature)):
        raise DomainError("omega and temperature must be finite")
    if omega < 0:
        raise DomainError(f"omega must be non-negative, got {omega}")
    if temperature < 0:
        raise DomainError(f"temperature must be non-negative, got {temperature}")


def gibbs_probabilities(
    spectrum: PolarizationSpectrum, omega: float, temperature: float
) -> np.ndarray:
    """Normalized Gibbs weights exp(-omega*level/T)/Z over the spectrum.

    Exponents are shifted by their maximum before exponentiation, so extreme
    omega/T ratios (e.g. 700) underflow gracefully instead of overflowing.
    """
    _validate_omega_temperature(omega, temperature)
    levels = np.asarray(spectrum.levels, dtype=float)
    level_scale = max(abs(levels[0]), abs(levels[-1]))
    if temperature == 0.0 or not math.isfinite(omega * level_scale / temperature):
        # T -> 0+ sentinel: ground levels only, degenerate ties split uniformly.
        if omega == 0.0:
            return np.full(spectrum.dim, 1.0 / spectrum.dim)
        ground = levels == levels[0]
        return ground / ground.sum()
    exponents = -(omega / temperature) * levels
    weights = np.exp(exponents - exponents.max())
    return weights / weights.sum()


def gibbs_state(
    spectrum: PolarizationSpectrum, omega: float, temperature: float
) -> ThermalState:
    probs = gibbs_probabilities(spectrum, omega, temperature)
    return ThermalState(spectrum, float(omega), float(temperature), tuple(probs))


def state_observables(state: ThermalState) -> StateObservables:
    """Internal energy, von Neumann entropy (nats) and energy variance.

    The 0*log(0) convention applies to vanished occupations; the variance is
    accumulated in centered form so it is non-negative by construction.
    """
    probs = np.asarray(state.probs, dtype=float)
    energies = state.energies()
    u = float(probs @ energies)
    positive = probs > 0.0
    s = float(-(probs[positive] @ np.log(probs[positive])))
    var = float(probs @ (energies - u) ** 2)
    return StateObservables(u, s, var)


def entropy(spectrum: PolarizationSpectrum, omega: float, temperature: float) -> float:
    return state_observables(gibbs_state(spectrum, omega, temperature)).entropy


def heat_capacity(
    spectrum: PolarizationSpectrum, omega: float, temperature: float
) -> float:
    """Heat capacity C = sigma_E^2 / T^2 of the thermal state (k_B = 1).

    At the T = 0+ sentinel the frozen ground state carries no energy
    fluctuations and C = 0 is returned.
    """
    _validate_omega_temperature(omega, temperature)
    if temperature == 0.0:
        return 0.0
    state = gibbs_state(spectrum, omega, temperature)
    return state_observables(state).energy_variance / temperature**2
