"""Shared test utilities: randomized valid cycles and the independent
eight-index brute-force oracle for the total work distribution."""

from __future__ import annotations

from itertools import product

import numpy as np

from qie.cycle import CycleSpec, energetics, solve_corners
from qie.medium import PolarizationSpectrum, gibbs_probabilities


def random_spec(rng: np.random.Generator, allow_d: tuple[int, ...] = (2, 2, 3, 4)) -> CycleSpec:
    """A randomized well-conditioned cycle (moderate omega/T ratios, Q_h > 0)."""
    d = int(rng.choice(allow_d))
    while True:
        levels = np.sort(rng.uniform(0.2, 1.8, size=d))
        if levels[-1] - levels[0] > 0.3 and np.all(np.diff(levels) > 1e-3):
            break
    spectrum = PolarizationSpectrum(levels)
    omega_fb = rng.uniform(0.7, 1.5)
    omega4 = omega_fb * rng.uniform(0.7, 1.8)
    omega3 = omega4 * rng.uniform(1.3, 2.2)
    t_h = rng.uniform(0.8, 1.6)
    tau_h = rng.uniform(0.5, 2.0)
    tau_fb = rng.uniform(0.5, 2.0)
    base = CycleSpec(spectrum, omega_fb, omega3, omega4, t_h, 0.0, tau_h, tau_fb)
    delta_s = energetics(base, solve_corners(base)).delta_s
    sigma_h = rng.uniform(0.0, 0.5) * delta_s * tau_h
    return CycleSpec(spectrum, omega_fb, omega3, omega4, t_h, sigma_h, tau_h, tau_fb)


def brute_force_work_dist(spec: CycleSpec, group_tol: float = 1e-12):
    """Literal eight-nested-index enumeration of the total work comb.

    Independent of the convolution pipeline: corner probabilities come
    straight from the Gibbs weights and the eight sums are accumulated term
    by term, then grouped by value.  Returns (values, weights) arrays.
    """
    corners = solve_corners(spec)
    report = energetics(spec, corners)
    w_h = report.w_h
    e = {
        1: spec.spectrum.energies(spec.omega_fb),
        2: spec.spectrum.energies(spec.omega_fb),
        3: spec.spectrum.energies(spec.omega3),
        4: spec.spectrum.energies(spec.omega4),
    }
    p = {
        1: gibbs_probabilities(spec.spectrum, spec.omega_fb, corners.t_1),
        2: gibbs_probabilities(spec.spectrum, spec.omega_fb, corners.t_2),
        3: gibbs_probabilities(spec.spectrum, spec.omega3, spec.t_h),
        4: gibbs_probabilities(spec.spectrum, spec.omega4, spec.t_h),
    }
    d = spec.spectrum.dim
    outcomes: list[tuple[float, float]] = []
    for j, k, l, m, pp, q, r, s in product(range(d), repeat=8):
        w = -(e[3][k] - e[2][j]) + w_h - (e[1][m] - e[4][l]) \
            - (e[1][q] - e[1][pp]) - (e[2][s] - e[1][r])
        weight = p[3][k] * p[2][j] * p[1][m] * p[4][l] * p[1][q] * p[1][pp] * p[2][s] * p[1][r]
        outcomes.append((w, weight))
    outcomes.sort(key=lambda vw: vw[0])
    values: list[float] = []
    weights: list[float] = []
    for value, weight in outcomes:
        if values and value - values[-1] <= group_tol:
            weights[-1] += weight
        else:
            values.append(value)
            weights.append(weight)
    return np.asarray(values), np.asarray(weights)
