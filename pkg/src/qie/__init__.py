"""Exact simulation of the finite-time quantum Carnot information engine.

Constructs the stochastic work-output distribution of the cycle for
arbitrary finite diagonal working media, evaluates efficiency / power /
Fano / COV trade-offs and their fast-thermalization limits, and compares
energy-change measurement schemes on the feedback branch.
"""

from .cycle import CycleCorners, CycleSpec, EngineReport, energetics, entropy_change, solve_corners
from .dist import PointMassDistribution, affine, convolve, from_outcomes, moments, point_mass
from .errors import (
    DegenerateCycleError,
    DomainError,
    QieError,
    ResourceCapError,
    StalledEngineError,
)
from .medium import (
    PolarizationSpectrum,
    ThermalState,
    gibbs_state,
    heat_capacity,
    state_observables,
)
from .schemes import (
    DiagonalChannel,
    SchemeResult,
    collapsed_feedback_channel,
    dbn_joint,
    epm_joint,
    feedback_scheme_comparison,
    tpm_joint,
    true_feedback_channel,
)
from .tradeoff import (
    ComparisonPoint,
    ScalingParams,
    convergence_exponents,
    cov_info,
    cov_ratio,
    fano_efficiency_product,
    scaled_metrics,
    scaling_limits,
    stability_region,
)
from .workstats import (
    BranchDistributions,
    branch_distributions,
    closed_form_variance,
    distribution_variance,
    feedback_dist,
    isentropic_branch_dist,
    isothermal_branch_dist,
    measurement_dist,
    total_work_dist,
    variance_conformance,
)

__version__ = "0.1.0"
