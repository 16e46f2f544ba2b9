"""Energy-change measurement schemes (EPM, TPM, DBN) for diagonal processes.

Only population-level (classical, diagonal) channels are modeled: the cycle
is fully incoherent, so a process is a column-stochastic transition table
between energy eigenstates.  The feedback stroke is the interesting case:
its undisturbed action maps every input to the fixed thermal output state,
but a scheme that first collapses the input to a projector leaves a
unitary-only controller able to reach nothing but the ground state.  The two
behaviours are exposed as `true_feedback_channel` and
`collapsed_feedback_channel`; comparing a scheme's recorded mean against the
undisturbed energy change exhibits the bookkeeping gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import dist
from .dist import DEFAULT_MERGE_TOL, PointMassDistribution
from .errors import DomainError
from .medium import ThermalState, state_observables


@dataclass(frozen=True)
class DiagonalChannel:
    """Column-stochastic table T[k|j] between input and output eigenstates.

    Column j holds the output distribution for input eigenstate j; the input
    and output Hamiltonians are given by their energy sequences.
    """

    transition_matrix: np.ndarray
    input_energies: tuple[float, ...]
    output_energies: tuple[float, ...]

    def __post_init__(self):
        t = np.asarray(self.transition_matrix, dtype=float)
        if t.ndim != 2:
            raise DomainError("transition matrix must be 2-d")
        d_out, d_in = t.shape
        if d_in != len(self.input_energies) or d_out != len(self.output_energies):
            raise DomainError("transition matrix shape must match the energy sequences")
        if np.any(t < 0):
            raise DomainError("transition probabilities must be non-negative")
        if np.any(np.abs(t.sum(axis=0) - 1.0) > 1e-12):
            raise DomainError("each column must sum to 1 within 1e-12")
        t.setflags(write=False)
        object.__setattr__(self, "transition_matrix", t)
        object.__setattr__(self, "input_energies", tuple(float(e) for e in self.input_energies))
        object.__setattr__(self, "output_energies", tuple(float(e) for e in self.output_energies))

    def apply(self, rho_in: np.ndarray) -> np.ndarray:
        return self.transition_matrix @ rho_in


@dataclass(frozen=True)
class SchemeResult:
    """Recorded energy-change statistics of one scheme on one process."""

    joint: PointMassDistribution
    mean_du: float
    delta_e: float
    gap: float


def _validated_input(rho_in: Sequence[float], ch: DiagonalChannel) -> np.ndarray:
    p = np.asarray(rho_in, dtype=float)
    if p.ndim != 1 or p.size != len(ch.input_energies):
        raise DomainError("input state dimension must match the channel input")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise DomainError("input state must be a normalized probability vector")
    return p


def _result(
    joint_weights: np.ndarray,
    p_in: np.ndarray,
    ch: DiagonalChannel,
    reference_delta_e: float | None,
    merge_tol: float,
) -> SchemeResult:
    e_in = np.asarray(ch.input_energies)
    e_out = np.asarray(ch.output_energies)
    du = np.subtract.outer(-e_in, -e_out).ravel()  # du[j, k] = e_out[k] - e_in[j]
    joint = dist.from_outcomes(np.column_stack((du, joint_weights.ravel())), merge_tol)
    mean_du = dist.moments(joint)[0]
    if reference_delta_e is None:
        delta_e = float(ch.apply(p_in) @ e_out - p_in @ e_in)
    else:
        delta_e = float(reference_delta_e)
    return SchemeResult(joint, mean_du, delta_e, mean_du - delta_e)


def epm_joint(
    rho_in: Sequence[float],
    ch: DiagonalChannel,
    reference_delta_e: float | None = None,
    merge_tol: float = DEFAULT_MERGE_TOL,
) -> SchemeResult:
    """End-point measurement: two copies, one measured before and one after.

    The joint is the product P(j, k) = p(j) * q(k) with q the undisturbed
    output, so the recorded mean always equals the true energy change.
    """
    p = _validated_input(rho_in, ch)
    q = ch.apply(p)
    return _result(np.outer(p, q), p, ch, reference_delta_e, merge_tol)


def tpm_joint(
    rho_in: Sequence[float],
    ch: DiagonalChannel,
    reference_delta_e: float | None = None,
    merge_tol: float = DEFAULT_MERGE_TOL,
) -> SchemeResult:
    """Two-point measurement: collapse, evolve the projector, measure again.

    P(j, k) = p(j) * T[k|j].  ``reference_delta_e`` supplies the energy change
    of the process the scheme was meant to characterize when the collapse
    forces a different effective channel (the feedback pathology); by default
    the channel's own action defines delta_e.
    """
    p = _validated_input(rho_in, ch)
    joint = p[:, None] * ch.transition_matrix.T
    return _result(joint, p, ch, reference_delta_e, merge_tol)


def dbn_joint(
    rho_in: Sequence[float],
    ch: DiagonalChannel,
    reference_delta_e: float | None = None,
    merge_tol: float = DEFAULT_MERGE_TOL,
) -> SchemeResult:
    """Dynamic Bayesian network: trajectory sum over the state eigenbasis.

    P(j, k) = sum_s P_s * P(j|s) * P(k|s).  Only diagonal inputs are
    representable here, for which the state eigenbasis coincides with the
    energy eigenbasis and P(j|s) = delta_js, reproducing the TPM joint.
    """
    p = _validated_input(rho_in, ch)
    d_in = p.size
    eigenbasis_overlap = np.eye(d_in)  # state eigenbasis == energy eigenbasis
    joint = np.einsum("s,js,ks->jk", p, eigenbasis_overlap, ch.transition_matrix)
    return _result(joint, p, ch, reference_delta_e, merge_tol)


def true_feedback_channel(state1: ThermalState, state2: ThermalState) -> DiagonalChannel:
    """Undisturbed feedback action: every input yields the fixed thermal output."""
    _check_feedback_states(state1, state2)
    p2 = np.asarray(state2.probs)
    matrix = np.tile(p2[:, None], (1, len(state1.probs)))
    return DiagonalChannel(matrix, tuple(state1.energies()), tuple(state2.energies()))


def collapsed_feedback_channel(
    state1: ThermalState, state2: ThermalState
) -> DiagonalChannel:
    """Effective feedback action after a collapsing first measurement.

    A unitary-only controller cannot turn a projector into the thermal target
    state unless T_2 = 0, so every input eigenstate lands in the ground state
    (uniformly over degenerate ground levels).
    """
    _check_feedback_states(state1, state2)
    levels = np.asarray(state1.spectrum.levels)
    ground = (levels == levels[0]).astype(float)
    column = ground / ground.sum()
    matrix = np.tile(column[:, None], (1, len(state1.probs)))
    return DiagonalChannel(matrix, tuple(state1.energies()), tuple(state2.energies()))


def feedback_delta_e(state1: ThermalState, state2: ThermalState) -> float:
    """Energy change of the undisturbed feedback stroke, U_2 - U_1."""
    u_1 = state_observables(state1).internal_energy
    u_2 = state_observables(state2).internal_energy
    return u_2 - u_1


def feedback_scheme_comparison(
    state1: ThermalState, state2: ThermalState, merge_tol: float = DEFAULT_MERGE_TOL
) -> list[tuple[str, SchemeResult]]:
    """EPM / TPM / DBN rows for the feedback branch.

    EPM runs on the undisturbed channel; TPM and DBN run on the collapsed
    channel their first measurement enforces.  All rows are benchmarked
    against the undisturbed energy change U_2 - U_1.
    """
    _check_feedback_states(state1, state2)
    truth = feedback_delta_e(state1, state2)
    rho_in = state1.probs
    true_ch = true_feedback_channel(state1, state2)
    collapsed_ch = collapsed_feedback_channel(state1, state2)
    return [
        ("EPM", epm_joint(rho_in, true_ch, truth, merge_tol)),
        ("TPM", tpm_joint(rho_in, collapsed_ch, truth, merge_tol)),
        ("DBN", dbn_joint(rho_in, collapsed_ch, truth, merge_tol)),
    ]


def _check_feedback_states(state1: ThermalState, state2: ThermalState) -> None:
    if state1.spectrum != state2.spectrum:
        raise DomainError("feedback states must share a spectrum")
    if state1.omega != state2.omega:
        raise DomainError("feedback states must share the frequency omega_fb")
