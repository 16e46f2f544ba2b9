"""Exact algebra of finite point-mass distributions (delta combs).

Every work distribution in the engine is a finite comb of weighted support
points, so moments and convolutions are computed exactly from the atoms; no
sampling or binning is involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, ResourceCapError

DEFAULT_MERGE_TOL = 1e-9
DEFAULT_ATOM_CAP = 10**7
_WEIGHT_FLOOR = 1e-15


@dataclass(frozen=True)
class PointMassDistribution:
    """Sorted support values with positive weights summing to one.

    Consecutive values differ by more than ``merge_tol``; construction goes
    through :func:`from_outcomes`, which merges and renormalizes raw outcome
    pairs.
    """

    values: np.ndarray
    weights: np.ndarray
    merge_tol: float = DEFAULT_MERGE_TOL

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if values.ndim != 1 or values.shape != weights.shape or values.size == 0:
            raise DomainError("values and weights must be non-empty 1-d arrays of equal length")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(weights))):
            raise DomainError("atoms must be finite")
        if np.any(weights <= 0):
            raise DomainError("weights must be positive after construction")
        if values.size > 1 and not np.all(np.diff(values) > self.merge_tol):
            raise DomainError("values must be strictly increasing beyond merge_tol")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise DomainError("weights must sum to 1 within 1e-12")
        values.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.values.size

    @property
    def mean(self) -> float:
        return moments(self)[0]

    @property
    def variance(self) -> float:
        return moments(self)[1]


def from_outcomes(
    pairs: Iterable[tuple[float, float]], merge_tol: float = DEFAULT_MERGE_TOL
) -> PointMassDistribution:
    """Build a distribution from raw (value, weight) outcome pairs.

    Weights are normalized; support points within ``merge_tol`` of each other
    (chained by consecutive gaps) are merged into a single atom whose value is
    the weight-averaged position, so moments are stable under permutation of
    the input order.  Merged weights below 1e-15 are dropped and the rest
    renormalized.
    """
    if not (math.isfinite(merge_tol) and merge_tol >= 0):
        raise DomainError("merge_tol must be finite and non-negative")
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise DomainError("expected a non-empty sequence of (value, weight) pairs")
    values, weights = arr[:, 0].copy(), arr[:, 1].copy()
    if not np.all(np.isfinite(values)):
        raise DomainError("values must be finite")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise DomainError("weights must be finite and non-negative")
    total = weights.sum()
    if total <= 0:
        raise DomainError("at least one weight must be positive")
    keep = weights > 0
    values, weights = values[keep], weights[keep] / total

    order = np.argsort(values, kind="stable")
    values, weights = values[order], weights[order]
    if values.size > 1:
        starts_group = np.concatenate(([True], np.diff(values) > merge_tol))
        group = np.cumsum(starts_group) - 1
        n_groups = group[-1] + 1
        merged_w = np.bincount(group, weights=weights, minlength=n_groups)
        merged_wv = np.bincount(group, weights=weights * values, minlength=n_groups)
        merged_v = merged_wv / merged_w
        # Singleton groups keep their original value bit-for-bit.
        counts = np.bincount(group, minlength=n_groups)
        single = counts == 1
        merged_v[single] = values[np.flatnonzero(starts_group)[single]]
        values, weights = merged_v, merged_w

    keep = weights >= _WEIGHT_FLOOR
    if not np.any(keep):
        raise DomainError("all weights fell below the drop threshold")
    values, weights = values[keep], weights[keep]
    return PointMassDistribution(values, weights / weights.sum(), merge_tol)


def point_mass(value: float, merge_tol: float = DEFAULT_MERGE_TOL) -> PointMassDistribution:
    return from_outcomes([(value, 1.0)], merge_tol)


def convolve(
    a: PointMassDistribution,
    b: PointMassDistribution,
    atom_cap: int = DEFAULT_ATOM_CAP,
) -> PointMassDistribution:
    """Distribution of the sum of independent draws from ``a`` and ``b``.

    All len(a)*len(b) pairwise sums are enumerated exactly and then merged.
    """
    n_pairs = len(a) * len(b)
    if n_pairs > atom_cap:
        raise ResourceCapError(
            f"convolution would enumerate {n_pairs} atoms (cap {atom_cap}); "
            "use a coarser merge_tol or raise the cap"
        )
    values = np.add.outer(a.values, b.values).ravel()
    weights = np.multiply.outer(a.weights, b.weights).ravel()
    return from_outcomes(
        np.column_stack((values, weights)), max(a.merge_tol, b.merge_tol)
    )


def affine(d: PointMassDistribution, scale: float, shift: float) -> PointMassDistribution:
    """Map every support value v to scale*v + shift, weights unchanged.

    merge_tol is rescaled by |scale| so the spacing invariant follows the
    change of units.
    """
    if scale == 0:
        raise DomainError("scale must be non-zero; use point_mass for a collapsed support")
    if not (math.isfinite(scale) and math.isfinite(shift)):
        raise DomainError("scale and shift must be finite")
    values = scale * d.values + shift
    weights = d.weights
    if scale < 0:
        values, weights = values[::-1], weights[::-1]
    return PointMassDistribution(values.copy(), weights.copy(), abs(scale) * d.merge_tol)


def moments(d: PointMassDistribution) -> tuple[float, float]:
    """Exact (mean, variance) of the comb; variance is never negative."""
    mean = float(d.weights @ d.values)
    variance = float(d.weights @ (d.values - mean) ** 2)
    return mean, variance
