"""Pydantic request/response models of the engine service.

Record field names match the CSV columns emitted by the CLI exactly, so the
JSON wire format and the file formats stay in lockstep.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator, model_validator

from ..config import DEFAULTS


class CycleParams(BaseModel):
    """Physical cycle parameters shared by every endpoint."""

    levels: tuple[float, ...] = DEFAULTS["levels"]
    omega_fb: float = DEFAULTS["omega_fb"]
    omega3: float = DEFAULTS["omega3"]
    omega4: float = DEFAULTS["omega4"]
    t_h: float = DEFAULTS["t_h"]
    sigma_h: float = DEFAULTS["sigma_h"]
    tau_h: float = DEFAULTS["tau_h"]
    tau_fb: float = DEFAULTS["tau_fb"]
    coeffs: str = DEFAULTS["coeffs"]
    merge_tol: float = Field(default=DEFAULTS["merge_tol"], ge=0.0)
    atom_cap: int = Field(default=DEFAULTS["atom_cap"], gt=0)

    @field_validator("levels")
    @classmethod
    def _at_least_two_levels(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if len(v) < 2:
            raise ValueError("levels must contain at least two entries")
        return v


class CycleRequest(CycleParams):
    pass


class DistributionRequest(CycleParams):
    pass


class ScalingRequest(CycleParams):
    alpha: float = DEFAULTS["alpha"]
    gamma: float = DEFAULTS["gamma"]
    kappa_min: float = DEFAULTS["kappa_min"]
    kappa_max: float = DEFAULTS["kappa_max"]
    kappa_points: int = Field(default=DEFAULTS["kappa_points"], ge=2)

    @model_validator(mode="after")
    def _grid_valid(self) -> "ScalingRequest":
        if self.kappa_min <= 0:
            raise ValueError("kappa_min must be positive")
        if not self.kappa_min < self.kappa_max:
            raise ValueError("kappa_min must be smaller than kappa_max")
        return self


class CompareRequest(BaseModel):
    levels: tuple[float, ...] = DEFAULTS["levels"]
    omega_fb: float = DEFAULTS["omega_fb"]
    t_h: float = DEFAULTS["t_h"]
    coeffs: str = DEFAULTS["coeffs"]
    t1_min: float = DEFAULTS["t1_min"]
    t1_max: float = DEFAULTS["t1_max"]
    t1_points: int = Field(default=DEFAULTS["t1_points"], ge=2)
    t2_min: float = DEFAULTS["t2_min"]
    t2_max: float = DEFAULTS["t2_max"]
    t2_points: int = Field(default=DEFAULTS["t2_points"], ge=2)
    eta_ratios: tuple[float, ...] = DEFAULTS["eta_ratios"]

    @model_validator(mode="after")
    def _grid_valid(self) -> "CompareRequest":
        for axis in ("t1", "t2"):
            lo, hi = getattr(self, f"{axis}_min"), getattr(self, f"{axis}_max")
            if not 0 < lo < hi:
                raise ValueError(f"{axis} grid needs 0 < min < max")
        if not self.eta_ratios:
            raise ValueError("eta_ratios must not be empty")
        return self


class SchemesRequest(CycleParams):
    pass


class CycleRecord(BaseModel):
    delta_S: float
    Q_h: float
    delta_U_h: float
    W_h: float
    W: float
    eta: float
    power: float
    sigma_w2_paper: float
    sigma_w2_derived: float
    sigma_w2_dist: float
    fano: float | None
    cov: float | None
    stalled: bool


class DistributionRecord(BaseModel):
    value: float
    weight: float


class ScalingRecord(BaseModel):
    kappa: float
    eta: float
    power: float
    work_mean: float
    work_variance: float
    fano: float
    cov: float
    eta_limit: float
    power_limit: float
    fano_limit: float


class CompareRecord(BaseModel):
    eta_ratio: float
    T1: float
    T2: float
    cov_ratio: float
    lower: float
    upper: float
    info_more_stable: bool


class SchemeRecord(BaseModel):
    scheme: str
    mean_du: float
    delta_E: float
    gap: float


class CycleResponse(BaseModel):
    config: CycleRequest
    records: list[CycleRecord]


class DistributionResponse(BaseModel):
    config: DistributionRequest
    records: list[DistributionRecord]
    mean: float
    variance: float


class ScalingResponse(BaseModel):
    config: ScalingRequest
    records: list[ScalingRecord]


class CompareResponse(BaseModel):
    config: CompareRequest
    records: list[CompareRecord]


class SchemesResponse(BaseModel):
    config: SchemesRequest
    records: list[SchemeRecord]
