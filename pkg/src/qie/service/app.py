"""FastAPI service exposing the engine analyses as stateless endpoints.

Every endpoint is a pure function of its request model; errors surface as
HTTP 400 with a structured kind (invalid_config | resource_cap | stalled)
that thin clients map onto exit codes.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import dist, schemes, tradeoff, workstats
from ..config import parse_coeffs
from ..cycle import CycleSpec, energetics, solve_corners
from ..errors import DomainError, QieError, ResourceCapError, StalledEngineError
from ..medium import PolarizationSpectrum
from . import models


def _spec_from(params: models.CycleParams) -> CycleSpec:
    return CycleSpec(
        spectrum=PolarizationSpectrum(params.levels),
        omega_fb=params.omega_fb,
        omega3=params.omega3,
        omega4=params.omega4,
        t_h=params.t_h,
        sigma_h=params.sigma_h,
        tau_h=params.tau_h,
        tau_fb=params.tau_fb,
    )


def _error_kind(exc: QieError) -> str:
    if isinstance(exc, ResourceCapError):
        return "resource_cap"
    if isinstance(exc, StalledEngineError):
        return "stalled"
    return "invalid_config"


def build_cycle_record(request: models.CycleRequest) -> models.CycleRecord:
    spec = _spec_from(request)
    coeffs = parse_coeffs(request.coeffs)
    report = energetics(spec, solve_corners(spec))
    sigma_paper = workstats.closed_form_variance(spec, workstats.COEFF_PAIRS["paper"])
    sigma_derived = workstats.closed_form_variance(spec, workstats.COEFF_PAIRS["derived"])
    sigma_dist = workstats.distribution_variance(spec, request.merge_tol, request.atom_cap)
    completed = workstats.complete_report(
        spec, report, coeffs, request.merge_tol, request.atom_cap
    )
    return models.CycleRecord(
        delta_S=report.delta_s,
        Q_h=report.q_h,
        delta_U_h=report.delta_u_h,
        W_h=report.w_h,
        W=report.w,
        eta=report.eta,
        power=report.power,
        sigma_w2_paper=sigma_paper,
        sigma_w2_derived=sigma_derived,
        sigma_w2_dist=sigma_dist,
        fano=completed.fano,
        cov=completed.cov,
        stalled=report.stalled,
    )


def build_distribution_response(
    request: models.DistributionRequest,
) -> models.DistributionResponse:
    spec = _spec_from(request)
    total = workstats.total_work_dist(spec, request.merge_tol, request.atom_cap)
    mean, variance = dist.moments(total)
    records = [
        models.DistributionRecord(value=float(v), weight=float(w))
        for v, w in zip(total.values, total.weights)
    ]
    return models.DistributionResponse(
        config=request, records=records, mean=mean, variance=variance
    )


def build_scaling_records(request: models.ScalingRequest) -> list[models.ScalingRecord]:
    spec = _spec_from(request)
    coeffs = parse_coeffs(request.coeffs)
    report = energetics(spec, solve_corners(spec))
    sigma_w2 = workstats.resolve_variance(spec, coeffs, request.merge_tol, request.atom_cap)
    power_limit = spec.t_h * report.delta_s / spec.tau_fb
    fano_limit = sigma_w2 / (spec.t_h * report.delta_s)
    kappas = np.geomspace(request.kappa_min, request.kappa_max, request.kappa_points)
    records = []
    for kappa in kappas:
        scaling = tradeoff.ScalingParams(float(kappa), request.alpha, request.gamma)
        eta, power, work = tradeoff.eta_power_work(spec, report.delta_s, scaling)
        if work == 0.0:
            raise StalledEngineError(
                f"work output vanishes at kappa = {kappa}; Fano factor undefined"
            )
        records.append(
            models.ScalingRecord(
                kappa=float(kappa),
                eta=eta,
                power=power,
                work_mean=work,
                work_variance=sigma_w2,
                fano=sigma_w2 / abs(work),
                cov=float(np.sqrt(sigma_w2)) / abs(work),
                eta_limit=1.0,
                power_limit=power_limit,
                fano_limit=fano_limit,
            )
        )
    return records


def build_compare_records(request: models.CompareRequest) -> list[models.CompareRecord]:
    spectrum = PolarizationSpectrum(request.levels)
    coeffs = parse_coeffs(request.coeffs)
    if coeffs is None:
        coeffs = workstats.COEFF_PAIRS["derived"]  # adjudicated pair
    t1_values = np.linspace(request.t1_min, request.t1_max, request.t1_points)
    t2_values = np.linspace(request.t2_min, request.t2_max, request.t2_points)
    records = []
    for eta_ratio in request.eta_ratios:
        points = tradeoff.stability_region(
            t1_values, t2_values, eta_ratio, request.omega_fb, request.t_h,
            spectrum, coeffs,
        )
        records.extend(
            models.CompareRecord(
                eta_ratio=point.eta_ratio,
                T1=point.t_1,
                T2=point.t_2,
                cov_ratio=point.cov_ratio,
                lower=point.lower_bound,
                upper=point.upper_bound,
                info_more_stable=point.info_more_stable,
            )
            for point in points
        )
    return records


def build_scheme_records(request: models.SchemesRequest) -> list[models.SchemeRecord]:
    spec = _spec_from(request)
    corners = solve_corners(spec)
    rows = schemes.feedback_scheme_comparison(
        corners.state_1, corners.state_2, request.merge_tol
    )
    return [
        models.SchemeRecord(
            scheme=name, mean_du=result.mean_du, delta_E=result.delta_e, gap=result.gap
        )
        for name, result in rows
    ]


def create_app() -> FastAPI:
    app = FastAPI(title="qie", description="finite-time quantum Carnot information engine")

    @app.exception_handler(QieError)
    async def _qie_error(request: Request, exc: QieError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"kind": _error_kind(exc), "message": str(exc)}},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/cycle", response_model=models.CycleResponse)
    def cycle(request: models.CycleRequest) -> models.CycleResponse:
        return models.CycleResponse(config=request, records=[build_cycle_record(request)])

    @app.post("/distribution", response_model=models.DistributionResponse)
    def distribution(request: models.DistributionRequest) -> models.DistributionResponse:
        return build_distribution_response(request)

    @app.post("/scaling", response_model=models.ScalingResponse)
    def scaling(request: models.ScalingRequest) -> models.ScalingResponse:
        return models.ScalingResponse(config=request, records=build_scaling_records(request))

    @app.post("/compare", response_model=models.CompareResponse)
    def compare(request: models.CompareRequest) -> models.CompareResponse:
        return models.CompareResponse(config=request, records=build_compare_records(request))

    @app.post("/schemes", response_model=models.SchemesResponse)
    def schemes_endpoint(request: models.SchemesRequest) -> models.SchemesResponse:
        return models.SchemesResponse(config=request, records=build_scheme_records(request))

    return app


app = create_app()
