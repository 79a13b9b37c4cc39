"""HTTP facade over the core library.

Every endpoint is a thin wrapper: convert the request model to domain types,
call the library, convert the result back. Domain ValueErrors map to 400.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..baseline import KmeansParams, kmeanspp_deploy
from ..channel import optimal_elevation_angle
from ..deploy import deploy
from ..harness import config_from_dict, run_sweep
from ..radio import evaluate_deployment
from ..scenario import GroundUser, generate
from .schemas import (
    CoverageProfileModel,
    DeployRequest,
    DeployResponse,
    DeploymentModel,
    EvaluateRequest,
    EvaluationReportModel,
    GenerateRequest,
    ProfileRequest,
    ScenarioFileModel,
    ScenarioSpecModel,
    SweepCellModel,
    SweepRequest,
    SweepResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="uav-iad", version=__version__)

    @app.exception_handler(ValueError)
    async def _domain_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/coverage/profile", response_model=CoverageProfileModel)
    def coverage_profile(req: ProfileRequest) -> CoverageProfileModel:
        profile = optimal_elevation_angle(req.l_allow_db, req.h_max_m, req.channel.to_domain())
        return CoverageProfileModel.from_domain(profile)

    @app.post("/scenarios/generate", response_model=ScenarioFileModel)
    def scenarios_generate(req: GenerateRequest) -> ScenarioFileModel:
        spec = req.spec.to_domain()
        gus = generate(spec)
        return ScenarioFileModel(
            spec=ScenarioSpecModel.from_domain(spec),
            points=[(g.x, g.y) for g in gus],
        )

    @app.post("/deployments", response_model=DeployResponse)
    def deployments(req: DeployRequest) -> DeployResponse:
        channel = req.channel.to_domain()
        radio = req.radio.to_domain()
        iad = req.iad.to_domain()
        profile = optimal_elevation_angle(req.l_allow_db, req.h_max_m, channel)
        gus = [GroundUser(x=p[0], y=p[1]) for p in req.points]
        if req.method == "iad":
            dep = deploy(gus, profile, iad, seed=req.seed)
        else:
            dep = kmeanspp_deploy(gus, profile, radio, KmeansParams(k=iad.k, seed=req.seed))
        report = evaluate_deployment(gus, dep.placements, dep.association, channel, radio)
        return DeployResponse(
            deployment=DeploymentModel.from_domain(dep),
            profile=CoverageProfileModel.from_domain(profile),
            satisfaction=report.satisfaction,
        )

    @app.post("/evaluations", response_model=EvaluationReportModel)
    def evaluations(req: EvaluateRequest) -> EvaluationReportModel:
        gus = [GroundUser(x=p[0], y=p[1]) for p in req.points]
        dep = req.deployment.to_domain()
        report = evaluate_deployment(
            gus, dep.placements, dep.association,
            req.channel.to_domain(), req.radio.to_domain(), n_min=req.n_min,
        )
        return EvaluationReportModel.from_domain(report)

    @app.post("/sweeps", response_model=SweepResponse)
    def sweeps(req: SweepRequest) -> SweepResponse:
        config = config_from_dict(req.config)
        result = run_sweep(config)
        return SweepResponse(
            sweep_param=result.sweep_param,
            cells=[
                SweepCellModel(**c.to_json_dict(), mean_runtime_ms=c.mean_runtime_ms)
                for c in result.cells
            ],
        )

    return app


app = create_app()
