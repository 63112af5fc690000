"""FastAPI application exposing the compute handlers."""

from __future__ import annotations

from fastapi import FastAPI, Path, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..errors import EntlabError
from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="entlab service",
        version=__version__,
        description=(
            "Concurrence dynamics of two independent qubits under local noise: "
            "trajectories, parameter sweeps, ESD onsets and figure presets."
        ),
    )

    @app.exception_handler(EntlabError)
    async def _domain_error(_: Request, exc: EntlabError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/api/trajectory", response_model=schemas.TrajectoryResponse)
    def trajectory(req: schemas.TrajectoryRequest) -> schemas.TrajectoryResponse:
        return handlers.run_trajectory(req)

    @app.post("/api/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
        return handlers.run_sweep(req)

    @app.post("/api/esd", response_model=schemas.EsdResponse)
    def esd(req: schemas.EsdRequest) -> schemas.EsdResponse:
        return handlers.run_esd(req)

    @app.get("/api/figures/{fig_id}", response_class=PlainTextResponse)
    def figure(
        fig_id: int = Path(ge=1, le=6),
        steps: int = Query(default=2000, ge=2),
        param_points: int = Query(default=201, ge=2),
    ) -> PlainTextResponse:
        req = schemas.FigureRequest(fig_id=fig_id, steps=steps, param_points=param_points)
        resp = handlers.run_figure(req)
        return PlainTextResponse(resp.csv, media_type="text/csv")

    @app.post("/api/validate", response_model=schemas.ValidateResponse)
    def run_validate(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
        return handlers.run_validate(req)

    return app


app = create_app()
