"""Request handlers: one pure function per endpoint.

The FastAPI routes and the CLI both call these, so a run produces identical
bytes whether it executes in-process or behind HTTP.
"""

from __future__ import annotations

import math

import numpy as np

from .. import analysis, csvio, validate
from ..envmodels import (
    MODEL_STRONG_T0,
    Environment,
    StrongCouplingParams,
    ThermalParams,
)
from ..errors import ValidationError
from ..states import EwlSpec, Family
from . import schemas

#: Scan horizon used when the T = 0 sentinel makes 10*max(1, x) meaningless;
#: bounded so that the e^{-gamma t} coherence floor stays above the zero
#: threshold (asymptotic decay must not read as terminal ESD).
TZERO_DEFAULT_TMAX = 25.0


def build_environment(spec: schemas.EnvironmentSpec) -> Environment:
    """Environment from the wire-level spec; gamma = 1 (times are gamma*t)."""
    if spec.model == MODEL_STRONG_T0:
        if spec.lambda_over_gamma is None:
            raise ValidationError("strong-t0 requires lambda_over_gamma")
        if spec.x is not None:
            raise ValidationError("strong-t0 is a T=0 model; x does not apply")
        return Environment(spec.model, strong=StrongCouplingParams(1.0, spec.lambda_over_gamma))
    if spec.x is None:
        raise ValidationError(f"{spec.model} requires x = hbar*omega0/(kB*T)")
    if spec.lambda_over_gamma is not None:
        raise ValidationError(f"{spec.model} does not take lambda_over_gamma")
    return Environment(spec.model, thermal=ThermalParams(1.0, spec.omega0_over_gamma, spec.x))


def default_tmax(env: Environment) -> float:
    """Scan horizon covering the qualitative features of a model."""
    if env.strong is not None:
        if env.strong.lam < 2.0 * env.strong.gamma and not env.strong.is_degenerate():
            from ..envmodels import zero_spacing

            return 2.0 * zero_spacing(env.strong)
        return 10.0
    if math.isinf(env.thermal.x):
        return TZERO_DEFAULT_TMAX
    return 10.0 * max(1.0, env.thermal.x)


def _env_config(spec: schemas.EnvironmentSpec) -> dict[str, object]:
    cfg: dict[str, object] = {"env": spec.model, "omega0_over_gamma": spec.omega0_over_gamma}
    if spec.lambda_over_gamma is not None:
        cfg["lambda_over_gamma"] = spec.lambda_over_gamma
    if spec.x is not None:
        cfg["x"] = spec.x
    return cfg


def _echo(config: dict[str, object]) -> dict[str, str]:
    return {key: csvio.fmt(value) for key, value in config.items()}


def run_trajectory(req: schemas.TrajectoryRequest) -> schemas.TrajectoryResponse:
    env = build_environment(req.env)
    tmax = req.grid.tmax_gamma if req.grid.tmax_gamma is not None else default_tmax(env)
    alpha = math.sqrt(req.alpha_sq)
    pair = analysis.trajectory_pair(env, req.r, alpha, tmax, req.grid.steps)
    config = {
        "subcommand": "trajectory",
        **_env_config(req.env),
        "r": req.r,
        "alpha_sq": req.alpha_sq,
        "delta": req.delta,
        "tmax_gamma": tmax,
        "steps": req.grid.steps,
    }
    csv = csvio.trajectory_csv(pair.grid, pair.c_phi, pair.c_psi, config)
    return schemas.TrajectoryResponse(
        gamma_t=pair.grid.tolist(),
        c_phi=pair.c_phi.tolist(),
        c_psi=pair.c_psi.tolist(),
        csv=csv,
        config=_echo(config),
    )


def run_sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
    env = build_environment(req.env)
    tmax = req.grid.tmax_gamma if req.grid.tmax_gamma is not None else default_tmax(env)
    alpha = math.sqrt(req.alpha_sq)
    values = np.linspace(req.param_min, req.param_max, req.param_points)
    grid = analysis.sweep(env, req.r, alpha, req.param, values, tmax, req.grid.steps)
    config = {
        "subcommand": "sweep",
        **_env_config(req.env),
        "r": req.r,
        "alpha_sq": req.alpha_sq,
        "delta": req.delta,
        "tmax_gamma": tmax,
        "steps": req.grid.steps,
        "param": req.param,
        "param_min": req.param_min,
        "param_max": req.param_max,
        "param_points": req.param_points,
    }
    csv = csvio.sweep_csv(grid, config)
    return schemas.SweepResponse(
        param_name=grid.param_name,
        param_values=grid.param_values.tolist(),
        gamma_t=grid.grid.tolist(),
        c_phi=grid.c_phi.tolist(),
        c_psi=grid.c_psi.tolist(),
        csv=csv,
        config=_echo(config),
    )


def run_esd(req: schemas.EsdRequest) -> schemas.EsdResponse:
    env = build_environment(req.env)
    tmax = req.grid.tmax_gamma if req.grid.tmax_gamma is not None else default_tmax(env)
    spec = EwlSpec(Family(req.family), req.r, math.sqrt(req.alpha_sq), req.delta)
    traj = analysis.trajectory(env, spec, tmax, req.grid.steps)
    report = analysis.dark_intervals(traj, zero_tol=req.zero_tol)
    config = {
        "subcommand": "esd",
        **_env_config(req.env),
        "family": req.family,
        "r": req.r,
        "alpha_sq": req.alpha_sq,
        "delta": req.delta,
        "tmax_gamma": tmax,
        "steps": req.grid.steps,
        "zero_tol": req.zero_tol,
    }
    csv = csvio.esd_csv(report, tmax, config)
    return schemas.EsdResponse(
        family=req.family,
        onset_gamma_t=None if report.terminal is None else report.terminal.t_start,
        terminal=report.terminal is not None,
        dark_intervals=[
            schemas.DarkIntervalModel(t_start=iv.t_start, t_end=iv.t_end)
            for iv in report.intervals
        ],
        touch_points=list(report.touch_points),
        csv=csv,
        config=_echo(config),
    )


def run_figure(req: schemas.FigureRequest) -> schemas.FigureResponse:
    data = analysis.figure_preset(req.fig_id, steps=req.steps, param_points=req.param_points)
    config: dict[str, object] = {
        "subcommand": "figure",
        "fig_id": req.fig_id,
        "steps": req.steps,
    }
    if isinstance(data, analysis.TrajectoryPair):
        config.update(
            {
                "env": data.env.model,
                "lambda_over_gamma": data.env.strong.lam,
                "r": data.r,
                "alpha_sq": data.alpha * data.alpha,
                "tmax_gamma": float(data.grid[-1]),
            }
        )
        csv = csvio.trajectory_csv(data.grid, data.c_phi, data.c_psi, config)
    else:
        config.update(
            {
                "param": data.param_name,
                "param_points": len(data.param_values),
                "tmax_gamma": float(data.grid[-1]),
            }
        )
        csv = csvio.sweep_csv(data, config)
    return schemas.FigureResponse(fig_id=req.fig_id, filename=f"fig{req.fig_id}.csv", csv=csv)


def run_validate(req: schemas.ValidateRequest) -> schemas.ValidateResponse:
    try:
        results = validate.run_checks(req.checks, seed=req.seed)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    checks = [
        schemas.CheckModel(name=r.name, passed=r.passed, detail=r.detail) for r in results
    ]
    return schemas.ValidateResponse(passed=all(c.passed for c in checks), checks=checks)
