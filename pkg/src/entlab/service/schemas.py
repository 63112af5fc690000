"""Pydantic request/response models for the compute service.

The same models are the CLI's run configuration: the CLI builds a request,
the service (in-process or over HTTP) answers with a response whose ``csv``
field is the canonical file content. Temperatures enter as
x = hbar*omega0/(kB*T); pass the string "inf" (or the float) for T = 0.
Config echoes are strings (``csvio.fmt`` canonical form) so responses stay
valid strict JSON even when a parameter is infinite.
"""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, Field, field_validator

from ..analysis import PARAM_NAMES
from ..envmodels import MODEL_NAMES

EnvModelName = Literal["strong-t0", "markovian", "markovian-paper-lowt", "nonmark-weak-lowt"]
FamilyName = Literal["phi", "psi"]
SweepParamName = Literal["r", "alpha_sq", "lambda_over_gamma", "kt_over_hbar_omega0"]

assert set(EnvModelName.__args__) == set(MODEL_NAMES)
assert set(SweepParamName.__args__) == set(PARAM_NAMES)


class EnvironmentSpec(BaseModel):
    """Environment model selection; exactly the parameters the model needs."""

    model: EnvModelName
    lambda_over_gamma: float | None = Field(default=None, gt=0)
    x: float | None = Field(default=None, gt=0, description="hbar*omega0/(kB*T); inf for T=0")
    omega0_over_gamma: float = Field(default=10.0, gt=0)

    @field_validator("lambda_over_gamma", "omega0_over_gamma")
    @classmethod
    def _finite(cls, value):
        if value is not None and not math.isfinite(value):
            raise ValueError("must be finite")
        return value


class StateBase(BaseModel):
    r: float = Field(ge=0, le=1)
    alpha_sq: float = Field(ge=0, le=1)
    delta: float = Field(default=0.0)

    @field_validator("delta")
    @classmethod
    def _finite_delta(cls, value):
        if not math.isfinite(value):
            raise ValueError("delta must be finite")
        return value


class GridSpec(BaseModel):
    tmax_gamma: float | None = Field(default=None, gt=0)
    steps: int = Field(default=2000, ge=2)


class TrajectoryRequest(StateBase):
    env: EnvironmentSpec
    grid: GridSpec = GridSpec()


class TrajectoryResponse(BaseModel):
    gamma_t: list[float]
    c_phi: list[float]
    c_psi: list[float]
    csv: str
    config: dict[str, str]


class SweepRequest(StateBase):
    env: EnvironmentSpec
    grid: GridSpec = GridSpec()
    param: SweepParamName
    param_min: float
    param_max: float
    param_points: int = Field(default=201, ge=2)


class SweepResponse(BaseModel):
    param_name: str
    param_values: list[float]
    gamma_t: list[float]
    c_phi: list[list[float]]
    c_psi: list[list[float]]
    csv: str
    config: dict[str, str]


class EsdRequest(StateBase):
    env: EnvironmentSpec
    family: FamilyName
    grid: GridSpec = GridSpec()
    zero_tol: float = Field(default=1e-12, gt=0)


class DarkIntervalModel(BaseModel):
    t_start: float
    t_end: float


class EsdResponse(BaseModel):
    family: FamilyName
    onset_gamma_t: float | None
    terminal: bool
    dark_intervals: list[DarkIntervalModel]
    touch_points: list[float]
    csv: str
    config: dict[str, str]


class FigureRequest(BaseModel):
    fig_id: int = Field(ge=1, le=6)
    steps: int = Field(default=2000, ge=2)
    param_points: int = Field(default=201, ge=2)


class FigureResponse(BaseModel):
    fig_id: int
    filename: str
    csv: str


class ValidateRequest(BaseModel):
    checks: list[str] | None = None
    seed: int = 20240811


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class ValidateResponse(BaseModel):
    passed: bool
    checks: list[CheckModel]
