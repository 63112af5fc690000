"""Time-domain analysis of two-qubit concurrence.

Everything here works in the dimensionless time gamma*t. For two identical
qubits in identical environments the evolved state of an EWL input stays an
X state whose elements are closed forms in (u_t, v_t, |z_t|^2), so a
trajectory never integrates anything: it samples

    kernel(t) = 2 * K_family(t)

on a grid, where the concurrence is max(0, kernel). Zero sets are refined
against the continuous kernel by bisection; isolated zeros (the kernel
touches zero without crossing, as C_phi does for Bell states in the
structured reservoir) are located by a bounded minimization plus a
parabola-vertex polish.

High-temperature Markovian closed forms: both families share

    K_tilde(t) = 2 [ (r/4) e^{-4 t / x} + r alpha |beta| e^{-2 t / x} - 1/4 ]

(t in gamma*t units, x = hbar omega0 / kB T), which vanishes at

    t_esd = -(x/2) ln( sqrt((1 + 4 r alpha^2 |beta|^2) / r) - 2 alpha |beta| ).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from .concurrence import initial_concurrence, r_star
from .envmodels import (
    MODEL_STRONG_T0,
    Environment,
    StrongCouplingParams,
    ThermalParams,
    zero_spacing,
)
from .errors import BracketError, ValidationError
from .states import EwlSpec, Family, ewl_elements

#: Concurrence at or below this is "zero" for dark-interval purposes.
ZERO_TOL = 1e-12

#: Bisection resolution for dark-interval edges (in gamma*t).
DARK_XTOL = 1e-6

#: Bisection resolution for ESD onset times (in gamma*t).
ESD_XTOL = 1e-9

#: Grid minima above this value are not candidate zero touch-points.
TOUCH_SCAN_CUTOFF = 1e-3

ENV_THREADS = "ENTLAB_THREADS"


# --- kernel ----------------------------------------------------------------


def kernel_arrays(env: Environment, spec: EwlSpec, gamma_t) -> np.ndarray:
    """2*K_family(t) of the evolved EWL state over a gamma*t grid.

    Identical (u, v, z) maps act on both qubits. The result is the signed
    pre-clamp kernel; concurrence is max(0, kernel).
    """
    u, v, z = env.uvz_arrays_gamma_t(gamma_t)
    zabs2 = np.abs(z) ** 2
    e = ewl_elements(spec)
    a1, a2, a3, a4 = e.diag
    a23 = a2 + a3
    if spec.family is Family.PHI:
        r11 = u * u * a1 + u * v * a23 + v * v * a4
        r44 = (1 - u) * (1 - u) * a1 + (1 - u) * (1 - v) * a23 + (1 - v) * (1 - v) * a4
        # radicand clipped: only unphysical (u, v) outside [0,1] can make it negative
        return 2.0 * (zabs2 * e.corner_abs - np.sqrt(np.maximum(r11 * r44, 0.0)))
    r22 = u * (1 - u) * a1 + u * (1 - v) * a2 + v * (1 - u) * a3 + v * (1 - v) * a4
    r33 = u * (1 - u) * a1 + (1 - u) * v * a2 + (1 - v) * u * a3 + (1 - v) * v * a4
    return 2.0 * (zabs2 * e.corner_abs - np.sqrt(np.maximum(r22 * r33, 0.0)))


def kernel_at(env: Environment, spec: EwlSpec, gamma_t: float) -> float:
    return float(kernel_arrays(env, spec, float(gamma_t)))


def concurrence_at(env: Environment, spec: EwlSpec, gamma_t: float) -> float:
    return min(max(kernel_at(env, spec, gamma_t), 0.0), 1.0)


# --- trajectories ----------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    """Concurrence samples of one (environment, initial state) configuration."""

    grid: np.ndarray  # gamma*t, strictly increasing, grid[0] = 0
    c: np.ndarray  # concurrence, in [0, 1]
    kernel: np.ndarray  # signed 2*K_family before clamping
    env: Environment
    spec: EwlSpec


def _uniform_grid(tmax_gamma: float, steps: int) -> np.ndarray:
    if not (math.isfinite(tmax_gamma) and tmax_gamma > 0):
        raise ValidationError(f"tmax_gamma must be > 0, got {tmax_gamma!r}")
    if steps < 2:
        raise ValidationError(f"steps must be >= 2, got {steps}")
    return np.linspace(0.0, tmax_gamma, steps)


def trajectory(env: Environment, spec: EwlSpec, tmax_gamma: float, steps: int) -> Trajectory:
    """Sample the concurrence on a uniform gamma*t grid over [0, tmax].

    c[0] coincides bit-for-bit with initial_concurrence(r, alpha).
    """
    grid = _uniform_grid(tmax_gamma, steps)
    kern = kernel_arrays(env, spec, grid)
    c = np.minimum(np.maximum(kern, 0.0), 1.0)
    return Trajectory(grid, c, kern, env, spec)


@dataclass(frozen=True)
class TrajectoryPair:
    """Both-family concurrence samples sharing one grid and environment."""

    grid: np.ndarray
    c_phi: np.ndarray
    c_psi: np.ndarray
    env: Environment
    r: float
    alpha: float


def trajectory_pair(
    env: Environment, r: float, alpha: float, tmax_gamma: float, steps: int
) -> TrajectoryPair:
    grid = _uniform_grid(tmax_gamma, steps)
    c = {}
    for family in (Family.PHI, Family.PSI):
        kern = kernel_arrays(env, EwlSpec(family, r, alpha), grid)
        c[family] = np.minimum(np.maximum(kern, 0.0), 1.0)
    return TrajectoryPair(grid, c[Family.PHI], c[Family.PSI], env, r, alpha)


# --- dark intervals and ESD ------------------------------------------------


@dataclass(frozen=True)
class DarkInterval:
    """A maximal stretch with zero concurrence, refined to DARK_XTOL."""

    t_start: float
    t_end: float

    @property
    def width(self) -> float:
        return self.t_end - self.t_start


@dataclass(frozen=True)
class DarkReport:
    """Zero-set structure of one trajectory.

    ``intervals`` are finite dark periods followed by a revival;
    ``touch_points`` are isolated zeros (width below the grid resolution);
    ``terminal`` is the tail reaching tmax with no revival after it, whose
    t_start is the ESD onset.
    """

    intervals: tuple[DarkInterval, ...]
    touch_points: tuple[float, ...]
    terminal: DarkInterval | None

    @property
    def has_terminal_esd(self) -> bool:
        return self.terminal is not None


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal [i, j] index runs where mask is true (inclusive bounds)."""
    runs = []
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return runs
    start = prev = int(idx[0])
    for i in idx[1:]:
        i = int(i)
        if i == prev + 1:
            prev = i
            continue
        runs.append((start, prev))
        start = prev = i
    runs.append((start, prev))
    return runs


def _bisect_threshold(f, lo: float, hi: float, xtol: float) -> float:
    """Root of f in [lo, hi] where f(lo) and f(hi) straddle zero."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    return float(bisect(f, lo, hi, xtol=xtol))


def _vertex_polish(f, t: float, lo: float, hi: float) -> float:
    """Sharpen a quadratic-minimum location with two 3-point vertex fits."""
    for h in (1e-3, 3.2e-5):
        a, b = t - h, t + h
        if a < lo or b > hi:  # too close to a boundary for a symmetric fit
            continue
        fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
        denom = fa - 2.0 * fm + fb
        if denom > 0.0:
            t = 0.5 * (a + b) + 0.25 * (b - a) * (fa - fb) / denom
    return min(max(t, lo), hi)


def dark_intervals(traj: Trajectory, zero_tol: float = ZERO_TOL) -> DarkReport:
    """Locate dark intervals, touch-points and terminal ESD of a trajectory.

    Grid runs with kernel <= zero_tol are refined by bisection against the
    continuous kernel; grid minima that dip below zero_tol only between grid
    points are found by bounded minimization. A zero region narrower than the
    grid step counts as a touch-point, located at the kernel minimum.
    """
    ts, kern = traj.grid, traj.kernel
    h = float(ts[1] - ts[0])

    def f(t: float) -> float:
        return kernel_at(traj.env, traj.spec, t) - zero_tol

    regions: list[tuple[float, float, float, bool]] = []  # (lo, hi, t_min, terminal)

    below = kern <= zero_tol
    covered = np.zeros(len(ts), dtype=bool)
    for i0, i1 in _runs(below):
        covered[max(i0 - 1, 0) : i1 + 2] = True
        lo = float(ts[0]) if i0 == 0 else _bisect_threshold(f, float(ts[i0 - 1]), float(ts[i0]), DARK_XTOL)
        if i1 == len(ts) - 1:
            regions.append((lo, float(ts[-1]), lo, True))
            continue
        hi = _bisect_threshold(f, float(ts[i1]), float(ts[i1 + 1]), DARK_XTOL)
        tmin = 0.5 * (lo + hi)
        regions.append((lo, hi, tmin, False))

    # interior minima that only dip below the threshold between grid points
    for i in range(1, len(ts) - 1):
        if covered[i] or kern[i] > TOUCH_SCAN_CUTOFF:
            continue
        if not (kern[i] < kern[i - 1] and kern[i] <= kern[i + 1]):
            continue
        res = minimize_scalar(
            f, bounds=(float(ts[i - 1]), float(ts[i + 1])), method="bounded",
            options={"xatol": 1e-9},
        )
        tmin = float(res.x)
        if float(res.fun) > 0.0:
            continue
        lo = _bisect_threshold(f, float(ts[i - 1]), tmin, DARK_XTOL)
        hi = _bisect_threshold(f, tmin, float(ts[i + 1]), DARK_XTOL)
        regions.append((lo, hi, tmin, False))

    regions.sort(key=lambda reg: reg[0])
    intervals: list[DarkInterval] = []
    touch: list[float] = []
    terminal: DarkInterval | None = None
    for lo, hi, tmin, is_terminal in regions:
        if is_terminal:
            terminal = DarkInterval(lo, hi)
        elif hi - lo < h:
            touch.append(_vertex_polish(f, tmin, max(0.0, lo - h), hi + h))
        else:
            intervals.append(DarkInterval(lo, hi))
    return DarkReport(tuple(intervals), tuple(touch), terminal)


def esd_time_numeric(
    env: Environment,
    spec: EwlSpec,
    t_bracket: tuple[float, float],
    zero_tol: float = ZERO_TOL,
    scan_points: int = 512,
) -> float:
    """First entry of the concurrence into the zero set, bisected to ESD_XTOL.

    The bracket must have positive concurrence at its start and concurrence
    at or below zero_tol at its end.
    """
    lo, hi = float(t_bracket[0]), float(t_bracket[1])
    if not (0.0 <= lo < hi and math.isfinite(hi)):
        raise BracketError(f"invalid bracket {t_bracket!r}")

    def f(t: float) -> float:
        return kernel_at(env, spec, t) - zero_tol

    flo, fhi = f(lo), f(hi)
    if flo <= 0.0:
        raise BracketError(f"concurrence is not positive at bracket start (gamma*t = {lo:g})")
    if fhi > 0.0:
        raise BracketError(f"concurrence is still positive at bracket end (gamma*t = {hi:g})")
    # locate the first sign change, then refine
    grid = np.linspace(lo, hi, scan_points + 1)
    vals = kernel_arrays(env, spec, grid) - zero_tol
    first = int(np.argmax(vals <= 0.0))
    return _bisect_threshold(f, float(grid[first - 1]), float(grid[first]), ESD_XTOL)


def k_tilde(r: float, alpha: float, x: float, gamma_t) -> np.ndarray | float:
    """High-temperature Markovian kernel shared by both families.

    The concurrence approximation is max(0, k_tilde); accurate for x <~ 0.1.
    """
    _check_high_t_args(r, alpha, x)
    t = np.asarray(gamma_t, dtype=np.float64)
    if np.any(t < 0):
        raise ValidationError("gamma_t must be >= 0")
    beta = math.sqrt(1.0 - alpha * alpha)
    val = 2.0 * (
        (r / 4.0) * np.exp(-4.0 * t / x)
        + r * alpha * beta * np.exp(-2.0 * t / x)
        - 0.25
    )
    return float(val) if np.isscalar(gamma_t) or np.ndim(gamma_t) == 0 else val


def esd_time_highT(r: float, alpha: float, x: float) -> float:
    """Closed-form high-temperature ESD onset (in gamma*t).

    Requires initial entanglement (r > r_star(alpha)).
    """
    _check_high_t_args(r, alpha, x)
    rs = r_star(alpha)
    if r <= rs:
        raise ValidationError(
            f"no initial entanglement: r = {r:g} <= r* = {rs:.6g} for alpha = {alpha:g}"
        )
    beta = math.sqrt(1.0 - alpha * alpha)
    root = math.sqrt((1.0 + 4.0 * r * alpha * alpha * beta * beta) / r) - 2.0 * alpha * beta
    return -(x / 2.0) * math.log(root)


def _check_high_t_args(r: float, alpha: float, x: float) -> None:
    if not (math.isfinite(r) and 0.0 <= r <= 1.0):
        raise ValidationError(f"purity r must be in [0, 1], got {r!r}")
    if not (math.isfinite(alpha) and 0.0 <= alpha <= 1.0):
        raise ValidationError(f"amplitude alpha must be in [0, 1], got {alpha!r}")
    if not (math.isfinite(x) and x > 0):
        raise ValidationError(f"x must be finite and > 0, got {x!r}")


# --- sweeps ----------------------------------------------------------------

PARAM_R = "r"
PARAM_ALPHA_SQ = "alpha_sq"
PARAM_LAMBDA_OVER_GAMMA = "lambda_over_gamma"
PARAM_KT_OVER_HBAR_OMEGA0 = "kt_over_hbar_omega0"

PARAM_NAMES = (PARAM_R, PARAM_ALPHA_SQ, PARAM_LAMBDA_OVER_GAMMA, PARAM_KT_OVER_HBAR_OMEGA0)


@dataclass(frozen=True)
class SweepGrid:
    """Concurrence of both families over a (parameter, gamma*t) grid."""

    param_name: str
    param_values: np.ndarray
    grid: np.ndarray  # gamma*t
    c_phi: np.ndarray  # shape (len(param_values), len(grid))
    c_psi: np.ndarray


def _apply_param(
    env: Environment, r: float, alpha: float, name: str, value: float
) -> tuple[Environment, float, float]:
    if name == PARAM_R:
        if not 0.0 <= value <= 1.0:
            raise ValidationError(f"swept r must be in [0, 1], got {value!r}")
        return env, float(value), alpha
    if name == PARAM_ALPHA_SQ:
        if not 0.0 <= value <= 1.0:
            raise ValidationError(f"swept alpha_sq must be in [0, 1], got {value!r}")
        return env, r, math.sqrt(float(value))
    if name == PARAM_LAMBDA_OVER_GAMMA:
        if env.model != MODEL_STRONG_T0:
            raise ValidationError("lambda_over_gamma sweeps require the strong-t0 model")
        gamma = env.strong.gamma
        return replace(env, strong=StrongCouplingParams(gamma, float(value) * gamma)), r, alpha
    if name == PARAM_KT_OVER_HBAR_OMEGA0:
        if env.thermal is None:
            raise ValidationError("temperature sweeps require a thermal model")
        if value < 0:
            raise ValidationError(f"kT/(hbar*omega0) must be >= 0, got {value!r}")
        x = math.inf if value == 0.0 else 1.0 / float(value)
        return replace(env, thermal=replace(env.thermal, x=x)), r, alpha
    raise ValidationError(f"unknown sweep parameter {name!r}; expected one of {PARAM_NAMES}")


def _max_workers() -> int:
    raw = os.environ.get(ENV_THREADS, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValidationError(f"{ENV_THREADS} must be an integer, got {raw!r}") from None


def sweep(
    env: Environment,
    r: float,
    alpha: float,
    param_name: str,
    param_values,
    tmax_gamma: float,
    steps: int,
) -> SweepGrid:
    """Evaluate both-family concurrence over one swept parameter.

    Rows are independent pure evaluations; ENTLAB_THREADS > 1 evaluates them
    on a thread pool. Assembly order is by parameter value, deterministic.
    """
    values = np.asarray(param_values, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ValidationError("param_values must be a non-empty 1-d array")
    grid = _uniform_grid(tmax_gamma, steps)

    def row(value: float) -> tuple[np.ndarray, np.ndarray]:
        env_i, r_i, alpha_i = _apply_param(env, r, alpha, param_name, float(value))
        out = []
        for family in (Family.PHI, Family.PSI):
            kern = kernel_arrays(env_i, EwlSpec(family, r_i, alpha_i), grid)
            out.append(np.minimum(np.maximum(kern, 0.0), 1.0))
        return out[0], out[1]

    workers = _max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, values))
    else:
        rows = [row(v) for v in values]
    c_phi = np.vstack([p for p, _ in rows])
    c_psi = np.vstack([p for _, p in rows])
    return SweepGrid(param_name, values, grid, c_phi, c_psi)


# --- figure presets --------------------------------------------------------

FIG_STEPS = 2000
FIG_PARAM_POINTS = 201

#: omega0/gamma used by thermal presets (only the coherence phase feels it).
PRESET_OMEGA0 = 10.0

#: Fig. 3 sweeps lambda/gamma inside the oscillatory window, away from the
#: d -> 0 endpoints.
FIG3_LAMBDA_RANGE = (0.05, 1.95)

#: Fig. 6 temperature axis (kT/hbar*omega0); 0 encodes the T = 0 reference
#: column, the positive part starts at 1e-3.
FIG6_KT_RANGE = (1e-3, 1.0)


def _strong_env(lam_over_gamma: float) -> Environment:
    return Environment(MODEL_STRONG_T0, strong=StrongCouplingParams(1.0, lam_over_gamma))


def _markovian_env(x: float) -> Environment:
    return Environment("markovian", thermal=ThermalParams(1.0, PRESET_OMEGA0, x))


def figure_preset(
    fig_id: int, steps: int = FIG_STEPS, param_points: int = FIG_PARAM_POINTS
) -> TrajectoryPair | SweepGrid:
    """The six canonical parameter sets, as a trajectory pair (1) or sweep (2-6).

    1: structured reservoir, r=1, alpha^2=1/3, lambda/gamma=0.01, t in [0, 3 dt]
    2: structured reservoir Werner sweep over r, alpha^2=1/2, lambda/gamma=0.1
    3: structured reservoir, r=1, alpha^2=1/3, sweep over lambda/gamma
    4: Markovian kT/hbar*omega0 = 0.1 Werner sweep over r
    5: Markovian kT/hbar*omega0 = 0.1 pure-state sweep over alpha^2
    6: Markovian, r=1, alpha^2=1/3, sweep over kT/hbar*omega0 (plus T=0 column)
    """
    if fig_id == 1:
        lam = 0.01
        tmax = 3.0 * zero_spacing(StrongCouplingParams(1.0, lam))
        return trajectory_pair(_strong_env(lam), 1.0, math.sqrt(1.0 / 3.0), tmax, steps)
    if fig_id == 2:
        lam = 0.1
        tmax = 2.0 * zero_spacing(StrongCouplingParams(1.0, lam))
        values = np.linspace(0.0, 1.0, param_points)
        return sweep(_strong_env(lam), 1.0, math.sqrt(0.5), PARAM_R, values, tmax, steps)
    if fig_id == 3:
        lo, hi = FIG3_LAMBDA_RANGE
        tmax = 2.0 * zero_spacing(StrongCouplingParams(1.0, lo))
        values = np.linspace(lo, hi, param_points)
        return sweep(
            _strong_env(lo), 1.0, math.sqrt(1.0 / 3.0), PARAM_LAMBDA_OVER_GAMMA, values, tmax, steps
        )
    if fig_id == 4:
        values = np.linspace(0.0, 1.0, param_points)
        return sweep(_markovian_env(10.0), 1.0, math.sqrt(0.5), PARAM_R, values, 10.0, steps)
    if fig_id == 5:
        values = np.linspace(0.0, 1.0, param_points)
        return sweep(_markovian_env(10.0), 1.0, math.sqrt(0.5), PARAM_ALPHA_SQ, values, 10.0, steps)
    if fig_id == 6:
        lo, hi = FIG6_KT_RANGE
        values = np.concatenate([[0.0], np.linspace(lo, hi, param_points - 1)])
        return sweep(
            _markovian_env(10.0),
            1.0,
            math.sqrt(1.0 / 3.0),
            PARAM_KT_OVER_HBAR_OMEGA0,
            values,
            10.0,
            steps,
        )
    raise ValidationError(f"figure id must be 1..6, got {fig_id!r}")
