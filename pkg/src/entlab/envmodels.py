"""Closed-form single-qubit evolution for the three environment models.

Every model reduces the single-qubit map at time t to a triple (u_t, v_t, z_t)
acting on the density-matrix elements in the {excited, ground} basis:

    rho_ee(t) = u_t rho_ee(0) + v_t rho_gg(0)
    rho_gg(t) = (1 - u_t) rho_ee(0) + (1 - v_t) rho_gg(0)
    rho_eg(t) = z_t rho_eg(0)

u is the excited-population retention, v the thermal feeding of the excited
level, z the coherence factor. A triple describes a completely positive map
iff |z|^2 <= u (1 - v) (certified downstream by the Choi construction).

Models:

* ``strong_t0`` -- zero-temperature qubit in a lossy single-mode cavity with a
  Lorentzian coupling spectrum of width lambda centered on the qubit frequency
  (decay rate Gamma).  For lambda/Gamma < 2 the population oscillates,

      u_t = e^{-lambda t} [cos(d t/2) + (lambda/d) sin(d t/2)]^2,
      d = sqrt(2 Gamma lambda - lambda^2),  v_t = 0,  z_t = sqrt(u_t),

  with zeros t_n = (2/d)[n pi - arctan(d/lambda)] spaced by 2 pi / d.  For
  lambda/Gamma > 2 the hyperbolic continuation applies (monotonic decay); at
  lambda = 2 Gamma the degenerate limit u_t = e^{-lambda t} (1 + lambda t/2)^2.
  z carries no free-rotation phase (interaction-picture solution); concurrence
  is invariant under local phases, so none is added.

* ``markovian_exact`` -- weak-coupling Lindblad damping at temperature T with
  x = hbar omega0 / (k_B T).  With R = Gamma coth(x/2) and the Gibbs excited
  population p_eq = 1/(e^x + 1):

      u_t = e^{-R t} + p_eq (1 - e^{-R t}),   v_t = p_eq (1 - e^{-R t}),
      z_t = e^{-R t / 2} e^{-i omega0 t}.

  x = +inf is the T = 0 limit (pure spontaneous emission).

* ``markovian_paper_lowT`` -- the historical printed form of the same solution
  whose stationary populations are 1/(e^x - 1) instead of the Gibbs value; it
  agrees with ``markovian_exact`` to O(e^{-2x}) and becomes unphysical (v > 1)
  for x < ln 2.  Kept verbatim for comparison; emits
  LowTemperatureValidityWarning outside x >= 3.

* ``nonmark_weak_lowT`` -- weak-coupling non-Markovian solution valid at low
  temperature (e^{-x} << 1, Gamma/omega0 << 1).

All functions are pure; parameter records are frozen dataclasses, safe to
share across threads. ``*_arrays`` variants evaluate a whole time grid at
once.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

#: |lambda - 2 Gamma| <= DEGENERATE_BAND * Gamma selects the degenerate branch.
DEGENERATE_BAND = 1e-9

#: Below this x the printed low-T Markovian block is flagged as out of domain.
PAPER_LOWT_X_MIN = 3.0


class LowTemperatureValidityWarning(UserWarning):
    """The printed low-temperature solution was evaluated outside its domain."""


@dataclass(frozen=True)
class UVZ:
    """Single-qubit map coefficients (u, v, z) at one instant."""

    u: float
    v: float
    z: complex

    def cp_defect(self) -> float:
        """|z|^2 - u (1 - v); <= 0 for a completely positive map."""
        return abs(self.z) ** 2 - self.u * (1.0 - self.v)

    def validate(self, tol: float = 1e-12, require_cp: bool = True) -> "UVZ":
        """Raise ValidationError unless this triple describes a valid channel."""
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise ValidationError("u, v must be finite")
        if not (math.isfinite(self.z.real) and math.isfinite(self.z.imag)):
            raise ValidationError("z must be finite")
        if not (-tol <= self.u <= 1.0 + tol):
            raise ValidationError(f"u = {self.u!r} outside [0, 1]")
        if not (-tol <= self.v <= 1.0 + tol):
            raise ValidationError(f"v = {self.v!r} outside [0, 1]")
        if require_cp and self.cp_defect() > tol:
            raise ValidationError(
                f"|z|^2 = {abs(self.z) ** 2:.12g} exceeds u(1-v) = "
                f"{self.u * (1.0 - self.v):.12g}: map is not completely positive"
            )
        return self


IDENTITY_UVZ = UVZ(1.0, 0.0, 1.0 + 0.0j)


def _check_time(t) -> np.ndarray:
    ts = np.asarray(t, dtype=np.float64)
    if np.any(ts < 0) or not np.all(np.isfinite(ts)):
        raise ValidationError("time must be finite and >= 0")
    return ts


@dataclass(frozen=True)
class StrongCouplingParams:
    """Lorentzian-reservoir parameters: decay rate gamma, spectral width lam.

    The reservoir memory time is ~1/lam and the relaxation time ~1/gamma;
    lam/gamma < 2 is the oscillatory (memory-dominated) regime.
    """

    gamma: float
    lam: float

    def __post_init__(self):
        for name, val in (("gamma", self.gamma), ("lam", self.lam)):
            if not (math.isfinite(val) and val > 0):
                raise ValidationError(f"{name} must be finite and > 0, got {val!r}")

    @property
    def ratio(self) -> float:
        return self.lam / self.gamma

    def is_degenerate(self) -> bool:
        return abs(self.lam - 2.0 * self.gamma) <= DEGENERATE_BAND * self.gamma


def _strong_amplitude(p: StrongCouplingParams, ts: np.ndarray) -> np.ndarray:
    """e^{-lam t / 2} [cos(d t / 2) + (lam / d) sin(d t / 2)] (all branches).

    u_t is the square of this amplitude. The hyperbolic branch is evaluated in
    the overflow-free form with both exponents negative (dbar < lam always).
    """
    lam, gamma = p.lam, p.gamma
    if p.is_degenerate():
        return np.exp(-lam * ts / 2.0) * (1.0 + lam * ts / 2.0)
    if lam < 2.0 * gamma:
        d = math.sqrt(lam * (2.0 * gamma - lam))
        half = d * ts / 2.0
        return np.exp(-lam * ts / 2.0) * (np.cos(half) + (lam / d) * np.sin(half))
    dbar = math.sqrt(lam * (lam - 2.0 * gamma))
    flat = np.atleast_1d(ts)
    half = dbar * flat / 2.0
    amp = np.empty_like(flat)
    safe = half <= 300.0  # cosh overflows near 710; keep the exact form where it can't
    amp[safe] = np.exp(-lam * flat[safe] / 2.0) * (
        np.cosh(half[safe]) + (lam / dbar) * np.sinh(half[safe])
    )
    big = ~safe
    if np.any(big):  # factored form: both exponents negative since dbar < lam
        cplus = 0.5 * (1.0 + lam / dbar)
        cminus = 0.5 * (1.0 - lam / dbar)
        amp[big] = cplus * np.exp((dbar - lam) * flat[big] / 2.0) + cminus * np.exp(
            -(dbar + lam) * flat[big] / 2.0
        )
    return amp.reshape(np.shape(ts))


def strong_t0_arrays(p: StrongCouplingParams, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (u, v, z) for the strong-coupling T=0 model."""
    ts = _check_time(t)
    amp = _strong_amplitude(p, ts)
    u = amp * amp
    v = np.zeros_like(u)
    z = np.sqrt(u).astype(np.complex128)
    return u, v, z


def strong_t0(p: StrongCouplingParams, t: float) -> UVZ:
    """(u_t, 0, sqrt(u_t)) for the zero-temperature structured reservoir."""
    u, v, z = strong_t0_arrays(p, float(t))
    return UVZ(float(u), float(v), complex(z))


def _require_oscillatory(p: StrongCouplingParams) -> float:
    """Return d, erroring out of the non-oscillatory (no-zeros) regimes."""
    if p.lam >= 2.0 * p.gamma or p.is_degenerate():
        raise ValidationError(
            "u_t has no zeros in the weak regime (lambda/gamma >= 2); "
            f"got lambda/gamma = {p.ratio:.6g}"
        )
    return math.sqrt(p.lam * (2.0 * p.gamma - p.lam))


def u_zeros(p: StrongCouplingParams, n: int) -> float:
    """n-th zero of u_t: t_n = (2/d)[n pi - arctan(d/lambda)], n >= 1."""
    if n < 1:
        raise ValidationError(f"zero index must be >= 1, got {n}")
    d = _require_oscillatory(p)
    return (2.0 / d) * (n * math.pi - math.atan2(d, p.lam))


def zero_spacing(p: StrongCouplingParams) -> float:
    """Distance between consecutive zeros of u_t: 2 pi / d."""
    return 2.0 * math.pi / _require_oscillatory(p)


def spectral_density(omega: float, p: StrongCouplingParams, omega0: float) -> float:
    """Lorentzian coupling spectrum J(w) = (1/2pi) gamma lam^2 / ((w0-w)^2 + lam^2).

    Peaks at omega0 with J = gamma/(2 pi); half width at half maximum lam.
    """
    det = omega0 - omega
    return p.gamma * p.lam**2 / (2.0 * math.pi * (det * det + p.lam * p.lam))


@dataclass(frozen=True)
class ThermalParams:
    """Thermal-reservoir parameters.

    gamma: spontaneous emission rate; omega0: qubit transition frequency;
    x = hbar omega0 / (k_B T) > 0, with x = +inf meaning T = 0.
    """

    gamma: float
    omega0: float
    x: float

    def __post_init__(self):
        for name, val in (("gamma", self.gamma), ("omega0", self.omega0)):
            if not (math.isfinite(val) and val > 0):
                raise ValidationError(f"{name} must be finite and > 0, got {val!r}")
        if not (self.x > 0):
            raise ValidationError(f"x = hbar*omega0/(kB*T) must be > 0, got {self.x!r}")

    @property
    def nbar(self) -> float:
        """Thermal mean photon number of the resonant mode, 1/(e^x - 1)."""
        if math.isinf(self.x) or self.x > 700.0:  # e^x overflows near 710
            return math.exp(-self.x)
        return 1.0 / math.expm1(self.x)

    @property
    def rate(self) -> float:
        """Total relaxation rate R = gamma (2 nbar + 1) = gamma coth(x/2)."""
        return self.gamma if math.isinf(self.x) else self.gamma / math.tanh(self.x / 2.0)

    @property
    def p_eq(self) -> float:
        """Gibbs excited-state population 1/(e^x + 1)."""
        if math.isinf(self.x) or self.x > 700.0:
            return math.exp(-self.x)
        return 1.0 / (math.exp(self.x) + 1.0)


def markovian_exact_arrays(p: ThermalParams, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (u, v, z) for the Lindblad solution with Gibbs fixed point."""
    ts = _check_time(t)
    decay = np.exp(-p.rate * ts)
    peq = p.p_eq
    u = decay + peq * (1.0 - decay)
    v = peq * (1.0 - decay)
    z = np.sqrt(decay) * np.exp(-1j * p.omega0 * ts)
    return u, v, z


def markovian_exact(p: ThermalParams, t: float) -> UVZ:
    """Finite-temperature Markovian damping (default thermal model)."""
    u, v, z = markovian_exact_arrays(p, float(t))
    return UVZ(float(u), float(v), complex(z))


def markovian_paper_lowT_arrays(p: ThermalParams, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized printed low-temperature Markovian block (see module docs)."""
    ts = _check_time(t)
    if p.x < PAPER_LOWT_X_MIN:
        warnings.warn(
            f"markovian_paper_lowT evaluated at x = {p.x:.4g} < {PAPER_LOWT_X_MIN}; "
            "the printed low-temperature form is unphysical there "
            "(stationary populations 1/(e^x - 1) exceed 1 below x = ln 2)",
            LowTemperatureValidityWarning,
            stacklevel=3,
        )
    decay = np.exp(-p.rate * ts)
    # same algebra as the printed ratio form [q + e^{-Rt}(1-2q)]/(1-q) with
    # q = e^{-x}, but exact at t = 0: the stationary weight is nbar = q/(1-q)
    nb = p.nbar
    u = decay + nb * (1.0 - decay)
    v = nb * (1.0 - decay)
    z = np.sqrt(decay) * np.exp(-1j * p.omega0 * ts)
    return u, v, z


def markovian_paper_lowT(p: ThermalParams, t: float) -> UVZ:
    """Printed low-T Markovian block, verbatim; valid for x >> 1."""
    u, v, z = markovian_paper_lowT_arrays(p, float(t))
    return UVZ(float(u), float(v), complex(z))


def nonmark_weak_lowT_arrays(p: ThermalParams, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized weak-coupling low-temperature non-Markovian solution."""
    ts = _check_time(t)
    q = math.exp(-p.x) if not math.isinf(p.x) else 0.0
    eg = np.exp(-p.gamma * ts)
    denom = 1.0 - q * eg
    u = 1.0 - (1.0 - eg) * (1.0 - q) / (denom * denom)
    v = q * (1.0 - eg) / denom
    z = ((1.0 - q) / denom) * np.exp(-p.gamma * ts / 2.0 - 1j * p.omega0 * ts)
    return u, v, z


def nonmark_weak_lowT(p: ThermalParams, t: float) -> UVZ:
    """Weak-coupling non-Markovian damping at low temperature."""
    u, v, z = nonmark_weak_lowT_arrays(p, float(t))
    return UVZ(float(u), float(v), complex(z))


# --- model registry -------------------------------------------------------

MODEL_STRONG_T0 = "strong-t0"
MODEL_MARKOVIAN = "markovian"
MODEL_MARKOVIAN_PAPER_LOWT = "markovian-paper-lowt"
MODEL_NONMARK_WEAK_LOWT = "nonmark-weak-lowt"

MODEL_NAMES = (
    MODEL_STRONG_T0,
    MODEL_MARKOVIAN,
    MODEL_MARKOVIAN_PAPER_LOWT,
    MODEL_NONMARK_WEAK_LOWT,
)

_THERMAL_ARRAY_FNS = {
    MODEL_MARKOVIAN: markovian_exact_arrays,
    MODEL_MARKOVIAN_PAPER_LOWT: markovian_paper_lowT_arrays,
    MODEL_NONMARK_WEAK_LOWT: nonmark_weak_lowT_arrays,
}


@dataclass(frozen=True)
class Environment:
    """One named environment model with its parameters.

    Exactly one of ``strong`` / ``thermal`` must be set, matching ``model``.
    Evaluation is offered both in physical time and in the dimensionless
    gamma*t used throughout the analysis layer.
    """

    model: str
    strong: StrongCouplingParams | None = None
    thermal: ThermalParams | None = None

    def __post_init__(self):
        if self.model not in MODEL_NAMES:
            raise ValidationError(f"unknown environment model {self.model!r}")
        wants_strong = self.model == MODEL_STRONG_T0
        if wants_strong and (self.strong is None or self.thermal is not None):
            raise ValidationError(f"model {self.model!r} requires strong-coupling params only")
        if not wants_strong and (self.thermal is None or self.strong is not None):
            raise ValidationError(f"model {self.model!r} requires thermal params only")

    @property
    def gamma(self) -> float:
        return self.strong.gamma if self.strong is not None else self.thermal.gamma

    def uvz_arrays(self, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self.model == MODEL_STRONG_T0:
            return strong_t0_arrays(self.strong, t)
        return _THERMAL_ARRAY_FNS[self.model](self.thermal, t)

    def uvz(self, t: float) -> UVZ:
        u, v, z = self.uvz_arrays(float(t))
        return UVZ(float(u), float(v), complex(z))

    def uvz_arrays_gamma_t(self, gamma_t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.uvz_arrays(np.asarray(gamma_t, dtype=np.float64) / self.gamma)

    def uvz_gamma_t(self, gamma_t: float) -> UVZ:
        return self.uvz(float(gamma_t) / self.gamma)
