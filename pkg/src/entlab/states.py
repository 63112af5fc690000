"""Two-qubit initial states: extended Werner-like (EWL) mixtures and X states.

An EWL state mixes a Bell-like pure state with white noise,

    rho(0) = r |pure><pure| + (1 - r)/4 * I_4,

with purity r in [0, 1] and pure part either

    family "phi":  alpha |01> + beta |10>   (one excitation shared)
    family "psi":  alpha |00> + beta |11>   (zero / double excitation)

where alpha is real, beta = |beta| e^{i delta}, alpha^2 + |beta|^2 = 1.
r = 0 gives the maximally mixed state, r = 1 the pure Bell-like state, and
alpha = 1/sqrt(2) the Werner family. All EWL states are X states (nonzero
entries only on the main diagonal and anti-diagonal of the standard basis
|11>, |10>, |01>, |00>), a structure preserved by independent local (u, v, z)
channels.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import matrixcore
from .errors import ValidationError

TWO_PI = 2.0 * math.pi


class Family(str, Enum):
    PHI = "phi"
    PSI = "psi"


@dataclass(frozen=True)
class EwlSpec:
    """Parameters of an extended Werner-like initial state."""

    family: Family
    r: float
    alpha: float
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not (math.isfinite(self.r) and 0.0 <= self.r <= 1.0):
            raise ValidationError(f"purity r must be in [0, 1], got {self.r!r}")
        if not (math.isfinite(self.alpha) and 0.0 <= self.alpha <= 1.0):
            raise ValidationError(f"amplitude alpha must be in [0, 1], got {self.alpha!r}")
        if not math.isfinite(self.delta):
            raise ValidationError(f"phase delta must be finite, got {self.delta!r}")
        object.__setattr__(self, "delta", self.delta % TWO_PI)

    @property
    def beta_abs(self) -> float:
        return math.sqrt(1.0 - self.alpha * self.alpha)


@dataclass(frozen=True)
class EwlElements:
    """Nonzero elements of an EWL density matrix, with the corner modulus
    kept separately so phase-independent quantities stay phase-independent
    to the last bit."""

    diag: tuple[float, float, float, float]
    rho14: complex
    rho23: complex
    corner_abs: float  # |rho14| or |rho23|, whichever is the live corner


def ewl_elements(spec: EwlSpec) -> EwlElements:
    """Closed-form elements of the EWL state in the standard basis."""
    m = (1.0 - spec.r) / 4.0
    asq = spec.alpha * spec.alpha
    bsq = 1.0 - asq
    corner_abs = spec.alpha * spec.beta_abs * spec.r
    corner = corner_abs * cmath.exp(1j * spec.delta)
    if spec.family is Family.PHI:
        diag = (m, m + bsq * spec.r, m + asq * spec.r, m)
        return EwlElements(diag, 0.0j, corner, corner_abs)
    diag = (m + bsq * spec.r, m, m, m + asq * spec.r)
    return EwlElements(diag, corner, 0.0j, corner_abs)


def make_ewl(spec: EwlSpec) -> np.ndarray:
    """EWL density matrix (4x4 complex) in the standard basis."""
    e = ewl_elements(spec)
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = e.diag
    rho[0, 3] = e.rho14
    rho[3, 0] = e.rho14.conjugate()
    rho[1, 2] = e.rho23
    rho[2, 1] = e.rho23.conjugate()
    return rho


@dataclass(frozen=True)
class XState:
    """Two-qubit state with entries only on the diagonal and anti-diagonal."""

    diag: tuple[float, float, float, float]
    rho14: complex
    rho23: complex

    def validate(self, tol: float = 1e-12) -> "XState":
        d = self.diag
        if len(d) != 4 or any(not math.isfinite(x) for x in d):
            raise ValidationError("diag must be four finite reals")
        if min(d) < -tol:
            raise ValidationError(f"diagonal entries must be >= 0, got min {min(d)!r}")
        if abs(sum(d) - 1.0) > max(tol, 1e-12):
            raise ValidationError(f"diagonal must sum to 1, got {sum(d)!r}")
        if abs(self.rho14) ** 2 > d[0] * d[3] + max(tol, 1e-12):
            raise ValidationError("|rho14|^2 exceeds rho11*rho44: not positive semidefinite")
        if abs(self.rho23) ** 2 > d[1] * d[2] + max(tol, 1e-12):
            raise ValidationError("|rho23|^2 exceeds rho22*rho33: not positive semidefinite")
        return self

    def to_matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=np.complex128)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = self.diag
        rho[0, 3] = self.rho14
        rho[3, 0] = complex(self.rho14).conjugate()
        rho[1, 2] = self.rho23
        rho[2, 1] = complex(self.rho23).conjugate()
        return rho


#: Off-pattern positions (row, col) that must vanish for an X state.
_OFF_PATTERN = ((0, 1), (0, 2), (1, 0), (2, 0), (1, 3), (2, 3), (3, 1), (3, 2))


def off_pattern_weight(rho: np.ndarray) -> float:
    """Largest modulus among the entries an X state forbids."""
    a = np.asarray(rho)
    return max(abs(a[i, j]) for i, j in _OFF_PATTERN)


def xstate_from_matrix(rho, tol: float = 1e-9) -> XState:
    """Project a matrix onto the XState record, erring if off-pattern."""
    a = matrixcore.as_matrix(rho, dim=4)
    w = off_pattern_weight(a)
    if w > tol:
        raise ValidationError(f"matrix is not an X state: off-pattern weight {w:.3e}")
    diag = tuple(float(a[i, i].real) for i in range(4))
    return XState(diag, complex(a[0, 3]), complex(a[1, 2]))


@dataclass(frozen=True)
class StateClass:
    """Classification result: structural kind plus recognized families."""

    kind: str  # "x" or "general"
    werner_like: bool
    bell_like: bool
    product: bool
    family: Family | None = None


def _matches_ewl(rho: np.ndarray, spec: EwlSpec, tol: float) -> bool:
    return float(np.max(np.abs(rho - make_ewl(spec)))) <= tol


def _corner_spec(rho, family: Family, r: float, alpha: float, tol: float) -> EwlSpec:
    corner = rho[0, 3] if family is Family.PSI else rho[1, 2]
    delta = float(np.angle(corner)) if abs(corner) > tol else 0.0
    return EwlSpec(family, r, alpha, delta)


def classify(rho, tol: float = 1e-9) -> StateClass:
    """Classify a two-qubit density matrix.

    kind is "x" iff every off-pattern entry has modulus <= tol. The flags
    mark recognizable sub-families: Werner-like (EWL with alpha = 1/sqrt(2)),
    Bell-like (EWL with r = 1), and product (rho = rho_A (x) rho_B).
    """
    a = matrixcore.validate_density_matrix(rho, dim=4, tol=max(tol, 1e-9))
    kind = "x" if off_pattern_weight(a) <= tol else "general"

    werner = False
    bell = False
    matched: Family | None = None
    if kind == "x":
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for family in (Family.PHI, Family.PSI):
            corner = a[1, 2] if family is Family.PHI else a[0, 3]
            r_hat = min(1.0, 2.0 * abs(corner))
            if _matches_ewl(a, _corner_spec(a, family, r_hat, inv_sqrt2, tol), tol):
                werner = True
                matched = matched or family
            alpha_sq = float(a[2, 2].real) if family is Family.PHI else float(a[3, 3].real)
            alpha_hat = math.sqrt(min(1.0, max(0.0, alpha_sq)))
            if _matches_ewl(a, _corner_spec(a, family, 1.0, alpha_hat, tol), tol):
                bell = True
                matched = matched or family

    ra = _partial_trace_keep_first(a)
    rb = _partial_trace_keep_second(a)
    product = float(np.max(np.abs(a - np.kron(ra, rb)))) <= tol
    return StateClass(kind, werner, bell, product, matched)


def _partial_trace_keep_first(rho: np.ndarray) -> np.ndarray:
    t = rho.reshape(2, 2, 2, 2)
    return np.einsum("ikjk->ij", t)


def _partial_trace_keep_second(rho: np.ndarray) -> np.ndarray:
    t = rho.reshape(2, 2, 2, 2)
    return np.einsum("kikj->ij", t)
