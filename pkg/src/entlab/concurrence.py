"""Concurrence of two-qubit states.

The general definition spin-flips the state with sigma_y (x) sigma_y,

    zeta = rho (sy (x) sy) conj(rho) (sy (x) sy),

takes the eigenvalues lambda_1 >= ... >= lambda_4 of zeta (real and
nonnegative for a physical rho, up to rounding) and returns

    C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)).

For X states this collapses to the closed form

    C = 2 max(0, K1, K2),
    K1 = |rho23| - sqrt(rho11 rho44),   K2 = |rho14| - sqrt(rho22 rho33),

and the family-resolved concurrences of evolved EWL states are
C_phi = 2 max(0, K1), C_psi = 2 max(0, K2). Conjugation and sigma_y (x)
sigma_y are taken in the standard basis |11>, |10>, |01>, |00>.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from . import matrixcore
from .errors import InvalidStateError, ValidationError
from .states import EwlSpec, Family, XState, ewl_elements

logger = logging.getLogger(__name__)

#: sigma_y (x) sigma_y in the standard basis (same matrix for either qubit order).
SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=np.complex128,
)

#: Spin-flipped-spectrum tolerances: clamp above CLAMP_FLOOR, reject below REJECT_FLOOR.
CLAMP_FLOOR = -1e-10
REJECT_FLOOR = -1e-8
IMAG_TOL = 1e-9


def concurrence_general(rho) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix."""
    try:
        a = matrixcore.validate_density_matrix(rho, dim=4, tol=1e-8)
    except ValidationError as exc:
        raise InvalidStateError(str(exc)) from exc
    zeta = a @ SIGMA_YY @ a.conj() @ SIGMA_YY
    vals = matrixcore.eigenvalues(zeta)
    worst_imag = float(np.max(np.abs(vals.imag)))
    if worst_imag > IMAG_TOL:
        raise InvalidStateError(
            f"invalid state: spin-flipped spectrum is not real (max imag {worst_imag:.3e})"
        )
    reals = np.sort(vals.real)[::-1]
    if reals[-1] < REJECT_FLOOR:
        raise InvalidStateError(
            f"invalid state: spin-flipped spectrum has eigenvalue {reals[-1]:.3e} < {REJECT_FLOOR}"
        )
    if reals[-1] < 0.0:
        logger.debug("clamping small negative spin-flip eigenvalue %r", reals[-1])
    roots = np.sqrt(np.maximum(reals, 0.0))
    raw = float(roots[0] - roots[1] - roots[2] - roots[3])
    if raw > 1.0:
        logger.debug("clamping concurrence %r > 1", raw)
    return min(max(raw, 0.0), 1.0)


def k_factors(x: XState) -> tuple[float, float]:
    """(K1, K2) for an X state; the concurrence is 2 max(0, K1, K2)."""
    d = x.diag
    k1 = abs(x.rho23) - math.sqrt(max(d[0] * d[3], 0.0))
    k2 = abs(x.rho14) - math.sqrt(max(d[1] * d[2], 0.0))
    return k1, k2


def concurrence_x(x: XState) -> float:
    """Closed-form concurrence of an X state."""
    k1, k2 = k_factors(x)
    return 2.0 * max(0.0, k1, k2)


def concurrence_family(x: XState, family: Family) -> float:
    """Family-resolved concurrence 2 max(0, K_family) of an evolved EWL state."""
    k1, k2 = k_factors(x)
    return 2.0 * max(0.0, k1 if Family(family) is Family.PHI else k2)


def initial_concurrence(r: float, alpha: float) -> float:
    """Concurrence of an EWL state at t = 0 (same value for both families).

    Equals 2 max(0, (alpha |beta| + 1/4) r - 1/4); positive iff r exceeds the
    threshold purity r_star(alpha).
    """
    elems = ewl_elements(EwlSpec(Family.PHI, r, alpha))
    d = elems.diag
    return 2.0 * max(0.0, elems.corner_abs - math.sqrt(d[0] * d[3]))


def r_star(alpha: float) -> float:
    """Threshold purity r* = 1/(1 + 4 alpha |beta|).

    EWL states are entangled iff r > r*; minimal (1/3) at alpha^2 = 1/2 and
    rising to 1 as the pure part approaches a product state.
    """
    if not (math.isfinite(alpha) and 0.0 <= alpha <= 1.0):
        raise ValidationError(f"amplitude alpha must be in [0, 1], got {alpha!r}")
    beta = math.sqrt(1.0 - alpha * alpha)
    return 1.0 / (1.0 + 4.0 * alpha * beta)
