"""Quantum channels as transfer tensors, and their composition.

A single-qudit channel is stored as the 4-index transfer tensor A acting
directly on density-matrix elements,

    rho_{i i'}(t) = sum_{l l'} A[i, i', l, l'] rho_{l l'}(0),

which makes the product map over N independent qudits a plain tensor
contraction, one site at a time. Kraus operators are recoverable from the
Choi-matrix eigendecomposition when a test needs the operator-sum form.

Basis conventions (load-bearing):

* local qubit index 0 = excited |1>, index 1 = ground |0>;
* composite kets |i_1 i_2 ... i_N> are ordered with site 1 slowest, so for
  two qubits the standard basis is |1> = |11>, |2> = |10>, |3> = |01>,
  |4> = |00> (qubit A first).

``two_qubit_evolve`` implements the closed-form element update for two
independent qubits in this basis and is cross-checked against
``compose_product`` (they must agree to 1e-13).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matrixcore
from .envmodels import UVZ
from .errors import ValidationError

#: Entry-wise tolerance for the tensor's structural invariants.
TENSOR_TOL = 1e-12


@dataclass(frozen=True)
class TransferTensor:
    """Channel on one d-level system, as an element-wise linear map.

    ``a[i, i2, l, l2]`` is the coefficient taking input element (l, l2) to
    output element (i, i2). A physical tensor is trace preserving
    (sum_i a[i, i, l, l2] = delta(l, l2)) and Hermiticity covariant
    (a[i2, i, l2, l] = conj(a[i, i2, l, l2])).
    """

    d: int
    a: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.a, dtype=np.complex128)
        if arr.shape != (self.d,) * 4:
            raise ValidationError(
                f"transfer tensor must have shape {(self.d,) * 4}, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValidationError("transfer tensor entries must be finite")
        object.__setattr__(self, "a", arr)

    def trace_defect(self) -> float:
        traced = np.einsum("iilm->lm", self.a)
        return float(np.max(np.abs(traced - np.eye(self.d))))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.a.transpose(1, 0, 3, 2).conj() - self.a)))

    def validate(self, tol: float = TENSOR_TOL) -> "TransferTensor":
        td = self.trace_defect()
        if td > tol:
            raise ValidationError(f"transfer tensor is not trace preserving (defect {td:.3e})")
        hd = self.hermiticity_defect()
        if hd > tol:
            raise ValidationError(
                f"transfer tensor is not Hermiticity covariant (defect {hd:.3e})"
            )
        return self

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Action on a single-qudit matrix (no validation of rho)."""
        return np.einsum("ijlm,lm->ij", self.a, np.asarray(rho, dtype=np.complex128))


def identity_tensor(d: int) -> TransferTensor:
    """The do-nothing channel: a[i, i2, l, l2] = delta(i, l) delta(i2, l2)."""
    eye = np.eye(d)
    return TransferTensor(d, np.einsum("il,jm->ijlm", eye, eye).astype(np.complex128))


def transfer_from_uvz(q: UVZ, check_cp: bool = True) -> TransferTensor:
    """Qubit transfer tensor for the (u, v, z) single-qubit map.

    With ``check_cp`` (default) the triple must define a completely positive
    map; pass ``check_cp=False`` to build boundary- or CP-violating tensors
    for Choi-certificate tests.
    """
    q.validate(require_cp=check_cp)
    a = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    a[0, 0, 0, 0] = q.u
    a[0, 0, 1, 1] = q.v
    a[1, 1, 0, 0] = 1.0 - q.u
    a[1, 1, 1, 1] = 1.0 - q.v
    a[0, 1, 0, 1] = q.z
    a[1, 0, 1, 0] = complex(q.z).conjugate()
    return TransferTensor(2, a)


def choi(tt: TransferTensor) -> np.ndarray:
    """Choi matrix C = sum_{l l'} |l><l'| (x) Phi(|l><l'|), shape (d^2, d^2).

    C is positive semidefinite iff the channel is completely positive; for a
    (u, v, z) qubit map C has diagonal (u, 1-u, v, 1-v) and corner entries
    z / conj(z), so PSD reduces to |z|^2 <= u (1 - v).
    """
    d = tt.d
    return np.transpose(tt.a, (2, 0, 3, 1)).reshape(d * d, d * d)


def is_completely_positive(tt: TransferTensor, tol: float = matrixcore.DEFAULT_TOL) -> bool:
    return matrixcore.is_psd(choi(tt), tol)


def kraus_from_choi(c: np.ndarray, tol: float = 1e-12) -> list[np.ndarray]:
    """Kraus operators from a PSD Choi matrix (validation aid).

    Eigenvectors with eigenvalue above tol become operators K[i, l] scaled by
    sqrt(eigenvalue); sum_k K rho K^dagger reproduces the channel.
    """
    c = matrixcore.require_hermitian(c, 1e-10, what="Choi matrix")
    d = math.isqrt(c.shape[0])
    if d * d != c.shape[0]:
        raise ValidationError(f"Choi matrix dimension {c.shape[0]} is not a perfect square")
    vals, vecs = np.linalg.eigh(c)
    if vals[0] < -1e-10:
        raise ValidationError(f"Choi matrix is not PSD (min eig {vals[0]:.3e})")
    ops = []
    for w, vec in zip(vals, vecs.T):
        if w > tol:
            ops.append(math.sqrt(w) * vec.reshape(d, d).T)
    return ops


def compose_product(tensors: list[TransferTensor], rho0: np.ndarray) -> np.ndarray:
    """Apply independent single-qudit channels to a joint initial state.

    Site s of ``tensors`` acts on slot s of rho0, whose dimension must be the
    product of the local dimensions (site 1 slowest). Output is Hermitian and
    unit trace to 1e-12 whenever the inputs are valid.
    """
    if not tensors:
        raise ValidationError("need at least one transfer tensor")
    for tt in tensors:
        tt.validate()
    dims = [tt.d for tt in tensors]
    total = int(np.prod(dims))
    rho = matrixcore.validate_density_matrix(rho0, dim=total)
    n = len(dims)
    work = rho.reshape(dims + dims)
    for s, tt in enumerate(tensors):
        work = np.tensordot(tt.a, work, axes=([2, 3], [s, n + s]))
        work = np.moveaxis(work, (0, 1), (s, n + s))
    return np.ascontiguousarray(work.reshape(total, total))


def two_qubit_evolve(qa: UVZ, qb: UVZ, rho0: np.ndarray) -> np.ndarray:
    """Closed-form two-qubit update for independent (u, v, z) maps A and B.

    Element formulas in the standard basis (|11>, |10>, |01>, |00>); the
    anti-diagonal-plus-diagonal (X) pattern of the input is preserved exactly
    because every output element sources only from its own symmetry class.
    """
    qa.validate()
    qb.validate()
    r = matrixcore.validate_density_matrix(rho0, dim=4)
    ua, va, za = qa.u, qa.v, qa.z
    ub, vb, zb = qb.u, qb.v, qb.z
    out = np.zeros((4, 4), dtype=np.complex128)
    # populations
    out[0, 0] = ua * ub * r[0, 0] + ua * vb * r[1, 1] + va * ub * r[2, 2] + va * vb * r[3, 3]
    out[1, 1] = (
        ua * (1 - ub) * r[0, 0]
        + ua * (1 - vb) * r[1, 1]
        + va * (1 - ub) * r[2, 2]
        + va * (1 - vb) * r[3, 3]
    )
    out[2, 2] = (
        (1 - ua) * ub * r[0, 0]
        + (1 - ua) * vb * r[1, 1]
        + (1 - va) * ub * r[2, 2]
        + (1 - va) * vb * r[3, 3]
    )
    out[3, 3] = (
        (1 - ua) * (1 - ub) * r[0, 0]
        + (1 - ua) * (1 - vb) * r[1, 1]
        + (1 - va) * (1 - ub) * r[2, 2]
        + (1 - va) * (1 - vb) * r[3, 3]
    )
    # single-qubit coherences
    out[0, 1] = ua * zb * r[0, 1] + va * zb * r[2, 3]
    out[0, 2] = za * ub * r[0, 2] + za * vb * r[1, 3]
    out[1, 3] = za * (1 - ub) * r[0, 2] + za * (1 - vb) * r[1, 3]
    out[2, 3] = (1 - ua) * zb * r[0, 1] + (1 - va) * zb * r[2, 3]
    # two-qubit coherences
    out[0, 3] = za * zb * r[0, 3]
    out[1, 2] = za * complex(zb).conjugate() * r[1, 2]
    # Hermitian completion
    for i in range(4):
        for j in range(i + 1, 4):
            out[j, i] = out[i, j].conjugate()
    return out
