"""entlab: entanglement dynamics of independent qubits under local noise.

Core idea: when each qubit sees only its own environment, the joint state
follows from the single-qubit (u, v, z) evolution alone. The package builds
those closed forms for three environment models, composes them into two-qubit
dynamics, and tracks the Wootters concurrence: decay, sudden death, dark
periods and revivals.
"""

__version__ = "0.1.0"

from .analysis import (
    DarkInterval,
    DarkReport,
    SweepGrid,
    Trajectory,
    TrajectoryPair,
    dark_intervals,
    esd_time_highT,
    esd_time_numeric,
    figure_preset,
    k_tilde,
    kernel_at,
    sweep,
    trajectory,
    trajectory_pair,
)
from .channels import (
    TransferTensor,
    choi,
    compose_product,
    identity_tensor,
    kraus_from_choi,
    transfer_from_uvz,
    two_qubit_evolve,
)
from .concurrence import (
    concurrence_family,
    concurrence_general,
    concurrence_x,
    initial_concurrence,
    k_factors,
    r_star,
)
from .envmodels import (
    Environment,
    StrongCouplingParams,
    ThermalParams,
    UVZ,
    markovian_exact,
    markovian_paper_lowT,
    nonmark_weak_lowT,
    spectral_density,
    strong_t0,
    u_zeros,
    zero_spacing,
)
from .errors import (
    BracketError,
    EigensolverError,
    EntlabError,
    InvalidStateError,
    NotHermitianError,
    ValidationError,
)
from .states import EwlSpec, Family, StateClass, XState, classify, make_ewl

__all__ = [
    "__version__",
    "BracketError",
    "DarkInterval",
    "DarkReport",
    "EigensolverError",
    "EntlabError",
    "Environment",
    "EwlSpec",
    "Family",
    "InvalidStateError",
    "NotHermitianError",
    "StateClass",
    "StrongCouplingParams",
    "SweepGrid",
    "ThermalParams",
    "Trajectory",
    "TrajectoryPair",
    "TransferTensor",
    "UVZ",
    "ValidationError",
    "XState",
    "choi",
    "classify",
    "compose_product",
    "concurrence_family",
    "concurrence_general",
    "concurrence_x",
    "dark_intervals",
    "esd_time_highT",
    "esd_time_numeric",
    "figure_preset",
    "identity_tensor",
    "initial_concurrence",
    "k_factors",
    "k_tilde",
    "kernel_at",
    "kraus_from_choi",
    "make_ewl",
    "markovian_exact",
    "markovian_paper_lowT",
    "nonmark_weak_lowT",
    "r_star",
    "spectral_density",
    "strong_t0",
    "sweep",
    "trajectory",
    "trajectory_pair",
    "transfer_from_uvz",
    "two_qubit_evolve",
    "u_zeros",
    "zero_spacing",
]
