"""Self-contained invariant suite.

Each check is a named, seeded, deterministic property test over the library's
documented invariants (channel trace preservation and positivity, Choi
complete-positivity certificates, concurrence oracle equivalences, zero
structure of the structured-reservoir model, ...). The CLI `validate`
subcommand and the service's /api/validate endpoint run them and report one
pass/fail line per check; the whole suite is sized to finish in well under a
minute on a laptop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm

from . import analysis, channels, concurrence, envmodels, matrixcore, states
from .envmodels import Environment, StrongCouplingParams, ThermalParams, UVZ
from .states import EwlSpec, Family

DEFAULT_SEED = 20240811


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


# --- samplers ---------------------------------------------------------------


def _rand_complex(rng, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _rand_hermitian(rng, dim: int) -> np.ndarray:
    a = _rand_complex(rng, (dim, dim))
    return (a + a.conj().T) / 2.0


def _rand_unitary(rng, dim: int) -> np.ndarray:
    return expm(1j * _rand_hermitian(rng, dim))


def _rand_density(rng, dim: int) -> np.ndarray:
    a = _rand_complex(rng, (dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def _rand_uvz(rng, cp_margin: float = 1.0) -> UVZ:
    """Random triple with |z| = f * sqrt(u(1-v)), f uniform in [0, cp_margin]."""
    u = rng.uniform(0.0, 1.0)
    v = rng.uniform(0.0, 1.0)
    f = rng.uniform(0.0, cp_margin)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    z = f * math.sqrt(u * (1.0 - v)) * complex(math.cos(phase), math.sin(phase))
    return UVZ(u, v, z)


def _rand_xstate(rng) -> states.XState:
    d = rng.dirichlet(np.ones(4))
    f14, f23 = rng.uniform(0.0, 1.0, size=2)
    p14, p23 = rng.uniform(0.0, 2.0 * math.pi, size=2)
    rho14 = f14 * math.sqrt(d[0] * d[3]) * complex(math.cos(p14), math.sin(p14))
    rho23 = f23 * math.sqrt(d[1] * d[2]) * complex(math.cos(p23), math.sin(p23))
    return states.XState(tuple(float(x) for x in d), rho14, rho23)


def _worst(name: str, worst: float, bound: float, extra: str = "") -> CheckResult:
    detail = f"worst {worst:.3e} vs bound {bound:.3e}"
    if extra:
        detail += f"; {extra}"
    return CheckResult(name, worst <= bound, detail)


# --- matrix substrate --------------------------------------------------------


def check_eigen_trace_identity(rng) -> CheckResult:
    worst = 0.0
    for dim in (2, 3, 4, 8, 16):
        for _ in range(40):
            h = _rand_hermitian(rng, dim)
            scale = max(1.0, matrixcore.frobenius_norm(h))
            vals = matrixcore.eigenvalues(h)
            worst = max(
                worst,
                abs(complex(np.sum(vals)) - complex(np.trace(h))) / scale,
                float(np.max(np.abs(vals.imag))) / scale,
            )
    return _worst("eigen_trace_identity", worst, 1e-10)


def check_eigen_unitary_invariance(rng) -> CheckResult:
    worst = 0.0
    for dim in (3, 4, 8):
        for _ in range(25):
            h = _rand_hermitian(rng, dim)
            u = _rand_unitary(rng, dim)
            a = np.sort(matrixcore.eigenvalues(h).real)
            b = np.sort(matrixcore.eigenvalues(u @ h @ u.conj().T).real)
            worst = max(worst, float(np.max(np.abs(a - b))))
    return _worst("eigen_unitary_invariance", worst, 1e-8)


# --- environment models -------------------------------------------------------


def _sample_envs() -> list[Environment]:
    envs = [
        Environment("strong-t0", strong=StrongCouplingParams(1.0, lam))
        for lam in (0.01, 0.1, 1.0, 2.0, 3.0, 10.0)
    ]
    for x in (0.5, 1.0, 3.0, 10.0, math.inf):
        envs.append(Environment("markovian", thermal=ThermalParams(1.0, 10.0, x)))
        envs.append(Environment("nonmark-weak-lowt", thermal=ThermalParams(1.0, 10.0, x)))
    for x in (3.0, 10.0, math.inf):
        envs.append(Environment("markovian-paper-lowt", thermal=ThermalParams(1.0, 10.0, x)))
    return envs


def check_env_identity_at_t0(rng) -> CheckResult:
    worst = 0.0
    for env in _sample_envs():
        q = env.uvz(0.0)
        worst = max(worst, abs(q.u - 1.0), abs(q.v), abs(q.z - 1.0))
    return _worst("env_identity_at_t0", worst, 0.0)


def check_env_strong_structure(rng) -> CheckResult:
    worst = 0.0
    for lam in (0.01, 0.3, 1.0, 2.0, 5.0):
        p = StrongCouplingParams(1.0, lam)
        for t in rng.uniform(0.0, 40.0, size=50):
            q = envmodels.strong_t0(p, float(t))
            worst = max(worst, abs(q.v), abs(complex(q.z) ** 2 - q.u))
    return _worst("env_strong_structure", worst, 1e-15, extra="v == 0 and z^2 == u")


def check_env_strong_lambda_continuity(rng) -> CheckResult:
    eps = 1e-6
    worst = 0.0
    ts = np.linspace(0.0, 6.0, 200)
    us = {}
    for lam in (2.0 - eps, 2.0, 2.0 + eps):
        u, _, _ = envmodels.strong_t0_arrays(StrongCouplingParams(1.0, lam), ts)
        us[lam] = u
    worst = max(
        float(np.max(np.abs(us[2.0 - eps] - us[2.0]))),
        float(np.max(np.abs(us[2.0 + eps] - us[2.0]))),
    )
    return _worst("env_strong_lambda_continuity", worst, 1e-5)


def check_env_cp_condition(rng) -> CheckResult:
    worst = -math.inf
    for env in _sample_envs():
        if env.model == "markovian-paper-lowt" and env.thermal.x < 3.0:
            continue
        for t in rng.uniform(0.0, 30.0, size=80):
            worst = max(worst, env.uvz(float(t)).cp_defect())
    return _worst("env_cp_condition", worst, 1e-12, extra="|z|^2 - u(1-v) over all models")


def check_env_markovian_monotone(rng) -> CheckResult:
    ok = True
    for x in (0.5, 2.0, 10.0, math.inf):
        p = ThermalParams(1.0, 10.0, x)
        ts = np.linspace(0.0, 40.0, 400)
        u, v, _ = envmodels.markovian_exact_arrays(p, ts)
        ok = ok and bool(np.all(np.diff(u) <= 1e-15) and np.all(np.diff(v) >= -1e-15))
        ok = ok and abs(u[-1] - p.p_eq) < 1e-10 and abs(v[-1] - p.p_eq) < 1e-10
    return CheckResult(
        "env_markovian_monotone", ok, "u decreases to p_eq, v increases to p_eq"
    )


def check_env_zero_structure(rng) -> CheckResult:
    worst_u = 0.0
    worst_gap = 0.0
    for lam in (0.01, 0.1, 1.0, 1.9):
        p = StrongCouplingParams(1.0, lam)
        dt = envmodels.zero_spacing(p)
        zeros = [envmodels.u_zeros(p, n) for n in range(1, 11)]
        for t in zeros:
            worst_u = max(worst_u, envmodels.strong_t0(p, t).u)
        gaps = np.diff(zeros)
        worst_gap = max(worst_gap, float(np.max(np.abs(gaps - dt))))
    passed = worst_u <= 1e-12 and worst_gap <= 1e-10
    return CheckResult(
        "env_zero_structure",
        passed,
        f"max u(t_n) = {worst_u:.3e} (bound 1e-12), max |gap - dt| = {worst_gap:.3e} (bound 1e-10)",
    )


# --- channels -----------------------------------------------------------------


def check_channel_tensor_invariants(rng) -> CheckResult:
    worst = 0.0
    for _ in range(300):
        tt = channels.transfer_from_uvz(_rand_uvz(rng))
        worst = max(worst, tt.trace_defect(), tt.hermiticity_defect())
    return _worst("channel_tensor_invariants", worst, 1e-12)


def check_channel_positivity(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10_000):
        qa, qb = _rand_uvz(rng), _rand_uvz(rng)
        rho = channels.two_qubit_evolve(qa, qb, _rand_density(rng, 4))
        worst = max(
            worst,
            abs(complex(np.trace(rho)) - 1.0),
            -float(matrixcore.eigenvalues_hermitian(rho)[0]),
        )
    return _worst("channel_positivity", worst, 1e-10, extra="10^4 random (UVZ, rho0)")


def check_channel_x_preservation(rng) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        rho0 = _rand_xstate(rng).to_matrix()
        rho = channels.two_qubit_evolve(_rand_uvz(rng), _rand_uvz(rng), rho0)
        worst = max(worst, states.off_pattern_weight(rho))
    return _worst("channel_x_preservation", worst, 0.0, extra="off-pattern stays exactly zero")


def check_channel_compose_oracle(rng) -> CheckResult:
    worst = 0.0
    for _ in range(1000):
        qa, qb = _rand_uvz(rng), _rand_uvz(rng)
        rho0 = _rand_density(rng, 4)
        direct = channels.two_qubit_evolve(qa, qb, rho0)
        tensored = channels.compose_product(
            [channels.transfer_from_uvz(qa), channels.transfer_from_uvz(qb)], rho0
        )
        worst = max(worst, float(np.max(np.abs(direct - tensored))))
    return _worst("channel_compose_oracle", worst, 1e-13, extra="10^3 random cases")


def check_channel_choi_boundary(rng) -> CheckResult:
    bad = 0
    for _ in range(10_000):
        q = _rand_uvz(rng, cp_margin=1.2)
        tt = channels.transfer_from_uvz(q, check_cp=False)
        psd = channels.is_completely_positive(tt)
        expected = q.cp_defect() <= 0.0
        # near the boundary the 1e-10 eigenvalue tolerance decides; skip a thin band
        if abs(q.cp_defect()) < 1e-9:
            continue
        if psd != expected:
            bad += 1
    return CheckResult(
        "channel_choi_boundary",
        bad == 0,
        f"{bad} disagreements between Choi PSD and |z|^2 <= u(1-v) over 10^4 samples",
    )


def check_channel_phase_covariance(rng) -> CheckResult:
    worst = 0.0
    rotated_positions = ((0, 2), (0, 3), (1, 2), (1, 3))  # elements carrying one z_A factor
    untouched_positions = ((0, 1), (2, 3))
    for _ in range(200):
        qa, qb = _rand_uvz(rng), _rand_uvz(rng)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        phase = complex(math.cos(phi), math.sin(phi))
        qa_rot = UVZ(qa.u, qa.v, qa.z * phase)
        rho0 = _rand_density(rng, 4)
        base = channels.two_qubit_evolve(qa, qb, rho0)
        rot = channels.two_qubit_evolve(qa_rot, qb, rho0)
        for i, j in rotated_positions:
            worst = max(worst, abs(rot[i, j] - phase * base[i, j]))
        for i, j in untouched_positions:
            worst = max(worst, abs(rot[i, j] - base[i, j]))
        worst = max(worst, float(np.max(np.abs(np.abs(rot) - np.abs(base)))))
    return _worst("channel_phase_covariance", worst, 1e-13)


def check_channel_marginal_consistency(rng) -> CheckResult:
    worst = 0.0
    eye = channels.identity_tensor(2)
    for _ in range(100):
        q = _rand_uvz(rng)
        tt = channels.transfer_from_uvz(q)
        rho0 = _rand_density(rng, 8)
        out = channels.compose_product([tt, eye, eye], rho0)
        marg_out = np.einsum("iabjab->ij", out.reshape(2, 2, 2, 2, 2, 2))
        marg_in = np.einsum("iabjab->ij", rho0.reshape(2, 2, 2, 2, 2, 2))
        worst = max(worst, float(np.max(np.abs(marg_out - tt.apply(marg_in)))))
    return _worst("channel_marginal_consistency", worst, 1e-13, extra="3 qubits, map on site 1")


# --- states -------------------------------------------------------------------


def check_state_ewl_invariants(rng) -> CheckResult:
    worst = 0.0
    ok = True
    for _ in range(150):
        r = rng.uniform(0.0, 1.0)
        alpha = rng.uniform(0.0, 1.0)
        delta = rng.uniform(0.0, 2.0 * math.pi)
        for family in (Family.PHI, Family.PSI):
            rho = states.make_ewl(EwlSpec(family, r, alpha, delta))
            worst = max(worst, abs(complex(np.trace(rho)) - 1.0))
            worst = max(worst, -float(matrixcore.eigenvalues_hermitian(rho)[0]))
            flat = states.make_ewl(EwlSpec(family, r, alpha, 0.0))
            spec_a = matrixcore.eigenvalues_hermitian(rho)
            spec_b = matrixcore.eigenvalues_hermitian(flat)
            worst = max(worst, float(np.max(np.abs(spec_a - spec_b))))
    # purity strictly increasing in r; rank-1 at r = 1
    for alpha in (0.2, 1.0 / math.sqrt(2.0), 0.9):
        purities = []
        for r in np.linspace(0.0, 1.0, 21):
            rho = states.make_ewl(EwlSpec(Family.PHI, float(r), alpha))
            purities.append(float(np.trace(rho @ rho).real))
        ok = ok and bool(np.all(np.diff(purities) > 0)) and abs(purities[-1] - 1.0) < 1e-12
    # family swap: diag permutation (1,2,3,4)->(2,1,4,3) and corner exchange
    for _ in range(50):
        r = rng.uniform(0.0, 1.0)
        alpha = rng.uniform(0.0, 1.0)
        phi = states.ewl_elements(EwlSpec(Family.PHI, r, alpha))
        psi = states.ewl_elements(EwlSpec(Family.PSI, r, alpha))
        d = phi.diag
        ok = ok and (d[1], d[0], d[3], d[2]) == psi.diag
        ok = ok and phi.rho23 == psi.rho14 and phi.rho14 == psi.rho23
    return CheckResult(
        "state_ewl_invariants",
        ok and worst <= 1e-12,
        f"worst defect {worst:.3e}; purity/permutation relations {'ok' if ok else 'violated'}",
    )


# --- concurrence ---------------------------------------------------------------


def check_concurrence_x_oracle(rng) -> CheckResult:
    worst = 0.0
    for _ in range(10_000):
        x = _rand_xstate(rng)
        worst = max(
            worst, abs(concurrence.concurrence_x(x) - concurrence.concurrence_general(x.to_matrix()))
        )
    return _worst("concurrence_x_oracle", worst, 1e-10, extra="10^4 random X states")


def check_concurrence_lu_invariance(rng) -> CheckResult:
    worst = 0.0
    for _ in range(300):
        rho = _rand_density(rng, 4)
        u = np.kron(_rand_unitary(rng, 2), _rand_unitary(rng, 2))
        worst = max(
            worst,
            abs(
                concurrence.concurrence_general(rho)
                - concurrence.concurrence_general(u @ rho @ u.conj().T)
            ),
        )
    return _worst("concurrence_lu_invariance", worst, 1e-9)


def check_concurrence_delta_invariance(rng) -> CheckResult:
    worst = 0.0
    for _ in range(200):
        r = rng.uniform(0.0, 1.0)
        alpha = rng.uniform(0.0, 1.0)
        family = Family.PHI if rng.uniform() < 0.5 else Family.PSI
        base = concurrence.concurrence_x(
            states.xstate_from_matrix(states.make_ewl(EwlSpec(family, r, alpha, 0.0)))
        )
        delta = rng.uniform(0.0, 2.0 * math.pi)
        other = concurrence.concurrence_x(
            states.xstate_from_matrix(states.make_ewl(EwlSpec(family, r, alpha, delta)))
        )
        worst = max(worst, abs(base - other))
    return _worst("concurrence_delta_invariance", worst, 5e-16)


def check_concurrence_initial_monotone(rng) -> CheckResult:
    ok = True
    for alpha in (0.3, 0.5, 1.0 / math.sqrt(2.0), 0.95):
        vals = [concurrence.initial_concurrence(float(r), alpha) for r in np.linspace(0, 1, 41)]
        ok = ok and bool(np.all(np.diff(vals) >= 0.0))
    for r in (0.5, 0.8, 1.0):
        best = concurrence.initial_concurrence(r, math.sqrt(0.5))
        for asq in np.linspace(0.0, 1.0, 41):
            ok = ok and concurrence.initial_concurrence(r, math.sqrt(float(asq))) <= best + 1e-15
    return CheckResult(
        "concurrence_initial_monotone", ok, "nondecreasing in r; maximal at alpha^2 = 1/2"
    )


# --- analysis ------------------------------------------------------------------


def check_traj_c0_equals_initial(rng) -> CheckResult:
    ok = True
    for env in _sample_envs():
        r = float(rng.uniform(0.0, 1.0))
        alpha = float(rng.uniform(0.0, 1.0))
        for family in (Family.PHI, Family.PSI):
            traj = analysis.trajectory(env, EwlSpec(family, r, alpha), 5.0, 16)
            ok = ok and traj.c[0] == concurrence.initial_concurrence(r, alpha)
    return CheckResult("traj_c0_equals_initial", ok, "c[0] is bit-identical to the closed form")


def check_traj_markovian_death(rng) -> CheckResult:
    ok = True
    details = []
    for x in (0.5, 10.0):
        env = Environment("markovian", thermal=ThermalParams(1.0, 10.0, x))
        tmax = 50.0 * max(1.0, x)
        for r in (0.5, 1.0):
            for alpha_sq in (0.25, 0.5):
                for family in (Family.PHI, Family.PSI):
                    spec = EwlSpec(family, r, math.sqrt(alpha_sq))
                    traj = analysis.trajectory(env, spec, tmax, 2000)
                    report = analysis.dark_intervals(traj)
                    if not report.has_terminal_esd:
                        ok = False
                        details.append(f"(x={x}, r={r}, a2={alpha_sq}, {family.value})")
    return CheckResult(
        "traj_markovian_death",
        ok,
        "all finite-temperature trajectories end in terminal ESD"
        + (f"; failures: {details}" if details else ""),
    )


def check_traj_bell_zero_crossings(rng) -> CheckResult:
    # lam/gamma small enough that e^{-lam t} keeps the first three zeros'
    # neighborhoods above the 1e-12 threshold (isolated-zero classification)
    worst = 0.0
    for lam in (0.1, 0.5):
        p = StrongCouplingParams(1.0, lam)
        env = Environment("strong-t0", strong=p)
        tmax = 3.2 * envmodels.zero_spacing(p)
        traj = analysis.trajectory(env, EwlSpec(Family.PHI, 1.0, math.sqrt(0.5)), tmax, 4000)
        report = analysis.dark_intervals(traj)
        zeros = [envmodels.u_zeros(p, n) for n in range(1, 4)]
        if len(report.touch_points) < len(zeros):
            return CheckResult(
                "traj_bell_zero_crossings",
                False,
                f"expected >= {len(zeros)} touch points, got {len(report.touch_points)}",
            )
        for t_ref, t_found in zip(zeros, report.touch_points):
            worst = max(worst, abs(t_ref - t_found))
    return _worst("traj_bell_zero_crossings", worst, 1e-6)


def check_traj_esd_ordering(rng) -> CheckResult:
    env = Environment("markovian", thermal=ThermalParams(1.0, 10.0, 10.0))
    alpha = math.sqrt(0.5)
    onsets = {}
    for family in (Family.PHI, Family.PSI):
        prev = 0.0
        for r in (0.4, 0.6, 0.8, 1.0):
            t = analysis.esd_time_numeric(env, EwlSpec(family, r, alpha), (0.0, 80.0))
            onsets[(family, r)] = t
            if t < prev - 1e-9:
                return CheckResult(
                    "traj_esd_ordering", False, f"onset decreased in r for {family.value}"
                )
            prev = t
    gaps = [onsets[(Family.PHI, r)] - onsets[(Family.PSI, r)] for r in (0.4, 0.6, 0.8, 1.0)]
    passed = all(g > 0 for g in gaps)
    return CheckResult(
        "traj_esd_ordering",
        passed,
        f"phi onset minus psi onset over r grid: {[f'{g:.3f}' for g in gaps]}",
    )


def check_traj_revival_damping(rng) -> CheckResult:
    ok = True
    for r, alpha_sq in ((1.0, 1.0 / 3.0), (0.9, 1.0 / 3.0), (1.0, 0.5)):
        p = StrongCouplingParams(1.0, 0.01)
        env = Environment("strong-t0", strong=p)
        tmax = 4.0 * envmodels.zero_spacing(p)
        for family in (Family.PHI, Family.PSI):
            traj = analysis.trajectory(env, EwlSpec(family, r, math.sqrt(alpha_sq)), tmax, 4000)
            peaks = _segment_peaks(traj.grid, traj.c)
            ok = ok and bool(np.all(np.diff(peaks) <= 1e-12))
    return CheckResult("traj_revival_damping", ok, "revival peak amplitudes never increase")


def _segment_peaks(ts: np.ndarray, c: np.ndarray, tol: float = 1e-12) -> list[float]:
    """Max concurrence of each positive segment between zero stretches."""
    peaks = []
    current = None
    for value in c:
        if value > tol:
            current = value if current is None else max(current, value)
        elif current is not None:
            peaks.append(current)
            current = None
    if current is not None:
        peaks.append(current)
    return peaks


# --- registry ------------------------------------------------------------------

CHECKS: dict[str, Callable] = {
    fn.__name__.removeprefix("check_"): fn
    for fn in (
        check_eigen_trace_identity,
        check_eigen_unitary_invariance,
        check_env_identity_at_t0,
        check_env_strong_structure,
        check_env_strong_lambda_continuity,
        check_env_cp_condition,
        check_env_markovian_monotone,
        check_env_zero_structure,
        check_channel_tensor_invariants,
        check_channel_positivity,
        check_channel_x_preservation,
        check_channel_compose_oracle,
        check_channel_choi_boundary,
        check_channel_phase_covariance,
        check_channel_marginal_consistency,
        check_state_ewl_invariants,
        check_concurrence_x_oracle,
        check_concurrence_lu_invariance,
        check_concurrence_delta_invariance,
        check_concurrence_initial_monotone,
        check_traj_c0_equals_initial,
        check_traj_markovian_death,
        check_traj_bell_zero_crossings,
        check_traj_esd_ordering,
        check_traj_revival_damping,
    )
}


def run_checks(names: list[str] | None = None, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run the named checks (all by default), each with its own seeded RNG."""
    if names is None:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}; available: {sorted(CHECKS)}")
    results = []
    for name in names:
        rng = np.random.default_rng(seed)
        results.append(CHECKS[name](rng))
    return results
