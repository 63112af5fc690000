import math

import numpy as np
import pytest

from entlab import matrixcore
from entlab.channels import (
    TransferTensor,
    choi,
    compose_product,
    identity_tensor,
    is_completely_positive,
    kraus_from_choi,
    transfer_from_uvz,
    two_qubit_evolve,
)
from entlab.envmodels import UVZ
from entlab.errors import ValidationError
from entlab.states import off_pattern_weight

from conftest import rand_density


def rand_uvz(rng, cp_margin=1.0):
    u = rng.uniform()
    v = rng.uniform()
    f = rng.uniform(0.0, cp_margin)
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
    return UVZ(u, v, f * math.sqrt(u * (1.0 - v)) * phase)


def test_identity_uvz_gives_identity_tensor():
    tt = transfer_from_uvz(UVZ(1.0, 0.0, 1.0))
    assert np.array_equal(tt.a, identity_tensor(2).a)


def test_damping_channel_on_excited_state():
    # v = 0, z = sqrt(u): excited population decays to u, ground gains 1 - u
    u = 0.37
    tt = transfer_from_uvz(UVZ(u, 0.0, math.sqrt(u)))
    out = tt.apply(np.diag([1.0, 0.0]))
    assert np.allclose(out, np.diag([u, 1.0 - u]), atol=1e-15)


def test_tensor_invariants_random_uvz(rng):
    for _ in range(200):
        tt = transfer_from_uvz(rand_uvz(rng))
        # direct summation checks
        for l in range(2):
            for l2 in range(2):
                total = sum(tt.a[i, i, l, l2] for i in range(2))
                assert abs(total - (1.0 if l == l2 else 0.0)) <= 1e-12
        assert tt.hermiticity_defect() <= 1e-12


def test_transfer_rejects_invalid_uvz():
    with pytest.raises(ValidationError):
        transfer_from_uvz(UVZ(1.2, 0.0, 0.0))
    with pytest.raises(ValidationError, match="completely positive"):
        transfer_from_uvz(UVZ(0.5, 0.5, 0.9))


def test_choi_identity_channel():
    c = choi(identity_tensor(2))
    vals = np.sort(matrixcore.eigenvalues_hermitian(c))
    assert np.allclose(vals, [0.0, 0.0, 0.0, 2.0], atol=1e-12)


def test_choi_explicit_form():
    q = UVZ(0.6, 0.2, 0.3 + 0.2j)
    c = choi(transfer_from_uvz(q))
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0], expected[1, 1] = q.u, 1 - q.u
    expected[2, 2], expected[3, 3] = q.v, 1 - q.v
    expected[0, 3], expected[3, 0] = q.z, np.conj(q.z)
    assert np.array_equal(c, expected)


def test_choi_boundary_psd_with_zero_eigenvalue():
    q = UVZ(0.5, 0.0, math.sqrt(0.5))
    c = choi(transfer_from_uvz(q))
    vals = matrixcore.eigenvalues_hermitian(c)
    assert matrixcore.is_psd(c)
    assert abs(vals[0]) <= 1e-12  # one eigenvalue exactly at the CP boundary


def test_choi_detects_cp_violation():
    tt = transfer_from_uvz(UVZ(0.5, 0.5, 0.9), check_cp=False)
    assert not is_completely_positive(tt)  # 0.81 > 0.25


def test_choi_iff_cp_condition(rng):
    disagreements = 0
    for _ in range(2000):
        q = rand_uvz(rng, cp_margin=1.2)
        if abs(q.cp_defect()) < 1e-9:
            continue
        tt = transfer_from_uvz(q, check_cp=False)
        if is_completely_positive(tt) != (q.cp_defect() <= 0.0):
            disagreements += 1
    assert disagreements == 0


def test_kraus_reconstruction(rng):
    for _ in range(50):
        q = rand_uvz(rng)
        tt = transfer_from_uvz(q)
        ops = kraus_from_choi(choi(tt))
        rho = rand_density(rng, 2)
        rebuilt = sum(k @ rho @ k.conj().T for k in ops)
        assert np.max(np.abs(rebuilt - tt.apply(rho))) <= 1e-12


def test_compose_identity_returns_input(rng):
    rho0 = rand_density(rng, 8)
    out = compose_product([identity_tensor(2)] * 3, rho0)
    assert np.array_equal(out, rho0)


def test_compose_matches_two_qubit_evolve(rng):
    for _ in range(300):
        qa, qb = rand_uvz(rng), rand_uvz(rng)
        rho0 = rand_density(rng, 4)
        direct = two_qubit_evolve(qa, qb, rho0)
        tensored = compose_product([transfer_from_uvz(qa), transfer_from_uvz(qb)], rho0)
        assert np.max(np.abs(direct - tensored)) <= 1e-13


def test_compose_three_qubit_marginal(rng):
    eye = identity_tensor(2)
    q = rand_uvz(rng)
    tt = transfer_from_uvz(q)
    rho0 = rand_density(rng, 8)
    out = compose_product([tt, eye, eye], rho0)
    marg_out = np.einsum("iabjab->ij", out.reshape(2, 2, 2, 2, 2, 2))
    marg_in = np.einsum("iabjab->ij", rho0.reshape(2, 2, 2, 2, 2, 2))
    assert np.max(np.abs(marg_out - tt.apply(marg_in))) <= 1e-13


def test_compose_dimension_mismatch(rng):
    with pytest.raises(ValidationError):
        compose_product([identity_tensor(2)], rand_density(rng, 8))


def test_compose_invalid_rho(rng):
    with pytest.raises(ValidationError):
        compose_product([identity_tensor(2), identity_tensor(2)], np.diag([1.5, -0.5, 0, 0]))


def test_compose_generic_qudit_dimensions(rng):
    # d = 3 site composed with a qubit: identity channels leave rho in place
    rho0 = rand_density(rng, 6)
    out = compose_product([identity_tensor(3), identity_tensor(2)], rho0)
    assert np.max(np.abs(out - rho0)) <= 1e-15


def test_two_qubit_identity():
    rho0 = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    out = two_qubit_evolve(UVZ(1.0, 0.0, 1.0), UVZ(1.0, 0.0, 1.0), rho0)
    assert np.array_equal(out, rho0)


def test_two_qubit_bell_phi_top_population_stays_zero():
    # Bell phi input has rho11(0) = 0; with v = 0 nothing ever feeds it
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[1, 1] = rho0[2, 2] = 0.5
    rho0[1, 2] = rho0[2, 1] = 0.5
    for u in (0.9, 0.5, 0.1):
        q = UVZ(u, 0.0, math.sqrt(u))
        out = two_qubit_evolve(q, q, rho0)
        assert out[0, 0] == 0.0


def test_two_qubit_corner_coherences(rng):
    # rho14(t) = z_A z_B rho14(0); rho23(t) = z_A conj(z_B) rho23(0)
    for _ in range(20):
        qa, qb = rand_uvz(rng), rand_uvz(rng)
        rho0 = rand_density(rng, 4)
        out = two_qubit_evolve(qa, qb, rho0)
        assert out[0, 3] == pytest.approx(qa.z * qb.z * rho0[0, 3], abs=1e-15)
        assert out[1, 2] == pytest.approx(qa.z * np.conj(qb.z) * rho0[1, 2], abs=1e-15)


def test_two_qubit_trace_and_hermiticity(rng):
    for _ in range(100):
        out = two_qubit_evolve(rand_uvz(rng), rand_uvz(rng), rand_density(rng, 4))
        assert abs(np.trace(out) - 1.0) <= 1e-12
        assert matrixcore.hermiticity_defect(out) == 0.0


def test_two_qubit_positivity(rng):
    for _ in range(500):
        out = two_qubit_evolve(rand_uvz(rng), rand_uvz(rng), rand_density(rng, 4))
        assert matrixcore.eigenvalues_hermitian(out)[0] >= -1e-10


def test_two_qubit_preserves_x_structure(rng):
    from entlab.states import EwlSpec, Family, make_ewl

    for _ in range(50):
        rho0 = make_ewl(EwlSpec(Family.PHI, rng.uniform(), rng.uniform()))
        out = two_qubit_evolve(rand_uvz(rng), rand_uvz(rng), rho0)
        assert off_pattern_weight(out) == 0.0


def test_two_qubit_phase_covariance(rng):
    qa, qb = rand_uvz(rng), rand_uvz(rng)
    phase = np.exp(1j * 1.234)
    qa_rot = UVZ(qa.u, qa.v, qa.z * phase)
    rho0 = rand_density(rng, 4)
    base = two_qubit_evolve(qa, qb, rho0)
    rot = two_qubit_evolve(qa_rot, qb, rho0)
    for i, j in ((0, 2), (0, 3), (1, 2), (1, 3)):  # elements with one z_A factor
        assert rot[i, j] == pytest.approx(phase * base[i, j], abs=1e-14)
    for i, j in ((0, 1), (2, 3)):
        assert rot[i, j] == base[i, j]
    assert np.max(np.abs(np.abs(rot) - np.abs(base))) <= 1e-14


def test_transfer_tensor_shape_validation():
    with pytest.raises(ValidationError, match="shape"):
        TransferTensor(2, np.zeros((2, 2, 2, 3)))
