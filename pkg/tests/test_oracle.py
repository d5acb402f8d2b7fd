import math

import numpy as np
import pytest

from quatqubit import oracle
from quatqubit.fields import FieldProfile
from quatqubit.gates import GateSpec, gate_quaternion
from quatqubit.spinor_bridge import BlochVector, matrix_to_right_quaternion


def test_pauli():
    assert np.array_equal(oracle.pauli("z"), np.diag([1, -1]))
    assert np.array_equal(oracle.pauli("x") @ oracle.pauli("y"), 1j * oracle.pauli("z"))


def test_hamiltonian():
    assert np.array_equal(oracle.hamiltonian([0, 0, 0], 2.0), np.zeros((2, 2)))
    rng = np.random.default_rng(1)
    for _ in range(50):
        H = oracle.hamiltonian(rng.normal(size=3), rng.uniform(0.1, 3))
        assert np.max(np.abs(H - H.conj().T)) <= 1e-15


def test_rn_matrix():
    assert np.allclose(oracle.rn_matrix([0, 0, 1], 0.0), np.eye(2), atol=0)
    # half turn about z is -i sigma_z, i.e. the Z row with the opposite sign
    assert np.max(np.abs(oracle.rn_matrix([0, 0, 1], math.pi) - oracle.table_matrix("Z", -1))) <= 1e-15
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        g = rng.uniform(-2 * math.pi, 2 * math.pi)
        U = oracle.rn_matrix(n, g)
        assert np.max(np.abs(U.conj().T @ U - np.eye(2))) <= 1e-12
        q_r, phase = matrix_to_right_quaternion(U)
        q_g = gate_quaternion(GateSpec.general(BlochVector(*n), g))
        assert max(abs(a - b) for a, b in zip(q_r.as_tuple(), q_g.as_tuple())) <= 1e-12
        assert abs(phase) <= 1e-12


def test_integrate_spinor_zero_field():
    s0 = np.array([0.6, 0.8j])
    f = FieldProfile.constant((0, 0, 0))
    tr = oracle.integrate_spinor(s0, f, 1.7, 2.0, 0.001)
    want = np.exp(-1j * 1.7 * tr.t)[:, None] * s0
    assert np.max(np.abs(tr.states - want)) <= 1e-10


def test_integrate_spinor_populations_constant():
    s0 = np.array([0.6, 0.8j])
    tr = oracle.integrate_spinor(s0, FieldProfile.constant((0, 0, 1.3), gamma=0.8), 0.5, 10.0, 0.01)
    assert np.max(np.abs(np.abs(tr.states[:, 0]) ** 2 - 0.36)) <= 1e-10
    assert np.max(np.abs(np.abs(tr.states[:, 1]) ** 2 - 0.64)) <= 1e-10


def test_integrate_spinor_larmor_sense():
    # +x precesses towards +y about +z: the sign convention shared with the quaternion equation
    s0 = np.array([1, 1]) / math.sqrt(2)
    tr = oracle.integrate_spinor(s0, FieldProfile.constant((0, 0, 1.0)), 0.0, math.pi / 2, math.pi / 2000)
    assert np.max(np.abs(tr.bloch[-1] - [0, 1, 0])) <= 1e-10


def test_algebra_check():
    rep = oracle.algebra_check()
    assert rep.ok
    assert rep.checks["[u_x,u_y] = 2u_z"] <= 1e-15
    assert rep.right_action == {"u_x": "-k", "u_y": "j", "u_z": "-i"}
    assert rep.algebra_iso == {"u_x": "k", "u_y": "-j", "u_z": "i"}


def test_lagrangian_l1_zero_rate():
    s = np.array([0.6, 0.8j])
    H = oracle.hamiltonian([0.1, 0.2, 0.3], 1.0)
    assert oracle.lagrangian_l1(s, np.zeros(2), H) == pytest.approx(np.vdot(s, H @ s).real)
