import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import angles, bloch_vectors, qclose, spinors, unit_quaternions, vclose
from quatqubit import oracle
from quatqubit.gates import GateSpec, apply_gate, compose, decompose, gate_quaternion
from quatqubit.quat_core import I, K, ONE, Quaternion, UnitQuaternion, exp_pure, mul, rotate_pure
from quatqubit.spinor_bridge import bloch_of_state, f_inverse, map_mi, map_mi_inverse, matrix_to_right_quaternion

S2 = 1 / math.sqrt(2)
TABLE = [("X", 1), ("X", -1), ("Y", 1), ("Y", -1), ("Z", 1), ("Z", -1), ("H", 1), ("H", -1)]


def test_gate_quaternion_examples():
    assert gate_quaternion(GateSpec.named("X")) == K
    assert qclose(gate_quaternion(GateSpec.phase(0.8)), exp_pure(I, -0.4), 0)
    assert gate_quaternion(GateSpec.general((0, 0, 1), 0.0)) == ONE


def test_apply_gate_examples():
    q = apply_gate(ONE, GateSpec.named("X"))
    assert q == K and vclose(bloch_of_state(q).as_array(), [0, 0, -1])
    q = apply_gate(ONE, GateSpec.named("H"))
    assert qclose(q, UnitQuaternion(0, S2, 0, S2), 1e-15)
    assert vclose(bloch_of_state(q).as_array(), [1, 0, 0])
    q = apply_gate(ONE, GateSpec.general((1, 0, 0), math.pi / 2))
    assert qclose(q, exp_pure(K, -math.pi / 4))
    assert vclose(bloch_of_state(q).as_array(), [0, -1, 0])


@pytest.mark.parametrize("name,sign", TABLE)
@given(s=spinors)
def test_named_gate_is_phase_exact(name, sign, s):
    got = map_mi_inverse(apply_gate(map_mi(s), GateSpec.named(name, sign))).as_array()
    assert vclose(np.abs(got - oracle.table_matrix(name, sign) @ s.as_array()), 0)


@given(spinors, st.floats(-math.pi, math.pi))
def test_phase_gate_is_phase_exact(s, theta):
    got = map_mi_inverse(apply_gate(map_mi(s), GateSpec.phase(theta))).as_array()
    assert vclose(np.abs(got - oracle.table_matrix("PHASE", 1, theta) @ s.as_array()), 0)


@given(unit_quaternions, bloch_vectors, angles)
def test_rotation_law(q, axis, angle):
    got = bloch_of_state(apply_gate(q, GateSpec.general(axis, angle))).as_array()
    assert vclose(got, oracle.rotate_vector(bloch_of_state(q).as_array(), axis.as_array(), angle))


@given(unit_quaternions, bloch_vectors, angles)
def test_conjugation_law(q, axis, angle):
    n = f_inverse(axis)
    p = apply_gate(q, GateSpec.general(axis, angle))
    before = mul(mul(Quaternion(q.w, -q.x, -q.y, -q.z), I), q)
    after = mul(mul(Quaternion(p.w, -p.x, -p.y, -p.z), I), p)
    assert qclose(after, rotate_pure(before, n, angle))


def test_compose_examples():
    assert compose([GateSpec.named("X"), GateSpec.named("X")]) == -ONE
    g = GateSpec.phase(0.3)
    assert compose([g]) == gate_quaternion(g)
    with pytest.raises(ValueError):
        compose([])


def test_compose_matches_matrix_product():
    seq = [GateSpec.named("Z"), GateSpec.named("X")]
    U = oracle.table_matrix("X") @ oracle.table_matrix("Z")
    q_r, phase = matrix_to_right_quaternion(U)
    got = compose(seq)
    assert qclose(got, q_r) or qclose(got, -q_r)


@given(unit_quaternions, st.lists(st.tuples(bloch_vectors, angles), min_size=1, max_size=5))
def test_compose_equals_sequential(q, parts):
    gates = [GateSpec.general(a, g) for a, g in parts]
    step = q
    want = bloch_of_state(q).as_array()
    for a, g in parts:
        step = apply_gate(step, GateSpec.general(a, g))
        want = oracle.rotate_vector(want, a.as_array(), g)
    assert qclose(mul(q, compose(gates)), step)
    assert vclose(bloch_of_state(step).as_array(), want, 1e-11)


def test_decompose_examples():
    d = decompose(K)
    assert vclose(d.axis.as_array(), [-1, 0, 0]) and d.angle == pytest.approx(math.pi)
    d = decompose(ONE)
    assert d.axis.as_tuple() == (0, 0, 1) and d.angle == 0
    d = decompose(-ONE)
    assert d.angle == pytest.approx(2 * math.pi) and qclose(gate_quaternion(d), -ONE)


@given(unit_quaternions)
def test_decompose_round_trip(q):
    d = decompose(q)
    assert 0 <= d.angle <= 2 * math.pi
    assert qclose(gate_quaternion(d), q)


@given(unit_quaternions)
def test_decompose_modulo_sign(q):
    d = decompose(q, modulo_sign=True)
    g = gate_quaternion(d)
    assert 0 <= d.angle <= math.pi + 1e-15
    assert qclose(g, q) or qclose(g, -q)
    assert g.w >= -1e-15


@given(unit_quaternions)
def test_decompose_is_stable(q):
    once = decompose(q)
    twice = decompose(compose([once]))
    assert vclose(once.axis.as_array(), twice.axis.as_array(), 1e-9) and abs(once.angle - twice.angle) <= 1e-12


def test_gate_validation():
    with pytest.raises(ValueError):
        GateSpec.named("Q")
    with pytest.raises(ValueError):
        GateSpec("X", sign=2)
    with pytest.raises(ValueError):
        GateSpec("GENERAL")
    assert GateSpec.named("x", -1).label() == "X-"
