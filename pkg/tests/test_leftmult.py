import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import bloch_vectors, pure_units, qclose, unit_quaternions, vclose
from quatqubit import oracle
from quatqubit.leftmult import (
    LeftOpKind,
    axis_circle,
    classify_left,
    cone_check,
    effective_rotation,
    time_reversal_operator,
    time_reverse_state,
)
from quatqubit.quat_core import I, J, K, ONE, PureUnitQuaternion, Quaternion, exp_pure, mul
from quatqubit.spinor_bridge import BlochVector, bloch_of_state, f_inverse, f_map

S2 = 1 / math.sqrt(2)
deltas = st.floats(-math.pi, math.pi)
rot_angles = st.floats(0.05, 2 * math.pi - 0.05)


def test_classify_examples():
    c = classify_left(exp_pure(I, 0.7))
    assert c.kind is LeftOpKind.GLOBAL_PHASE and c.angle == pytest.approx(0.7)
    c = classify_left(exp_pure(I, -0.7))
    assert c.kind is LeftOpKind.GLOBAL_PHASE and c.angle == pytest.approx(-0.7)
    c = classify_left(J)
    assert c.kind is LeftOpKind.TIME_REVERSAL and c.delta == 0
    c = classify_left(K)
    assert c.kind is LeftOpKind.TIME_REVERSAL and c.delta == pytest.approx(math.pi / 2)
    c = classify_left(exp_pure(PureUnitQuaternion(0, S2, S2, 0), 0.4))
    assert c.kind is LeftOpKind.NON_UNITARY
    assert classify_left(-ONE).kind is LeftOpKind.GLOBAL_PHASE


@given(pure_units, deltas)
def test_classify_recovers_delta(v, delta):
    c = classify_left(time_reversal_operator(delta, v), v)
    assert c.kind is LeftOpKind.TIME_REVERSAL
    assert abs(math.remainder(c.delta - delta, 2 * math.pi)) <= 1e-9


def test_time_reverse_examples():
    q = time_reverse_state(ONE)
    assert q == J and vclose(bloch_of_state(q).as_array(), [0, 0, -1])
    q0 = exp_pure(J, math.pi / 4)
    q = time_reverse_state(q0, math.pi / 2)
    assert qclose(q, mul(K, q0), 1e-15)
    assert vclose(bloch_of_state(q).as_array(), [-1, 0, 0])


@given(unit_quaternions, deltas, pure_units)
def test_time_reversal_negates_bloch(q, delta, v):
    a = bloch_of_state(time_reverse_state(q, delta, v), v).as_array()
    assert vclose(a, -bloch_of_state(q, v).as_array())


@given(unit_quaternions, deltas)
def test_time_reversal_squares_to_minus_one(q, delta):
    T = time_reversal_operator(delta)
    assert qclose(mul(T, T), Quaternion(-1, 0, 0, 0), 2.3e-16)
    assert qclose(time_reverse_state(time_reverse_state(q, delta), delta), -q)


def test_effective_rotation_examples():
    r, g = effective_rotation(ONE, exp_pure(I, -0.6))
    assert r.as_tuple() == (0, 0, 1) and g == pytest.approx(1.2)
    r, g = effective_rotation(ONE, J)
    # the same half turn as (f(j), pi): the axis is only defined up to sign for a half turn
    assert vclose(np.abs(r.as_array()), [0, 1, 0]) and g == pytest.approx(math.pi)
    assert vclose(oracle.rotate_vector([0, 0, 1], r.as_array(), g), [0, 0, -1])
    with pytest.raises(ValueError):
        effective_rotation(ONE, ONE)


@given(unit_quaternions, unit_quaternions, pure_units)
def test_effective_rotation_reproduces_left_product(q, q_l, v):
    assume(abs(q_l.w) < 1 - 1e-6)
    r, g = effective_rotation(q, q_l, v)
    want = oracle.rotate_vector(bloch_of_state(q, v).as_array(), r.as_array(), g)
    assert vclose(bloch_of_state(mul(q_l, q), v).as_array(), want)


def test_cone_special_cases():
    q = exp_pure(PureUnitQuaternion(0, 0.6, 0, 0.8), 0.9)
    z = BlochVector(0, 0, 1)
    lhs, rhs = cone_check(z, q, exp_pure(f_inverse(z), -0.8))
    assert lhs == 1.0 and rhs == pytest.approx(1.0, abs=1e-15)
    x = BlochVector(1, 0, 0)
    lhs, rhs = cone_check(x, q, exp_pure(f_inverse(x), -0.8))
    assert lhs == 0.0 and abs(rhs) <= 1e-15


@given(bloch_vectors, rot_angles, unit_quaternions)
def test_cone_relation(n, gamma, q):
    lhs, rhs = cone_check(n, q, exp_pure(f_inverse(n), -gamma / 2))
    assert abs(lhs - rhs) <= 1e-12


def test_cone_rejects_wrong_axis():
    with pytest.raises(ValueError):
        cone_check(BlochVector(1, 0, 0), ONE, exp_pure(I, 0.3))


def test_axis_circle_examples():
    q = exp_pure(PureUnitQuaternion(0, 0.0, 0.6, 0.8), 0.7)
    qhat = bloch_of_state(q).as_array()
    for r in axis_circle(q, exp_pure(I, -0.5)):
        assert vclose(r.as_array(), qhat)
    dots = [float(np.dot(r.as_array(), qhat)) for r in axis_circle(q, J)]
    assert max(abs(d) for d in dots) <= 1e-12


@given(unit_quaternions, unit_quaternions, pure_units)
def test_axis_circle_constant_dot(q, q_l, v):
    assume(abs(q_l.w) < 1 - 1e-6)
    qhat = bloch_of_state(q, v).as_array()
    dots = np.array([np.dot(r.as_array(), qhat) for r in axis_circle(q, q_l, v, samples=32)])
    assert np.var(dots) < 1e-20


def test_global_phase_fixes_bloch_but_non_unitary_depends_on_phase():
    q = exp_pure(PureUnitQuaternion(0, 0.0, 0.6, 0.8), 0.7)
    phase = exp_pure(I, 0.9)
    assert vclose(bloch_of_state(mul(phase, q)).as_array(), bloch_of_state(q).as_array())
    q_l = exp_pure(PureUnitQuaternion(0, S2, S2, 0), 0.4)
    q2 = mul(exp_pure(I, 1.3), q)  # same Bloch state, other phase
    assert vclose(bloch_of_state(q2).as_array(), bloch_of_state(q).as_array())
    a = bloch_of_state(mul(q_l, q)).as_array()
    b = bloch_of_state(mul(q_l, q2)).as_array()
    assert np.max(np.abs(a - b)) > 1e-3
