"""Left-multiplications ``q -> q_L q``: phase shifts, time reversal and the rest.

For a left factor ``q_L = exp(-n gamma/2)`` the Bloch vector of ``q`` is
rotated by ``gamma`` about ``r = f(conj(q) n q)``.  The axis depends on the
whole of ``q``, not just its Bloch vector, so over an unknown global phase
the possible axes sweep a cone around the Bloch vector whose half-angle is
the angle between ``n`` and the fibration direction ``f(vhat)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .quat_core import (
    I,
    J,
    K,
    PureUnitQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    exp_pure,
    log_axis_angle,
    mul,
    sandwich,
)
from .spinor_bridge import BlochVector, bloch_of_state, f_inverse, f_map

CLASSIFY_TOL = 1e-9
_IDENTITY_TOL = 1e-12


class LeftOpKind(enum.Enum):
    GLOBAL_PHASE = "GlobalPhase"
    TIME_REVERSAL = "TimeReversal"
    NON_UNITARY = "NonUnitary"


@dataclass(frozen=True)
class LeftOpClass:
    kind: LeftOpKind
    angle: float = 0.0  # phase angle alpha for q_L = exp(vhat alpha)
    delta: float = 0.0  # family parameter for time reversal


def fibration_frame(vhat: Quaternion) -> UnitQuaternion:
    """A fixed ``u`` with ``u i conj(u) = vhat``.

    For ``vhat`` in the half space ``x >= 0`` this is the shortest-arc
    rotation from ``i``, ``normalize(1 - vhat i)``.  Otherwise it is the
    shortest arc from ``-i`` composed with ``j`` (which sends ``i`` to
    ``-i``), so ``vhat = -i`` gives ``u = j``.  Both branches stay well
    conditioned.  Time-reversal angles for a general ``vhat`` are measured in
    the frame ``(u j conj(u), u k conj(u))``.
    """
    vhat = PureUnitQuaternion.of(vhat)
    if vhat.x >= 0.0:
        c = mul(vhat, Quaternion(0.0, -1.0, 0.0, 0.0))
        q = Quaternion(1.0 + c.w, c.x, c.y, c.z)
        return UnitQuaternion.of(q / q.norm())
    c = mul(vhat, I)
    q = Quaternion(1.0 + c.w, c.x, c.y, c.z)
    return UnitQuaternion.of(mul(q / q.norm(), J))


def _frame_axes(vhat: Quaternion) -> tuple[Quaternion, Quaternion]:
    u = fibration_frame(vhat)
    return mul(mul(u, J), conj(u)), mul(mul(u, K), conj(u))


def classify_left(q_l: Quaternion, vhat: Quaternion = I) -> LeftOpClass:
    q_l = UnitQuaternion.of(q_l)
    vhat = PureUnitQuaternion.of(vhat)
    aa = log_axis_angle(q_l)
    vn = math.hypot(q_l.x, q_l.y, q_l.z)
    if vn <= CLASSIFY_TOL:
        # +/-1 is exp(vhat * 0) or exp(vhat * pi) for every vhat
        return LeftOpClass(LeftOpKind.GLOBAL_PHASE, angle=aa.angle)
    c = aa.axis.x * vhat.x + aa.axis.y * vhat.y + aa.axis.z * vhat.z
    if abs(abs(c) - 1.0) <= CLASSIFY_TOL:
        return LeftOpClass(LeftOpKind.GLOBAL_PHASE, angle=math.copysign(aa.angle, c))
    if abs(c) <= CLASSIFY_TOL and abs(aa.angle - math.pi / 2.0) <= CLASSIFY_TOL:
        e1, e2 = _frame_axes(vhat)
        a = aa.axis
        delta = math.atan2(
            a.x * e2.x + a.y * e2.y + a.z * e2.z,
            a.x * e1.x + a.y * e1.y + a.z * e1.z,
        )
        return LeftOpClass(LeftOpKind.TIME_REVERSAL, delta=delta)
    return LeftOpClass(LeftOpKind.NON_UNITARY)


def time_reversal_operator(delta: float, vhat: Quaternion = I) -> UnitQuaternion:
    """``exp([j cos d + k sin d] pi/2)``, carried to the frame of ``vhat``."""
    e1, e2 = _frame_axes(vhat)
    # exp(a pi/2) = a for pure unit a; build it directly so T^2 = -1 holds to rounding
    axis = e1 * math.cos(delta) + e2 * math.sin(delta)
    return PureUnitQuaternion.of(axis)


def time_reverse_state(q: Quaternion, delta: float = 0.0, vhat: Quaternion = I) -> UnitQuaternion:
    return UnitQuaternion.of(mul(time_reversal_operator(delta, vhat), UnitQuaternion.of(q)))


def _left_axis(q_l: UnitQuaternion) -> tuple[PureUnitQuaternion, float]:
    """Write ``q_l = exp(-n gamma/2)`` with ``gamma`` in ``(0, 2 pi)``."""
    vn = math.hypot(q_l.x, q_l.y, q_l.z)
    if vn <= _IDENTITY_TOL:
        raise ValueError("q_L = +/-1 performs no rotation")
    aa = log_axis_angle(q_l)
    return PureUnitQuaternion.of(-aa.axis), 2.0 * aa.angle


def effective_rotation(q: Quaternion, q_l: Quaternion, vhat: Quaternion = I) -> tuple[BlochVector, float]:
    """Bloch-sphere rotation ``(axis, angle)`` produced by ``q -> q_l q``."""
    q = UnitQuaternion.of(q)
    n, gamma = _left_axis(UnitQuaternion.of(q_l))
    return f_map(sandwich(q, n)), gamma


def cone_check(
    n_axis: BlochVector, q: Quaternion, q_l: Quaternion, vhat: Quaternion = I
) -> tuple[float, float]:
    """Both sides of ``n . v = q_hat . r`` for a left factor about ``n_axis``.

    ``v`` is the Bloch image of ``vhat`` (``z`` for the standard map).
    """
    vhat = PureUnitQuaternion.of(vhat)
    q_l = UnitQuaternion.of(q_l)
    n_eff, _ = _left_axis(q_l)
    n_given = f_inverse(n_axis)
    align = n_eff.x * n_given.x + n_eff.y * n_given.y + n_eff.z * n_given.z
    if abs(abs(align) - 1.0) > CLASSIFY_TOL:
        raise ValueError("q_L does not rotate about n_axis")
    r, _ = effective_rotation(q, q_l, vhat)
    if align < 0:
        r = -r
    lhs = n_axis.dot(f_map(vhat))
    rhs = bloch_of_state(q, vhat).dot(r)
    return lhs, rhs


def axis_circle(q: Quaternion, q_l: Quaternion, vhat: Quaternion = I, samples: int = 64) -> list[BlochVector]:
    """Effective rotation axes over global phases ``alpha = 2 pi m / samples``."""
    q = UnitQuaternion.of(q)
    vhat = PureUnitQuaternion.of(vhat)
    out = []
    for m in range(samples):
        alpha = 2.0 * math.pi * m / samples
        shifted = mul(exp_pure(vhat, alpha), q)
        out.append(effective_rotation(shifted, q_l, vhat)[0])
    return out

