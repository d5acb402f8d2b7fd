"""First- and second-order quaternion spin dynamics.

First order (fibration fixed by ``vhat``)::

    qdot = -q b - vhat omega0 q

Second order (``vhat`` becomes a constant of the motion carried by ``qdot``)::

    qddot + 2 qdot b + q (b^2 + bdot + omega0^2) = 0

Integrators never renormalize; norm, the second-order Lagrangian and the
drift of the extracted ``vhat`` are recorded per sample instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .fields import FieldProfile, TimeReversedField
from .quat_core import (
    I,
    J,
    UNIT_TOL,
    PureUnitQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    exp_vec,
    mul,
)
from .spinor_bridge import BlochVector, f_map

METHODS = ("rk4-first", "rk4-second", "exact")
EXTRACT_TOL = 1e-6

Field = Union[FieldProfile, TimeReversedField]


class InconsistentStateError(ValueError):
    """(q, qdot) does not satisfy the first-order equation for any pure unit vhat."""


@dataclass(frozen=True)
class FirstOrderState:
    q: UnitQuaternion
    vhat: PureUnitQuaternion = I

    def __post_init__(self):
        object.__setattr__(self, "q", UnitQuaternion.of(self.q))
        object.__setattr__(self, "vhat", PureUnitQuaternion.of(self.vhat))


@dataclass(frozen=True)
class SecondOrderState:
    q: UnitQuaternion
    qdot: Quaternion

    def __post_init__(self):
        object.__setattr__(self, "q", UnitQuaternion.of(self.q))
        ortho = _re_conj_mul(self.q, self.qdot)
        if abs(ortho) > UNIT_TOL:
            raise ValueError(f"Re(conj(q) qdot) = {ortho!r}; qdot must be orthogonal to q")


def _re_conj_mul(p: Quaternion, q: Quaternion) -> float:
    """Re(conj(p) q)."""
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z


# ---------------------------------------------------------------- equations

def first_order_rhs(s: FirstOrderState, b: Quaternion, omega0: float) -> Quaternion:
    return _first_rhs(s.q, s.vhat, b, omega0)


def _first_rhs(q: Quaternion, vhat: Quaternion, b: Quaternion, omega0: float) -> Quaternion:
    return -(mul(q, b) + mul(vhat, q) * omega0)


def second_order_rhs(s: SecondOrderState, b: Quaternion, bdot: Quaternion, omega0: float) -> Quaternion:
    return _second_rhs(s.q, s.qdot, b, bdot, omega0)


def _second_rhs(q, qdot, b, bdot, omega0) -> Quaternion:
    inner = mul(b, b) + bdot + Quaternion(omega0 * omega0, 0.0, 0.0, 0.0)
    return -(mul(qdot, b) * 2.0 + mul(q, inner))


def step_exact(s: FirstOrderState, b: Quaternion, dt: float, omega0: float) -> FirstOrderState:
    """Closed-form step ``exp(-vhat omega0 dt) q exp(-b dt)`` for constant ``b``."""
    q = _exact(s.q, s.vhat, b, dt, omega0)
    return FirstOrderState(UnitQuaternion.of(q), s.vhat)


def _exact(q: Quaternion, vhat: Quaternion, b: Quaternion, dt: float, omega0: float) -> Quaternion:
    left = exp_vec(vhat * (-omega0 * dt))
    right = exp_vec(b * (-dt))
    return mul(mul(left, q), right)


# ---------------------------------------------------------------- diagnostics

def _raw_vhat(q: Quaternion, qdot: Quaternion, b: Quaternion, omega0: float) -> Quaternion:
    # q^-1 = conj(q)/|q|^2 rather than conj(q): integrator norm drift then
    # leaves vhat untouched and only a genuine departure from first order shows
    return mul(qdot + mul(q, b), conj(q)) * (-1.0 / (omega0 * q.norm2()))


def extract_vhat(q: Quaternion, qdot: Quaternion, b: Quaternion, omega0: float) -> PureUnitQuaternion:
    """Recover the fibration ``vhat = -(qdot + q b) q^-1 / omega0``."""
    if omega0 == 0.0:
        raise InconsistentStateError("vhat cannot be recovered when omega0 = 0")
    v = _raw_vhat(q, qdot, b, omega0)
    if abs(v.w) > EXTRACT_TOL or abs(v.norm() - 1.0) > EXTRACT_TOL:
        raise InconsistentStateError(
            f"state does not solve the first-order equation: real part {v.w:.3e}, norm {v.norm():.12f}"
        )
    vn = math.hypot(v.x, v.y, v.z)
    return PureUnitQuaternion(0.0, v.x / vn, v.y / vn, v.z / vn)


def lagrangian_l2(q: Quaternion, qdot: Quaternion, b: Quaternion, omega0: float) -> float:
    return 0.5 * ((qdot + mul(q, b)).norm2() - omega0 * omega0 * q.norm2())


def lagrangian_l1_quat(q: Quaternion, qdot: Quaternion, h_term: float) -> float:
    """Spinor Lagrangian ``<H> - Im<chidot|chi>`` written with quaternions.

    Under the standard map the kinetic term is ``-Im<chidot|chi> = Re(conj(qdot) i q)``.
    """
    return h_term + _re_conj_mul(qdot, mul(I, q))


def momentum_bloch(q: Quaternion, qdot: Quaternion, b: Quaternion, omega0: float) -> BlochVector:
    """Bloch vector ``f(p q / omega0)`` with canonical momentum ``p = conj(qdot + q b)``."""
    extract_vhat(q, qdot, b, omega0)
    p = conj(qdot + mul(q, b))
    return f_map(mul(p, q) * (1.0 / omega0))


# ---------------------------------------------------------------- trajectories

@dataclass
class Trajectory:
    """Sampled history with per-sample diagnostics.

    ``bloch`` is ``f(conj(q) vhat0 q)`` computed without normalization, so it
    carries the squared norm drift of ``q``.  ``vhat`` is the raw extracted
    fibration (NaN when ``omega0 = 0``) and ``vhat_drift`` its distance from
    ``vhat0``.
    """

    t: np.ndarray
    q: np.ndarray
    qdot: np.ndarray
    bloch: np.ndarray
    norm: np.ndarray
    l2: np.ndarray
    vhat: np.ndarray
    vhat_drift: np.ndarray
    ortho: np.ndarray
    vhat0: PureUnitQuaternion = I
    method: str = ""
    omega0: float = 0.0
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.t)

    def quaternion(self, k: int) -> Quaternion:
        return Quaternion.from_seq(self.q[k])

    def quaternion_rate(self, k: int) -> Quaternion:
        return Quaternion.from_seq(self.qdot[k])


def _build(ts, qs, qdots, fld: Field, vhat0: Quaternion, method: str) -> Trajectory:
    omega0 = fld.omega0
    n = len(ts)
    q_arr = np.empty((n, 4))
    qd_arr = np.empty((n, 4))
    bloch = np.empty((n, 3))
    norms = np.empty(n)
    l2 = np.empty(n)
    vh = np.full((n, 4), np.nan)
    drift = np.full(n, np.nan)
    ortho = np.empty(n)
    for k, (t, q, qd) in enumerate(zip(ts, qs, qdots)):
        b = fld.b(t)
        q_arr[k] = q.as_tuple()
        qd_arr[k] = qd.as_tuple()
        p = mul(mul(conj(q), vhat0), q)
        bloch[k] = (p.z, -p.y, p.x)
        norms[k] = q.norm()
        l2[k] = lagrangian_l2(q, qd, b, omega0)
        ortho[k] = _re_conj_mul(q, qd)
        if omega0 != 0.0:
            v = _raw_vhat(q, qd, b, omega0)
            vh[k] = v.as_tuple()
            drift[k] = (v - vhat0).norm()
    return Trajectory(
        t=np.asarray(ts, dtype=float), q=q_arr, qdot=qd_arr, bloch=bloch, norm=norms, l2=l2,
        vhat=vh, vhat_drift=drift, ortho=ortho, vhat0=PureUnitQuaternion.of(vhat0),
        method=method, omega0=omega0,
    )


def integrate(
    s0: Union[FirstOrderState, SecondOrderState],
    f: Field,
    t_end: float,
    h: float,
    method: str = "rk4-first",
    t0: float = 0.0,
) -> Trajectory:
    """Integrate from ``t0`` to ``t0 + t_end`` with samples at ``t0 + k h``.

    ``rk4-first`` and ``exact`` integrate the first-order equation; ``exact``
    requires a constant or piecewise-constant field and splits steps at field
    breakpoints.  ``rk4-second`` integrates the second-order equation; a
    first-order initial state is lifted with ``qdot0 = first_order_rhs``.
    The number of steps is ``floor(t_end / h)``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if not h > 0:
        raise ValueError("step h must be positive")
    if not t_end >= 0:
        raise ValueError("t_end must be nonnegative")
    if method == "exact" and not f.is_piecewise_constant:
        raise ValueError("the exact stepper needs a constant or piecewise-constant field")
    omega0 = f.omega0
    n = int(math.floor(t_end / h + 1e-9))
    ts = [t0 + k * h for k in range(n + 1)]

    if isinstance(s0, SecondOrderState):
        q0, qd0 = s0.q, s0.qdot
        vhat0 = extract_vhat(q0, qd0, f.b(t0), omega0) if omega0 != 0.0 else I
    else:
        q0, vhat0 = s0.q, s0.vhat
        qd0 = _first_rhs(q0, vhat0, f.b(t0), omega0)

    q: Quaternion = Quaternion(*q0.as_tuple())
    qs, qdots = [q], [qd0]
    if method == "rk4-second":
        qd = qd0
        for k in range(n):
            t = ts[k]
            bh, bdh = f.b(t + h / 2), f.bdot(t + h / 2)
            b0, bd0 = f.b(t), f.bdot(t)
            b1, bd1 = f.b(t + h), f.bdot(t + h)
            k1q, k1v = qd, _second_rhs(q, qd, b0, bd0, omega0)
            q2, v2 = q + k1q * (h / 2), qd + k1v * (h / 2)
            k2q, k2v = v2, _second_rhs(q2, v2, bh, bdh, omega0)
            q3, v3 = q + k2q * (h / 2), qd + k2v * (h / 2)
            k3q, k3v = v3, _second_rhs(q3, v3, bh, bdh, omega0)
            q4, v4 = q + k3q * h, qd + k3v * h
            k4q, k4v = v4, _second_rhs(q4, v4, b1, bd1, omega0)
            q = q + (k1q + k2q * 2.0 + k3q * 2.0 + k4q) * (h / 6)
            qd = qd + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6)
            qs.append(q)
            qdots.append(qd)
    elif method == "rk4-first":
        for k in range(n):
            t = ts[k]
            b0, bh, b1 = f.b(t), f.b(t + h / 2), f.b(t + h)
            k1 = _first_rhs(q, vhat0, b0, omega0)
            k2 = _first_rhs(q + k1 * (h / 2), vhat0, bh, omega0)
            k3 = _first_rhs(q + k2 * (h / 2), vhat0, bh, omega0)
            k4 = _first_rhs(q + k3 * h, vhat0, b1, omega0)
            q = q + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6)
            qs.append(q)
            qdots.append(_first_rhs(q, vhat0, b1, omega0))
    else:
        for k in range(n):
            t, t_next = ts[k], ts[k + 1]
            cuts = [t] + f.breakpoints(t, t_next) + [t_next]
            for a, c in zip(cuts, cuts[1:]):
                q = _exact(q, vhat0, f.b(0.5 * (a + c)), c - a, omega0)
            qs.append(q)
            qdots.append(_first_rhs(q, vhat0, f.b(t_next), omega0))

    traj = _build(ts, qs, qdots, f, vhat0, method)
    traj.meta["field"] = f
    return traj


def check_consistency(tr: Trajectory) -> None:
    """Raise :class:`InconsistentStateError` if any sample fails ``vhat`` extraction."""
    if tr.omega0 == 0.0:
        return
    re = np.abs(tr.vhat[:, 0])
    nrm = np.linalg.norm(tr.vhat, axis=1)
    bad = np.nonzero((re > EXTRACT_TOL) | (np.abs(nrm - 1.0) > EXTRACT_TOL))[0]
    if bad.size:
        k = int(bad[0])
        raise InconsistentStateError(
            f"sample {k} (t = {tr.t[k]!r}) is inconsistent with first-order dynamics: "
            f"Re(vhat) = {tr.vhat[k, 0]:.3e}, |vhat| = {nrm[k]:.12f}"
        )


def reverse_trajectory(tr: Trajectory, f: Field) -> tuple[Trajectory, float]:
    """Time-reverse a history: ``q'(t) = j q(-t)`` in the field ``b'(t) = -b(-t)``.

    With ``q' = j q`` and ``d/dt -> -d/dt`` the first-order equation keeps its
    form with fibration ``vhat' = j vhat j`` (``i`` is mapped to itself).
    Returns the reversed trajectory and the largest residual
    ``|qdot' + q' b' + vhat' omega0 q'|`` over its samples, using the stored
    ``qdot`` of the forward history.
    """
    rf = f.time_reversed()
    omega0 = f.omega0
    vhat_r = PureUnitQuaternion.of(mul(mul(J, tr.vhat0), J))
    ts, qs, qds = [], [], []
    residual = 0.0
    for k in range(len(tr.t) - 1, -1, -1):
        t = -float(tr.t[k])
        q = mul(J, tr.quaternion(k))
        qd = -mul(J, tr.quaternion_rate(k))
        r = qd + mul(q, rf.b(t)) + mul(vhat_r, q) * omega0
        residual = max(residual, r.norm())
        ts.append(t)
        qs.append(q)
        qds.append(qd)
    out = _build(ts, qs, qds, rf, vhat_r, tr.method)
    out.meta["field"] = rf
    out.meta["reversed_from"] = tr
    return out, residual
