"""Reference spin-1/2 mechanics with 2x2 complex matrices.

Ground truth for the quaternion code paths.  Nothing here uses the
quaternion arithmetic; states are length-2 complex arrays and operators are
2x2 complex arrays.

Sign convention: the quaternion field equation ``qdot = -q b`` with
``b = (gamma/2)(i Bz - j By + k Bx)`` is the spinor equation

    i ds/dt = (gamma/2) (B . sigma) s + omega0 s,

i.e. a right-handed precession at rate ``gamma |B|``.  :func:`hamiltonian`
uses that sign so that both routes describe the same motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def pauli(axis: str) -> np.ndarray:
    return _PAULI[axis.lower()].copy()


def sigma_dot(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


def hamiltonian(B, gamma: float) -> np.ndarray:
    """Spin Hamiltonian ``(gamma/2) B . sigma`` (hbar = 1)."""
    return 0.5 * gamma * sigma_dot(B)


def rn_matrix(axis, gamma_angle: float) -> np.ndarray:
    """``cos(g/2) I - i sin(g/2) n . sigma``: right-handed Bloch rotation by ``g`` about ``n``."""
    return math.cos(gamma_angle / 2.0) * IDENTITY - 1j * math.sin(gamma_angle / 2.0) * sigma_dot(axis)


def table_matrix(name: str, sign: int = 1, theta: float = 0.0) -> np.ndarray:
    """Gate matrices including the prefactors that make them special unitary."""
    name = name.upper()
    if name == "X":
        return sign * 1j * SIGMA_X
    if name == "Y":
        return -sign * 1j * SIGMA_Y
    if name == "Z":
        return sign * 1j * SIGMA_Z
    if name == "H":
        return sign * 1j / math.sqrt(2.0) * np.array([[1, 1], [1, -1]], dtype=complex)
    if name == "PHASE":
        return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    raise ValueError(f"unknown gate {name!r}")


def bloch(s) -> np.ndarray:
    """Bloch vector ``<sigma>`` of a normalized spinor."""
    a, b = np.asarray(s, dtype=complex)
    ab = np.conj(a) * b
    return np.array([2.0 * ab.real, 2.0 * ab.imag, abs(a) ** 2 - abs(b) ** 2])


def rotate_vector(v, axis, angle: float) -> np.ndarray:
    """Rodrigues rotation of ``v`` by ``angle`` (right-handed) about unit ``axis``."""
    v = np.asarray(v, dtype=float)
    k = np.asarray(axis, dtype=float)
    c, s = math.cos(angle), math.sin(angle)
    return v * c + np.cross(k, v) * s + k * np.dot(k, v) * (1.0 - c)


def lagrangian_l1(s, sdot, H) -> float:
    """``<s|H|s> - Im<sdot|s>`` (hbar = 1)."""
    s = np.asarray(s, dtype=complex)
    sdot = np.asarray(sdot, dtype=complex)
    expect = np.vdot(s, np.asarray(H) @ s).real
    return float(expect - np.vdot(sdot, s).imag)


@dataclass
class SpinorTrajectory:
    t: np.ndarray
    states: np.ndarray  # (n, 2) complex
    norm: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def bloch(self) -> np.ndarray:
        a, b = self.states[:, 0], self.states[:, 1]
        ab = np.conj(a) * b
        return np.stack([2.0 * ab.real, 2.0 * ab.imag, abs(a) ** 2 - abs(b) ** 2], axis=1)


def integrate_spinor(s0, field_profile, omega0: float, t_end: float, h: float) -> SpinorTrajectory:
    """Classic RK4 on ``i ds/dt = (H(t) + omega0) s``.

    ``field_profile`` only needs ``.field(t)`` (the B vector) and ``.gamma``.
    Sample times are ``k h`` for ``k = 0 .. floor(t_end/h)``, like the
    quaternion integrator.
    """
    if h <= 0:
        raise ValueError("step must be positive")
    s = np.asarray(getattr(s0, "as_array", lambda: s0)(), dtype=complex)
    gamma = field_profile.gamma

    def rhs(t, y):
        Hm = hamiltonian(field_profile.field(t), gamma) + omega0 * IDENTITY
        return -1j * (Hm @ y)

    n = int(math.floor(t_end / h + 1e-9))
    ts = np.arange(n + 1) * h
    out = np.empty((n + 1, 2), dtype=complex)
    out[0] = s
    for k in range(n):
        t = ts[k]
        k1 = rhs(t, s)
        k2 = rhs(t + h / 2, s + h / 2 * k1)
        k3 = rhs(t + h / 2, s + h / 2 * k2)
        k4 = rhs(t + h, s + h * k3)
        s = s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[k + 1] = s
    return SpinorTrajectory(ts, out, np.sqrt(np.sum(np.abs(out) ** 2, axis=1)))


@dataclass
class AlgebraReport:
    checks: dict[str, float]  # identity -> max abs deviation
    passed: dict[str, bool]
    right_action: dict[str, str]  # u_n acting on spinors == right-multiplication by this unit
    algebra_iso: dict[str, str]  # homomorphic correspondence u_n <-> quaternion unit

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


_UNITS = {
    "i": np.array([0, 1, 0, 0.0]),
    "j": np.array([0, 0, 1, 0.0]),
    "k": np.array([0, 0, 0, 1.0]),
}


def _qmul_arr(p, q) -> np.ndarray:
    pw, px, py, pz = p
    qw, qx, qy, qz = q
    return np.array([
        pw * qw - px * qx - py * qy - pz * qz,
        pw * qx + px * qw + py * qz - pz * qy,
        pw * qy - px * qz + py * qw + pz * qx,
        pw * qz + px * qy - py * qx + pz * qw,
    ])


def algebra_check(seed: int = 0, trials: int = 20, tol: float = 1e-15, action_tol: float = 1e-12) -> AlgebraReport:
    """Check the ``u_n = -i sigma_n`` algebra and find its quaternion counterparts.

    ``right_action`` records, for each ``u_n``, the signed unit ``e`` with
    ``map_mi(u_n s) = map_mi(s) e`` on random spinors.  Because right
    multiplication reverses products, the algebra isomorphism is the negated
    assignment; it is reported in ``algebra_iso`` and checked against the
    commutators.  Matrix identities are held to ``tol``; the spinor-action
    comparisons, which pass through floating-point normalization, to
    ``action_tol``.
    """
    from .spinor_bridge import Spinor, map_mi  # comparison target only

    u = {n: -1j * _PAULI[n] for n in "xyz"}
    checks: dict[str, float] = {}
    checks["[u_x,u_y] = 2u_z"] = float(np.max(np.abs(u["x"] @ u["y"] - u["y"] @ u["x"] - 2 * u["z"])))
    checks["[u_y,u_z] = 2u_x"] = float(np.max(np.abs(u["y"] @ u["z"] - u["z"] @ u["y"] - 2 * u["x"])))
    checks["[u_z,u_x] = 2u_y"] = float(np.max(np.abs(u["z"] @ u["x"] - u["x"] @ u["z"] - 2 * u["y"])))
    for n in "xyz":
        checks[f"u_{n}^2 = -I"] = float(np.max(np.abs(u[n] @ u[n] + IDENTITY)))

    rng = np.random.default_rng(seed)
    right_action: dict[str, str] = {}
    for n in "xyz":
        best, best_err = None, math.inf
        for name, e in _UNITS.items():
            for sgn in (1, -1):
                err = 0.0
                for _ in range(trials):
                    v = rng.normal(size=4)
                    v /= np.linalg.norm(v)
                    s = np.array([v[0] + 1j * v[1], v[2] + 1j * v[3]])
                    q = map_mi(Spinor(s[0], s[1])).as_array()
                    us = u[n] @ s
                    lhs = map_mi(Spinor(us[0], us[1])).as_array()
                    err = max(err, float(np.max(np.abs(lhs - _qmul_arr(q, sgn * e)))))
                if err < best_err:
                    best, best_err = ("-" if sgn < 0 else "") + name, err
        right_action[f"u_{n}"] = best
        checks[f"u_{n} s <-> q ({best})"] = best_err

    iso = {k: (v[1:] if v.startswith("-") else "-" + v) for k, v in right_action.items()}

    def unit_of(label):
        sgn = -1.0 if label.startswith("-") else 1.0
        return sgn * _UNITS[label.lstrip("-")]

    for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        ea, eb, ec = unit_of(iso[f"u_{a}"]), unit_of(iso[f"u_{b}"]), unit_of(iso[f"u_{c}"])
        comm = _qmul_arr(ea, eb) - _qmul_arr(eb, ea)
        checks[f"[{iso[f'u_{a}']},{iso[f'u_{b}']}] = 2({iso[f'u_{c}']})"] = float(np.max(np.abs(comm - 2 * ec)))

    passed = {name: err <= (action_tol if "<->" in name else tol) for name, err in checks.items()}
    return AlgebraReport(checks, passed, right_action, iso)
