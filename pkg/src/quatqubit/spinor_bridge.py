"""Maps between spinors, unit quaternions and Bloch vectors.

Complex numbers live in the quaternion ``i``-plane, so a spinor ``(a, b)``
becomes ``q = a + b j``.  A fibration is fixed by a unit quaternion ``u``;
its special pure quaternion is ``vhat = u i conj(u)`` and the Bloch vector of
a state is ``f(conj(q) vhat q)`` with

    f(p) = (p_k, -p_j, p_i).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .quat_core import (
    I,
    J,
    EXACT_TOL,
    UNIT_TOL,
    PureUnitQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    exp_pure,
    mul,
    sandwich,
)

_POLE_TOL = 1e-14


@dataclass(frozen=True, slots=True)
class Spinor:
    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        n2 = abs(a) ** 2 + abs(b) ** 2
        if abs(n2 - 1.0) > UNIT_TOL:
            raise ValueError(f"spinor not normalized: |a|^2+|b|^2 = {n2!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_array(cls, arr) -> "Spinor":
        return cls(complex(arr[0]), complex(arr[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)


@dataclass(frozen=True, slots=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(n2 - 1.0) > UNIT_TOL:
            raise ValueError(f"Bloch vector not unit: |r|^2 = {n2!r}")
        n = math.sqrt(n2) if abs(n2 - 1.0) > EXACT_TOL else 1.0
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)) / n)

    @classmethod
    def from_seq(cls, values) -> "BlochVector":
        x, y, z = (float(v) for v in values)
        return cls(x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def dot(self, other: "BlochVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> "BlochVector":
        return BlochVector(-self.x, -self.y, -self.z)


@dataclass(frozen=True, slots=True)
class BlochAngles:
    theta: float
    phi: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta {self.theta!r} outside [0, pi]")
        if not (-math.pi <= self.phi < math.pi):
            raise ValueError(f"phi {self.phi!r} outside [-pi, pi)")


@dataclass(frozen=True, slots=True)
class FibrationMap:
    u: UnitQuaternion

    def __post_init__(self):
        object.__setattr__(self, "u", UnitQuaternion.of(self.u))
        # constructing the pure type performs the purity/norm check
        self.vhat

    @property
    def vhat(self) -> PureUnitQuaternion:
        return PureUnitQuaternion.of(mul(mul(self.u, I), conj(self.u)))


def map_mi(s: Spinor) -> UnitQuaternion:
    return UnitQuaternion(s.a.real, s.a.imag, s.b.real, s.b.imag)


def map_mi_inverse(q: Quaternion) -> Spinor:
    q = UnitQuaternion.of(q)
    return Spinor(complex(q.w, q.x), complex(q.y, q.z))


def map_mv(s: Spinor, m: FibrationMap) -> UnitQuaternion:
    return UnitQuaternion.of(mul(m.u, map_mi(s)))


def f_map(p: Quaternion) -> BlochVector:
    p = PureUnitQuaternion.of(p)
    return BlochVector(p.z, -p.y, p.x)


def f_inverse(v: BlochVector) -> PureUnitQuaternion:
    return PureUnitQuaternion(0.0, v.z, -v.y, v.x)


def f_map_raw(p: Quaternion) -> np.ndarray:
    """``f`` on the vector part without any unit checks (diagnostic use)."""
    return np.array([p.z, -p.y, p.x], dtype=float)


def bloch_of_state(q: Quaternion, vhat: Quaternion = I) -> BlochVector:
    q = UnitQuaternion.of(q)
    vhat = PureUnitQuaternion.of(vhat)
    return f_map(sandwich(q, vhat))


def angles_to_quaternion(ang: BlochAngles) -> UnitQuaternion:
    q = mul(mul(exp_pure(I, ang.alpha), exp_pure(J, ang.theta / 2.0)), exp_pure(I, -ang.phi / 2.0))
    return UnitQuaternion.of(q)


def _wrap(angle: float) -> float:
    """Wrap into [-pi, pi)."""
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def quaternion_to_angles(q: Quaternion) -> BlochAngles:
    """Inverse of :func:`angles_to_quaternion`.

    On the poles (theta 0 or pi) phi is set to 0 and alpha carries the
    remaining phase.
    """
    s = map_mi_inverse(q)
    ra, rb = abs(s.a), abs(s.b)
    theta = 2.0 * math.atan2(rb, ra)
    if rb < _POLE_TOL:
        return BlochAngles(0.0, 0.0, cmath.phase(s.a))
    if ra < _POLE_TOL:
        return BlochAngles(math.pi, 0.0, cmath.phase(s.b))
    arg_a, arg_b = cmath.phase(s.a), cmath.phase(s.b)
    phi = _wrap(arg_b - arg_a)
    return BlochAngles(theta, phi, arg_a + phi / 2.0)


def matrix_to_right_quaternion(U) -> tuple[UnitQuaternion, float]:
    """Split a 2x2 unitary into ``exp(i phase) V`` with ``V`` special unitary.

    Returns ``(q_R, phase)`` where ``q_R`` is ``map_mi`` of the first column
    of ``V``, so that ``map_mi(U s) = exp(i phase) map_mi(s) q_R`` for every
    spinor ``s``.  The phase is half the principal argument of ``det U`` and
    lies in ``(-pi/2, pi/2]``.
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {U.shape}")
    if np.max(np.abs(U.conj().T @ U - np.eye(2))) > UNIT_TOL:
        raise ValueError("matrix is not unitary")
    det = U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0]
    phase = cmath.phase(det) / 2.0
    V = U * cmath.exp(-1j * phase)
    c, d = V[0, 0], V[1, 0]
    return UnitQuaternion(c.real, c.imag, d.real, d.imag), phase

