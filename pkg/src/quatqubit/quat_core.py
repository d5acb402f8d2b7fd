"""Quaternion algebra.

Quaternions are stored as ``w + x i + y j + z k`` with the real part first.
All value types are immutable.  ``UnitQuaternion`` and ``PureUnitQuaternion``
check their norm once at construction (tolerance ``UNIT_TOL``) and
renormalize exactly once; arithmetic always returns a plain ``Quaternion``
and never renormalizes, so norm drift stays visible.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Union

import numpy as np

UNIT_TOL = 1e-9
# squared norms this close to one are left alone, so already-unit values pass
# through constructors bit-for-bit
EXACT_TOL = 4 * sys.float_info.epsilon

Scalar = Union[int, float]


@dataclass(frozen=True, slots=True, eq=False)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for c in (self.w, self.x, self.y, self.z):
            if not math.isfinite(c):
                raise ValueError(f"quaternion components must be finite, got {self.as_tuple()}")

    # construction helpers
    @classmethod
    def from_seq(cls, values) -> "Quaternion":
        w, x, y, z = (float(v) for v in values)
        return cls(w, x, y, z)

    @classmethod
    def pure(cls, x: float, y: float, z: float) -> "Quaternion":
        return cls(0.0, x, y, z)

    # arithmetic
    def __add__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        # negation keeps the norm exactly, so unit types are kept without renormalizing
        out = object.__new__(type(self))
        for name in ("w", "x", "y", "z"):
            object.__setattr__(out, name, 0.0 - getattr(self, name))
        return out

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other * self.w, other * self.x, other * self.y, other * self.z)
        return NotImplemented

    def __truediv__(self, other: Scalar) -> "Quaternion":
        if not isinstance(other, (int, float)):
            return NotImplemented
        return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    def __iter__(self):
        return iter(self.as_tuple())

    # queries
    def conj(self) -> "Quaternion":
        return conj(self)

    def norm(self) -> float:
        return norm(self)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    @property
    def real(self) -> float:
        return self.w

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    def distance(self, other: "Quaternion") -> float:
        """Euclidean distance between the two 4-vectors."""
        return norm(self - other)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


@dataclass(frozen=True, slots=True, eq=False)
class UnitQuaternion(Quaternion):
    """A quaternion of norm one, checked to ``UNIT_TOL`` and renormalized once."""

    def __post_init__(self):
        Quaternion.__post_init__(self)
        n2 = self.norm2()
        if abs(n2 - 1.0) > UNIT_TOL:
            raise ValueError(f"not a unit quaternion: |q|^2 = {n2!r}")
        if abs(n2 - 1.0) > EXACT_TOL:
            n = math.sqrt(n2)
            for name in ("w", "x", "y", "z"):
                object.__setattr__(self, name, getattr(self, name) / n)

    @classmethod
    def of(cls, q: Quaternion) -> "UnitQuaternion":
        if isinstance(q, cls):
            return q
        return cls(q.w, q.x, q.y, q.z)


@dataclass(frozen=True, slots=True, eq=False)
class PureUnitQuaternion(UnitQuaternion):
    """Unit quaternion with real part identically zero."""

    def __post_init__(self):
        Quaternion.__post_init__(self)
        if abs(self.w) > UNIT_TOL:
            raise ValueError(f"not a pure quaternion: real part {self.w!r}")
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(n2 - 1.0) > UNIT_TOL:
            raise ValueError(f"not a unit pure quaternion: |v|^2 = {n2!r}")
        object.__setattr__(self, "w", 0.0)
        if abs(n2 - 1.0) > EXACT_TOL:
            n = math.sqrt(n2)
            for name in ("x", "y", "z"):
                object.__setattr__(self, name, getattr(self, name) / n)

    @classmethod
    def of(cls, q: Quaternion) -> "PureUnitQuaternion":
        if isinstance(q, cls):
            return q
        return cls(q.w, q.x, q.y, q.z)

    @classmethod
    def from_vector(cls, x: float, y: float, z: float) -> "PureUnitQuaternion":
        """Normalize any nonzero 3-vector."""
        n = math.hypot(x, y, z)
        if n == 0.0 or not math.isfinite(n):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(0.0, x / n, y / n, z / n)


@dataclass(frozen=True, slots=True)
class AxisAngle:
    axis: PureUnitQuaternion
    angle: float

    def __post_init__(self):
        if not (-math.pi < self.angle <= math.pi):
            raise ValueError(f"angle {self.angle!r} outside (-pi, pi]")


ONE = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
I = PureUnitQuaternion(0.0, 1.0, 0.0, 0.0)
J = PureUnitQuaternion(0.0, 0.0, 1.0, 0.0)
K = PureUnitQuaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    pw, px, py, pz = p.w, p.x, p.y, p.z
    qw, qx, qy, qz = q.w, q.x, q.y, q.z
    return Quaternion(
        pw * qw - px * qx - py * qy - pz * qz,
        pw * qx + px * qw + py * qz - pz * qy,
        pw * qy - px * qz + py * qw + pz * qx,
        pw * qz + px * qy - py * qx + pz * qw,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def norm(q: Quaternion) -> float:
    return math.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z)


def exp_pure(axis: Quaternion, angle: float) -> UnitQuaternion:
    """``cos(angle) + axis sin(angle)`` for a pure unit ``axis``."""
    axis = PureUnitQuaternion.of(axis)
    s = math.sin(angle)
    return UnitQuaternion(math.cos(angle), axis.x * s, axis.y * s, axis.z * s)


def exp_vec(p: Quaternion) -> Quaternion:
    """Exponential of a pure quaternion of any length.

    Returns a plain ``Quaternion`` (unit up to rounding); used on hot paths
    where the unit-type construction check is unwanted.
    """
    if p.w != 0.0:
        raise ValueError("exp_vec expects a pure quaternion")
    theta = math.sqrt(p.x * p.x + p.y * p.y + p.z * p.z)
    if theta == 0.0:
        return Quaternion(1.0, 0.0, 0.0, 0.0)
    s = math.sin(theta) / theta
    return Quaternion(math.cos(theta), p.x * s, p.y * s, p.z * s)


def log_axis_angle(q: Quaternion) -> AxisAngle:
    """Axis-angle form ``q = exp_pure(axis, angle)`` with ``angle`` in ``(-pi, pi]``.

    The returned angle is always in ``[0, pi]``.  For ``q = +1`` the result is
    ``(i, 0)`` and for ``q = -1`` it is ``(i, pi)``.
    """
    q = UnitQuaternion.of(q)
    vn = math.hypot(q.x, q.y, q.z)
    if vn == 0.0:
        return AxisAngle(I, 0.0 if q.w > 0 else math.pi)
    angle = math.atan2(vn, q.w)
    return AxisAngle(PureUnitQuaternion(0.0, q.x / vn, q.y / vn, q.z / vn), angle)


def rotate_pure(v: Quaternion, axis: Quaternion, angle: float) -> PureUnitQuaternion:
    """Rotate ``v`` by ``angle`` (right-handed) about ``axis``.

    Computed as ``exp(axis angle/2) v exp(-axis angle/2)``.
    """
    v = PureUnitQuaternion.of(v)
    r = exp_pure(axis, angle / 2.0)
    out = mul(mul(r, v), conj(r))
    return PureUnitQuaternion(out.w, out.x, out.y, out.z)


def sandwich(q: Quaternion, v: Quaternion) -> Quaternion:
    """``conj(q) v q``; pure whenever ``v`` is pure."""
    return mul(mul(conj(q), v), q)


def dot(p: Quaternion, q: Quaternion) -> float:
    """Euclidean 4-vector inner product, equal to ``Re(p conj(q))``."""
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z
