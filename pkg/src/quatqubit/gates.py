"""Single-qubit gates as quaternion right-multiplications.

A state ``q`` goes to ``q g`` under gate ``g``; the general rotation by
``angle`` about Bloch axis ``n`` is ``g = exp(-f_inv(n) angle/2)``.  Named
gates carry the fixed quaternions below, each of which is phase-exact with
the matching matrix in :func:`quatqubit.oracle.table_matrix`:

    X(+/-)      +/-k           Y(+/-)   +/-j         Z(+/-)  +/-i
    H(+/-)      +/-(i+k)/sqrt2          PHASE(t)     exp(-i t/2)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .quat_core import (
    I,
    J,
    K,
    ONE,
    PureUnitQuaternion,
    Quaternion,
    UnitQuaternion,
    exp_pure,
    mul,
)
from .spinor_bridge import BlochVector, f_inverse, f_map

NAMED = ("X", "Y", "Z", "H", "PHASE")
_HADAMARD_AXIS = PureUnitQuaternion(0.0, 1.0 / math.sqrt(2.0), 0.0, 1.0 / math.sqrt(2.0))
_NAMED_QUAT = {"X": K, "Y": J, "Z": I, "H": _HADAMARD_AXIS}


@dataclass(frozen=True)
class GateSpec:
    """Either a named gate or a general axis-angle rotation.

    ``name`` is one of ``X, Y, Z, H, PHASE, GENERAL``.  ``sign`` selects the
    +/- row of the named gates; ``theta`` is the phase-shift angle; ``axis``
    and ``angle`` describe a general rotation.
    """

    name: str
    sign: int = 1
    theta: float = 0.0
    axis: Optional[BlochVector] = None
    angle: float = 0.0

    def __post_init__(self):
        if self.name not in NAMED + ("GENERAL",):
            raise ValueError(f"unknown gate {self.name!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.name == "PHASE" and self.sign != 1:
            raise ValueError("the phase-shift gate has no sign variant")
        if self.name == "GENERAL" and self.axis is None:
            raise ValueError("general gates need an axis")

    @classmethod
    def named(cls, name: str, sign: int = 1) -> "GateSpec":
        return cls(name.upper(), sign=sign)

    @classmethod
    def phase(cls, theta: float) -> "GateSpec":
        return cls("PHASE", theta=theta)

    @classmethod
    def general(cls, axis, angle: float) -> "GateSpec":
        if not isinstance(axis, BlochVector):
            axis = BlochVector.from_seq(axis)
        return cls("GENERAL", axis=axis, angle=angle)

    def label(self) -> str:
        if self.name == "PHASE":
            return f"PHASE({self.theta!r})"
        if self.name == "GENERAL":
            return f"R({self.axis.x!r},{self.axis.y!r},{self.axis.z!r};{self.angle!r})"
        return self.name + ("" if self.sign == 1 else "-")


def gate_quaternion(g: GateSpec) -> UnitQuaternion:
    if g.name == "GENERAL":
        return exp_pure(-f_inverse(g.axis), g.angle / 2.0)
    if g.name == "PHASE":
        return exp_pure(I, -g.theta / 2.0)
    base = _NAMED_QUAT[g.name]
    return UnitQuaternion.of(base if g.sign == 1 else -base)


def apply_gate(q: Quaternion, g: GateSpec) -> UnitQuaternion:
    return UnitQuaternion.of(mul(UnitQuaternion.of(q), gate_quaternion(g)))


def compose(gs: Iterable[GateSpec]) -> UnitQuaternion:
    """Single quaternion equivalent to applying ``gs`` in order (first gate first)."""
    gs = list(gs)
    if not gs:
        raise ValueError("cannot compose an empty gate sequence")
    out: Quaternion = ONE
    for g in gs:
        out = mul(out, gate_quaternion(g))
    return UnitQuaternion.of(out)


def decompose(q_r: Quaternion, modulo_sign: bool = False) -> GateSpec:
    """Axis-angle gate whose quaternion reproduces ``q_r``.

    The angle lies in ``[0, 2 pi)``, except ``q_r = -1`` which needs the full
    turn ``2 pi``.  The identity decomposes to ``(z, 0)``.  With
    ``modulo_sign`` the double cover is collapsed first: ``q_r`` is replaced
    by whichever of ``+/- q_r`` has nonnegative real part (ties go to a
    positive i-component), which limits the angle to ``[0, pi]`` and matches
    ``q_r`` only up to sign.
    """
    q_r = UnitQuaternion.of(q_r)
    if modulo_sign and _needs_flip(q_r):
        q_r = UnitQuaternion.of(-q_r)
    vn = math.hypot(q_r.x, q_r.y, q_r.z)
    if vn == 0.0:
        angle = 0.0 if q_r.w > 0 else 2.0 * math.pi
        return GateSpec.general(BlochVector(0.0, 0.0, 1.0), angle)
    angle = 2.0 * math.atan2(vn, q_r.w)
    # q_r = cos(angle/2) - n sin(angle/2) with sin(angle/2) > 0
    n = PureUnitQuaternion(0.0, -q_r.x / vn, -q_r.y / vn, -q_r.z / vn)
    return GateSpec.general(f_map(n), angle)


def _needs_flip(q: Quaternion) -> bool:
    for c in q.as_tuple():
        if c != 0.0:
            return c < 0.0
    return False
