"""Time-dependent magnetic fields driving the spin dynamics (hbar = 1)."""

from __future__ import annotations

import bisect
import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .quat_core import Quaternion

KINDS = ("constant", "rotating", "piecewise", "sampled")


@dataclass(frozen=True)
class FieldProfile:
    """Field ``B(t)`` plus the gyromagnetic ratio and rest frequency.

    kinds
        ``constant``   -- ``B`` fixed.
        ``rotating``   -- ``(b_perp cos(drive t), b_perp sin(drive t), b_z)``.
        ``piecewise``  -- ``values[m]`` on ``[times[m], times[m+1])``; the first
                          value also covers ``t < times[0]``, the last one runs on.
        ``sampled``    -- linear interpolation of ``values`` at ``times``; only
                          defined on ``[times[0], times[-1]]``.
    """

    kind: str
    gamma: float = 1.0
    omega0: float = 0.0
    B: tuple[float, float, float] = (0.0, 0.0, 0.0)
    b_perp: float = 0.0
    b_z: float = 0.0
    drive: float = 0.0
    times: tuple[float, ...] = ()
    values: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        for name in ("gamma", "omega0", "b_perp", "b_z", "drive"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        object.__setattr__(self, "B", tuple(float(v) for v in self.B))
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "values", tuple(tuple(float(c) for c in v) for v in self.values))
        if self.kind in ("piecewise", "sampled"):
            if len(self.times) == 0 or len(self.times) != len(self.values):
                raise ValueError("times and values must be nonempty and of equal length")
            if any(len(v) != 3 for v in self.values):
                raise ValueError("field values must be 3-vectors")
            if any(b <= a for a, b in zip(self.times, self.times[1:])):
                raise ValueError("field sample times must be strictly increasing")
            if self.kind == "sampled" and len(self.times) < 2:
                raise ValueError("a sampled field needs at least two samples")

    # constructors
    @classmethod
    def constant(cls, B: Sequence[float], gamma: float = 1.0, omega0: float = 0.0) -> "FieldProfile":
        return cls("constant", gamma=gamma, omega0=omega0, B=tuple(B))

    @classmethod
    def rotating(cls, b_perp: float, b_z: float, drive: float, gamma: float = 1.0, omega0: float = 0.0) -> "FieldProfile":
        return cls("rotating", gamma=gamma, omega0=omega0, b_perp=b_perp, b_z=b_z, drive=drive)

    @classmethod
    def piecewise(cls, times, values, gamma: float = 1.0, omega0: float = 0.0) -> "FieldProfile":
        return cls("piecewise", gamma=gamma, omega0=omega0, times=tuple(times), values=tuple(map(tuple, values)))

    @classmethod
    def sampled(cls, times, values, gamma: float = 1.0, omega0: float = 0.0) -> "FieldProfile":
        return cls("sampled", gamma=gamma, omega0=omega0, times=tuple(times), values=tuple(map(tuple, values)))

    def with_omega0(self, omega0: float) -> "FieldProfile":
        return dataclasses.replace(self, omega0=omega0)

    def time_reversed(self) -> "TimeReversedField":
        return TimeReversedField(self)

    @property
    def is_piecewise_constant(self) -> bool:
        return self.kind in ("constant", "piecewise")

    # evaluation
    def field(self, t: float) -> np.ndarray:
        if self.kind == "constant":
            return np.array(self.B)
        if self.kind == "rotating":
            ph = self.drive * t
            return np.array([self.b_perp * math.cos(ph), self.b_perp * math.sin(ph), self.b_z])
        if self.kind == "piecewise":
            m = max(bisect.bisect_right(self.times, t) - 1, 0)
            return np.array(self.values[m])
        return self._interp(t)

    def field_rate(self, t: float) -> np.ndarray:
        """dB/dt; zero inside constant segments, central differences for sampled data."""
        if self.kind in ("constant", "piecewise"):
            return np.zeros(3)
        if self.kind == "rotating":
            ph = self.drive * t
            w = self.drive * self.b_perp
            return np.array([-w * math.sin(ph), w * math.cos(ph), 0.0])
        ts = self.times
        m = min(max(bisect.bisect_right(ts, t) - 1, 0), len(ts) - 2)
        step = ts[m + 1] - ts[m]
        lo, hi = max(t - step, ts[0]), min(t + step, ts[-1])
        return (self._interp(hi) - self._interp(lo)) / (hi - lo)

    def _interp(self, t: float) -> np.ndarray:
        ts = self.times
        slack = 1e-12 * max(1.0, abs(ts[0]), abs(ts[-1]))
        if t < ts[0] - slack or t > ts[-1] + slack:
            raise ValueError(f"t = {t!r} outside sampled field domain [{ts[0]}, {ts[-1]}]")
        t = min(max(t, ts[0]), ts[-1])
        m = min(max(bisect.bisect_right(ts, t) - 1, 0), len(ts) - 2)
        w = (t - ts[m]) / (ts[m + 1] - ts[m])
        return (1.0 - w) * np.array(self.values[m]) + w * np.array(self.values[m + 1])

    def breakpoints(self, t0: float, t1: float) -> list[float]:
        """Segment boundaries strictly inside ``(t0, t1)`` for piecewise fields."""
        if self.kind != "piecewise":
            return []
        return [t for t in self.times if t0 < t < t1]

    def b(self, t: float) -> Quaternion:
        return field_to_b(self.field(t), self.gamma)

    def bdot(self, t: float) -> Quaternion:
        return field_to_b(self.field_rate(t), self.gamma)

    # serialization
    def to_dict(self) -> dict:
        d = {"kind": self.kind, "gamma": self.gamma, "omega0": self.omega0}
        if self.kind == "constant":
            d["B"] = list(self.B)
        elif self.kind == "rotating":
            d.update(b_perp=self.b_perp, b_z=self.b_z, drive=self.drive)
        else:
            d["times"] = list(self.times)
            d["values"] = [list(v) for v in self.values]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FieldProfile":
        d = dict(d)
        kind = d.pop("kind", None)
        if kind not in KINDS:
            raise ValueError(f"unknown field kind {kind!r}")
        allowed = {
            "constant": {"gamma", "omega0", "B"},
            "rotating": {"gamma", "omega0", "b_perp", "b_z", "drive"},
            "piecewise": {"gamma", "omega0", "times", "values"},
            "sampled": {"gamma", "omega0", "times", "values"},
        }[kind]
        extra = set(d) - allowed
        if extra:
            raise ValueError(f"unexpected keys for {kind} field: {sorted(extra)}")
        if "B" in d:
            d["B"] = tuple(d["B"])
            if len(d["B"]) != 3:
                raise ValueError("B must have three components")
        if "times" in d:
            d["times"] = tuple(d["times"])
        if "values" in d:
            d["values"] = tuple(tuple(v) for v in d["values"])
        return cls(kind, **d)


class TimeReversedField:
    """View of ``B'(t) = -B(-t)``: the field after flipping every time-odd quantity."""

    def __init__(self, parent: FieldProfile):
        self.parent = parent
        self.gamma = parent.gamma
        self.omega0 = parent.omega0
        self.kind = parent.kind

    @property
    def is_piecewise_constant(self) -> bool:
        return self.parent.is_piecewise_constant

    def field(self, t: float) -> np.ndarray:
        return -self.parent.field(-t)

    def field_rate(self, t: float) -> np.ndarray:
        return self.parent.field_rate(-t)

    def breakpoints(self, t0: float, t1: float) -> list[float]:
        return sorted(-t for t in self.parent.breakpoints(-t1, -t0))

    def b(self, t: float) -> Quaternion:
        return field_to_b(self.field(t), self.gamma)

    def bdot(self, t: float) -> Quaternion:
        return field_to_b(self.field_rate(t), self.gamma)

    def time_reversed(self) -> FieldProfile:
        return self.parent


def field_to_b(B, gamma: float) -> Quaternion:
    """``(gamma/2)(i Bz - j By + k Bx)``."""
    bx, by, bz = (float(c) for c in B)
    g = 0.5 * gamma
    return Quaternion(0.0, g * bz, -g * by, g * bx)


def b_of_t(f: FieldProfile, t: float) -> Quaternion:
    return f.b(t)
