"""Run configuration: a single YAML (or JSON) document.

Example::

    gamma: 1.0
    omega0: 1.0
    field:
      kind: constant
      B: [0.0, 0.0, 1.0]
    initial:
      angles: {theta: 1.5707963267948966, phi: 0.0, alpha: 0.0}
    method: exact
    step: 0.05
    t_end: 6.283185307179586
    format: csv

``initial`` takes exactly one of ``angles`` (theta, phi, alpha),
``quaternion`` ([w, x, y, z]) or ``bloch`` ([x, y, z]); it may also carry a
``qdot`` quaternion, which turns it into second-order initial data.  The
optional top-level ``fibration_u`` ([w, x, y, z]) selects the map
``q = u M_i(chi)`` and hence ``vhat = u i conj(u)``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import yaml

from .dynamics import METHODS, FirstOrderState, SecondOrderState
from .fields import FieldProfile
from .quat_core import ONE, Quaternion, UnitQuaternion, mul
from .spinor_bridge import BlochAngles, FibrationMap, angles_to_quaternion

FORMATS = ("csv", "json")
INITIAL_FORMS = ("angles", "quaternion", "bloch")
_TOP_KEYS = {"gamma", "omega0", "field", "initial", "fibration_u", "method", "step", "t_end", "out", "format", "seed"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    field_spec: dict
    initial: dict
    gamma: float = 1.0
    omega0: float = 0.0
    fibration_u: Optional[tuple[float, float, float, float]] = None
    method: str = "rk4-first"
    step: float = 0.01
    t_end: float = 1.0
    out: Optional[str] = None
    format: str = "csv"
    seed: int = 0
    profile: FieldProfile = field(init=False, repr=False)

    def __post_init__(self):
        try:
            self._validate()
        except ConfigError:
            raise
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(str(exc)) from exc

    def _validate(self):
        self.gamma = float(self.gamma)
        self.omega0 = float(self.omega0)
        self.step = float(self.step)
        self.t_end = float(self.t_end)
        self.seed = int(self.seed)
        if not (math.isfinite(self.gamma) and math.isfinite(self.omega0)):
            raise ConfigError("gamma and omega0 must be finite")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ConfigError("step must be positive")
        if not (self.t_end >= 0 and math.isfinite(self.t_end)):
            raise ConfigError("t_end must be nonnegative")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if not isinstance(self.field_spec, dict):
            raise ConfigError("field must be a mapping")
        spec = dict(self.field_spec)
        for key in ("gamma", "omega0"):
            if key in spec:
                raise ConfigError(f"set {key} at the top level, not inside field")
        self.profile = FieldProfile.from_dict({**spec, "gamma": self.gamma, "omega0": self.omega0})
        if self.fibration_u is not None:
            self.fibration_u = tuple(float(c) for c in self.fibration_u)
            if len(self.fibration_u) != 4:
                raise ConfigError("fibration_u needs four components")
            FibrationMap(UnitQuaternion(*self.fibration_u))
        self._check_initial()

    def _check_initial(self):
        if not isinstance(self.initial, dict):
            raise ConfigError("initial must be a mapping")
        forms = [k for k in INITIAL_FORMS if k in self.initial]
        if len(forms) != 1:
            raise ConfigError(f"initial needs exactly one of {INITIAL_FORMS}, got {forms}")
        extra = set(self.initial) - set(INITIAL_FORMS) - {"qdot"}
        if extra:
            raise ConfigError(f"unexpected keys in initial: {sorted(extra)}")
        self.initial_state()

    # ---------------------------------------------------------------- building

    @property
    def u(self) -> UnitQuaternion:
        return ONE if self.fibration_u is None else UnitQuaternion(*self.fibration_u)

    def initial_quaternion(self) -> UnitQuaternion:
        ini = self.initial
        if "quaternion" in ini:
            return UnitQuaternion(*(float(c) for c in ini["quaternion"]))
        if "angles" in ini:
            a = ini["angles"]
            extra = set(a) - {"theta", "phi", "alpha"}
            if extra:
                raise ConfigError(f"unexpected angle keys: {sorted(extra)}")
            ang = BlochAngles(float(a["theta"]), float(a.get("phi", 0.0)), float(a.get("alpha", 0.0)))
        else:
            x, y, z = (float(c) for c in ini["bloch"])
            n = math.hypot(x, y, z)
            if abs(n - 1.0) > 1e-9:
                raise ConfigError(f"bloch vector must be unit length, got norm {n!r}")
            theta = math.acos(max(-1.0, min(1.0, z / n)))
            phi = math.atan2(y, x) if (x or y) else 0.0
            ang = BlochAngles(theta, phi if phi < math.pi else -math.pi, 0.0)
        return UnitQuaternion.of(mul(self.u, angles_to_quaternion(ang)))

    def initial_state(self) -> Union[FirstOrderState, SecondOrderState]:
        q = self.initial_quaternion()
        if "qdot" in self.initial:
            return SecondOrderState(q, Quaternion(*(float(c) for c in self.initial["qdot"])))
        return FirstOrderState(q, FibrationMap(self.u).vhat)

    # ---------------------------------------------------------------- I/O

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a mapping")
        extra = set(d) - _TOP_KEYS
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        for key in ("field", "initial"):
            if key not in d:
                raise ConfigError(f"missing required key {key!r}")
        kw = {k: v for k, v in d.items() if k not in ("field",)}
        return cls(field_spec=d["field"], **kw)

    def to_dict(self) -> dict:
        d = {"gamma": self.gamma, "omega0": self.omega0}
        spec = self.profile.to_dict()
        spec.pop("gamma")
        spec.pop("omega0")
        d["field"] = spec
        d["initial"] = _plain(self.initial)
        if self.fibration_u is not None:
            d["fibration_u"] = list(self.fibration_u)
        d.update(method=self.method, step=self.step, t_end=self.t_end, format=self.format, seed=self.seed)
        if self.out is not None:
            d["out"] = self.out
        return d

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)

    def replace(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        kw = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.init}
        kw.update(changes)
        return RunConfig(**kw)


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def loads(text: str) -> RunConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    return RunConfig.from_dict(data)


def load(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return loads(text)
