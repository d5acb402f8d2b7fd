"""Random draws of states and axes for property sweeps."""

from __future__ import annotations

import numpy as np

from .quat_core import PureUnitQuaternion, UnitQuaternion
from .spinor_bridge import BlochVector, Spinor


def unit_quaternion(rng: np.random.Generator) -> UnitQuaternion:
    """Haar-uniform on the 3-sphere."""
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return UnitQuaternion(*map(float, v))


def pure_unit(rng: np.random.Generator) -> PureUnitQuaternion:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return PureUnitQuaternion(0.0, *map(float, v))


def bloch_vector(rng: np.random.Generator) -> BlochVector:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return BlochVector(*map(float, v))


def spinor(rng: np.random.Generator) -> Spinor:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return Spinor(complex(v[0], v[1]), complex(v[2], v[3]))
