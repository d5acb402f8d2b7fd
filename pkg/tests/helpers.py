import math

import numpy as np
from hypothesis import strategies as st

from quatqubit.quat_core import PureUnitQuaternion, Quaternion, UnitQuaternion
from quatqubit.spinor_bridge import BlochVector, Spinor

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi, allow_nan=False)


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _nonzero(n):
    return st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=n, max_size=n).filter(
        lambda v: sum(c * c for c in v) > 1e-2
    )


quaternions = st.builds(Quaternion, finite, finite, finite, finite)
unit_quaternions = _nonzero(4).map(lambda v: UnitQuaternion(*_unit(v)))
pure_units = _nonzero(3).map(lambda v: PureUnitQuaternion(0.0, *_unit(v)))
bloch_vectors = _nonzero(3).map(lambda v: BlochVector(*_unit(v)))
spinors = _nonzero(4).map(lambda v: Spinor(complex(*_unit(v)[:2]), complex(*_unit(v)[2:])))


def qclose(p, q, tol=1e-12):
    return max(abs(a - b) for a, b in zip(p.as_tuple(), q.as_tuple())) <= tol


def vclose(a, b, tol=1e-12):
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))) <= tol
