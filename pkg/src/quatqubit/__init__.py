"""Spin-1/2 states as unit quaternions: maps, gates, left-multiplications and dynamics."""

from .quat_core import (
    I,
    J,
    K,
    ONE,
    AxisAngle,
    PureUnitQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    exp_pure,
    log_axis_angle,
    mul,
    norm,
    rotate_pure,
)
from .spinor_bridge import (
    BlochAngles,
    BlochVector,
    FibrationMap,
    Spinor,
    angles_to_quaternion,
    bloch_of_state,
    f_inverse,
    f_map,
    map_mi,
    map_mi_inverse,
    map_mv,
    matrix_to_right_quaternion,
    quaternion_to_angles,
)
from .gates import GateSpec, apply_gate, compose, decompose, gate_quaternion
from .leftmult import (
    LeftOpClass,
    LeftOpKind,
    axis_circle,
    classify_left,
    cone_check,
    effective_rotation,
    time_reverse_state,
)
from .fields import FieldProfile, b_of_t
from .dynamics import (
    FirstOrderState,
    InconsistentStateError,
    SecondOrderState,
    Trajectory,
    extract_vhat,
    first_order_rhs,
    integrate,
    lagrangian_l1_quat,
    lagrangian_l2,
    momentum_bloch,
    reverse_trajectory,
    second_order_rhs,
    step_exact,
)

__version__ = "0.1.0"
