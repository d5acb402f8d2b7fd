"""Randomized verification suites.

Each suite returns a list of :class:`Check` records, one per invariant, with
the largest deviation observed and the tolerance it was held to.  Every
comparison goes through an independent route: matrix mechanics from
:mod:`quatqubit.oracle`, Rodrigues rotations, or a closed form.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import oracle, sampling
from .dynamics import (
    FirstOrderState,
    integrate,
    lagrangian_l1_quat,
    momentum_bloch,
    reverse_trajectory,
)
from .fields import FieldProfile
from .gates import GateSpec, apply_gate, decompose, gate_quaternion
from .leftmult import axis_circle, cone_check, time_reversal_operator
from .quat_core import (
    I,
    J,
    K,
    PureUnitQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    exp_pure,
    log_axis_angle,
    mul,
)
from .spinor_bridge import (
    BlochVector,
    bloch_of_state,
    f_inverse,
    f_map,
    map_mi,
    matrix_to_right_quaternion,
)

SUITES = ("algebra", "gates", "cone", "timereversal", "dynamics")
DEFAULT_SEED = 20240607
DEFAULT_TRIALS = 1000


@dataclass(frozen=True)
class Check:
    name: str
    value: float  # largest deviation seen
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tol)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _quat_dev(p: Quaternion, q: Quaternion) -> float:
    return max(abs(a - b) for a, b in zip(p.as_tuple(), q.as_tuple()))


def _vec_dev(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))))


def _spinor_array(q: Quaternion) -> np.ndarray:
    return np.array([complex(q.w, q.x), complex(q.y, q.z)])


# ---------------------------------------------------------------- algebra

def suite_algebra(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    rng = np.random.default_rng(seed)
    minus_one = Quaternion(-1.0, 0.0, 0.0, 0.0)
    rules = {
        "i^2 = -1": (mul(I, I), minus_one),
        "j^2 = -1": (mul(J, J), minus_one),
        "k^2 = -1": (mul(K, K), minus_one),
        "ijk = -1": (mul(mul(I, J), K), minus_one),
        "ij = k": (mul(I, J), K),
        "jk = i": (mul(J, K), I),
        "ki = j": (mul(K, I), J),
        "ji = -k": (mul(J, I), -K),
        "kj = -i": (mul(K, J), -I),
        "ik = -j": (mul(I, K), -J),
    }
    out = [Check(f"algebra: {name}", _quat_dev(a, b), 0.0) for name, (a, b) in rules.items()]

    conj_rev = norm_mul = purity = 0.0
    for _ in range(trials):
        p = Quaternion(*rng.normal(size=4))
        q = Quaternion(*rng.normal(size=4))
        conj_rev = max(conj_rev, _quat_dev(conj(mul(p, q)), mul(conj(q), conj(p))))
        norm_mul = max(norm_mul, abs(mul(p, q).norm() - p.norm() * q.norm()) / (p.norm() * q.norm()))
        u = sampling.unit_quaternion(rng)
        v = sampling.pure_unit(rng)
        purity = max(purity, abs(mul(mul(u, v), conj(u)).w))
    out += [
        Check("algebra: conj(pq) = conj(q) conj(p)", conj_rev, 1e-12),
        Check("algebra: |pq| = |p||q| (relative)", norm_mul, 1e-12),
        Check("algebra: u v conj(u) is pure", purity, 1e-12),
    ]

    rep = oracle.algebra_check(seed=seed)
    for name, err in rep.checks.items():
        tol = 1e-12 if "<->" in name else 1e-15
        out.append(Check(f"algebra: {name}", err, tol))
    return out


# ---------------------------------------------------------------- gates

def suite_gates(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for name in ("X", "Y", "Z", "H", "PHASE"):
        bloch_err = spinor_err = 0.0
        for sign in ((1,) if name == "PHASE" else (1, -1)):
            for _ in range(trials):
                theta = float(rng.uniform(-math.pi, math.pi)) if name == "PHASE" else 0.0
                g = GateSpec.phase(theta) if name == "PHASE" else GateSpec.named(name, sign)
                s = sampling.spinor(rng)
                U = oracle.table_matrix(name, sign, theta)
                want = U @ s.as_array()
                got = _spinor_array(apply_gate(map_mi(s), g))
                spinor_err = max(spinor_err, _vec_dev(np.r_[got.real, got.imag], np.r_[want.real, want.imag]))
                bloch_err = max(bloch_err, _vec_dev(bloch_of_state(apply_gate(map_mi(s), g)).as_array(), oracle.bloch(want)))
        out.append(Check(f"gates: {name} Bloch vs matrix", bloch_err, 1e-12))
        out.append(Check(f"gates: {name} spinor vs matrix (phase exact)", spinor_err, 1e-12))

    rot = roundtrip = matrix = 0.0
    for _ in range(trials):
        axis = sampling.bloch_vector(rng)
        angle = float(rng.uniform(-2 * math.pi, 2 * math.pi))
        q = sampling.unit_quaternion(rng)
        g = GateSpec.general(axis, angle)
        want = oracle.rotate_vector(bloch_of_state(q).as_array(), axis.as_array(), angle)
        rot = max(rot, _vec_dev(bloch_of_state(apply_gate(q, g)).as_array(), want))
        qg = gate_quaternion(g)
        roundtrip = max(roundtrip, _quat_dev(gate_quaternion(decompose(qg)), qg))
        q_r, phase = matrix_to_right_quaternion(oracle.rn_matrix(axis.as_array(), angle))
        matrix = max(matrix, _quat_dev(q_r, qg) + abs(phase))
    out += [
        Check("gates: rotation law vs Rodrigues", rot, 1e-12),
        Check("gates: decompose round trip", roundtrip, 1e-12),
        Check("gates: rotation matrix -> right quaternion", matrix, 1e-12),
    ]
    return out


# ---------------------------------------------------------------- cone

def _random_left(rng) -> UnitQuaternion:
    while True:
        q = sampling.unit_quaternion(rng)
        if abs(q.w) < 1.0 - 1e-6:
            return q


def suite_cone(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    rng = np.random.default_rng(seed)
    err = 0.0
    for _ in range(trials):
        q = sampling.unit_quaternion(rng)
        q_l = _random_left(rng)
        n_axis = f_map(-log_axis_angle(q_l).axis)
        lhs, rhs = cone_check(n_axis, q, q_l)
        err = max(err, abs(lhs - rhs))

    zero_cone = great_circle = 0.0
    z_axis = BlochVector(0.0, 0.0, 1.0)
    for _ in range(max(1, trials // 10)):
        q = sampling.unit_quaternion(rng)
        qhat = bloch_of_state(q).as_array()
        gamma = float(rng.uniform(0.1, 2 * math.pi - 0.1))
        # n = z: every phase gives the Bloch vector itself as the axis
        q_l = exp_pure(f_inverse(z_axis), -gamma / 2.0)
        for r in axis_circle(q, q_l, samples=16):
            zero_cone = max(zero_cone, _vec_dev(r.as_array(), qhat))
        # equatorial n: axes sweep the great circle orthogonal to the Bloch vector
        phi = float(rng.uniform(-math.pi, math.pi))
        eq = BlochVector(math.cos(phi), math.sin(phi), 0.0)
        q_l = exp_pure(f_inverse(eq), -gamma / 2.0)
        for r in axis_circle(q, q_l, samples=16):
            great_circle = max(great_circle, abs(float(np.dot(r.as_array(), qhat))))
    return [
        Check("cone: n.z = qhat.r", err, 1e-12),
        Check("cone: n = z gives zero cone angle", zero_cone, 1e-12),
        Check("cone: equatorial n gives great circle", great_circle, 1e-12),
    ]


# ---------------------------------------------------------------- time reversal

def suite_timereversal(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    rng = np.random.default_rng(seed)
    negation = negation_v = square = 0.0
    for _ in range(trials):
        q = sampling.unit_quaternion(rng)
        delta = float(rng.uniform(-math.pi, math.pi))
        T = time_reversal_operator(delta)
        negation = max(negation, _vec_dev(bloch_of_state(mul(T, q)).as_array(), -bloch_of_state(q).as_array()))
        sq = mul(T, T)
        square = max(square, _quat_dev(sq, Quaternion(-1.0, 0.0, 0.0, 0.0)))
        v = sampling.pure_unit(rng)
        Tv = time_reversal_operator(delta, v)
        negation_v = max(
            negation_v, _vec_dev(bloch_of_state(mul(Tv, q), v).as_array(), -bloch_of_state(q, v).as_array())
        )

    f = FieldProfile.piecewise(
        [0.0, 0.7, 1.9],
        [(0.2, -0.5, 1.1), (1.3, 0.4, -0.2), (-0.6, 0.9, 0.3)],
        gamma=1.7,
        omega0=2.3,
    )
    tr = integrate(FirstOrderState(sampling.unit_quaternion(rng)), f, 3.0, 0.01, method="exact")
    back, residual = reverse_trajectory(tr, f)
    again, _ = reverse_trajectory(back, f.time_reversed())
    twice = float(np.max(np.abs(again.q + tr.q)))
    return [
        Check("timereversal: Bloch negation (vhat = i)", negation, 1e-12),
        Check("timereversal: Bloch negation (random vhat)", negation_v, 1e-12),
        Check("timereversal: T^2 = -1", square, 1e-15),
        Check("timereversal: reversed exact trajectory residual", residual, 1e-10),
        Check("timereversal: reversing twice gives -q", twice, 1e-15),
    ]


# ---------------------------------------------------------------- dynamics

def _random_field(rng, omega0: float) -> FieldProfile:
    return FieldProfile.rotating(
        b_perp=float(rng.uniform(0.2, 1.0)),
        b_z=float(rng.uniform(0.5, 1.5)),
        drive=float(rng.uniform(0.5, 2.0)),
        gamma=float(rng.uniform(0.5, 2.0)),
        omega0=omega0,
    )


def order_study(q0, f: FieldProfile, t_end: float = 4.0, hs=(0.2, 0.1, 0.05, 0.025)) -> tuple[float, list[float]]:
    """Log-log slope of max Bloch error, rk4-first vs the exact stepper."""
    errs = []
    for h in hs:
        a = integrate(FirstOrderState(q0), f, t_end, h)
        e = integrate(FirstOrderState(q0), f, t_end, h, method="exact")
        errs.append(float(np.max(np.abs(a.bloch - e.bloch))))
    slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
    return slope, errs


def suite_dynamics(seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    n_states = min(trials, 100)

    # first vs second order over ten Larmor periods
    B = (0.3, -0.4, 1.0)
    gamma, omega0 = 2.0, 1.0
    T = 2 * math.pi / (gamma * math.sqrt(sum(c * c for c in B)))
    f = FieldProfile.constant(B, gamma=gamma, omega0=omega0)
    q0 = sampling.unit_quaternion(rng)
    first = integrate(FirstOrderState(q0), f, 10 * T, T / 1000)
    second = integrate(FirstOrderState(q0), f, 10 * T, T / 1000, method="rk4-second")
    out.append(Check("dynamics: rk4-second vs rk4-first |dq|", float(np.max(np.linalg.norm(first.q - second.q, axis=1))), 1e-8))
    out.append(Check("dynamics: extracted vhat drift", float(np.max(second.vhat_drift)), 1e-8))
    out.append(Check("dynamics: |L2| on-shell", float(np.max(np.abs(second.l2))), 1e-8))

    # fibration invariance
    fr = _random_field(rng, 1.5)
    s_ref = sampling.spinor(rng)
    ref = integrate(FirstOrderState(map_mi(s_ref)), fr, 6.0, 0.01)
    fib = 0.0
    for _ in range(10):
        u = sampling.unit_quaternion(rng)
        vhat = PureUnitQuaternion.of(mul(mul(u, I), conj(u)))
        tr = integrate(FirstOrderState(mul(u, map_mi(s_ref)), vhat), fr, 6.0, 0.01)
        fib = max(fib, float(np.max(np.abs(tr.bloch - ref.bloch))))
    out.append(Check("dynamics: fibration invariance", fib, 1e-8))

    # convergence order and exact-stepper norm
    slope, _ = order_study(q0, f)
    out.append(Check("dynamics: rk4 order |slope - 4|", abs(slope - 4.0), 0.3))
    ex = integrate(FirstOrderState(q0), f, 10 * T, T / 100, method="exact")
    out.append(Check("dynamics: exact stepper norm change per step", float(np.max(np.abs(np.diff(ex.norm)))), 1e-13))

    # Larmor: angle and omega0 invisibility
    Bz, g = 0.8, 1.3
    start = exp_pure(J, math.pi / 4)  # Bloch +x
    runs = {}
    for w in (0.0, 1.0, 10.0):
        runs[w] = integrate(FirstOrderState(start), FieldProfile.constant((0, 0, Bz), gamma=g, omega0=w), 12.0, 0.05, method="exact")
    base = runs[0.0]
    angle = np.unwrap(np.arctan2(base.bloch[:, 1], base.bloch[:, 0]))
    out.append(Check("dynamics: Larmor angle = gamma Bz t", float(np.max(np.abs(angle - g * Bz * base.t))), 1e-10))
    inv = max(float(np.max(np.abs(runs[w].bloch - base.bloch))) for w in (1.0, 10.0))
    out.append(Check("dynamics: Bloch trajectory independent of omega0", inv, 1e-12))

    # quaternion vs matrix-spinor integration
    fo = _random_field(rng, 0.9)
    s0 = sampling.spinor(rng)
    tq = integrate(FirstOrderState(map_mi(s0)), fo, 5.0, 0.01)
    ts = oracle.integrate_spinor(s0.as_array(), fo, fo.omega0, 5.0, 0.01)
    out.append(Check("dynamics: Bloch trajectory vs spinor oracle", float(np.max(np.abs(tq.bloch - ts.bloch))), 1e-8))

    # Lagrangian L1 and the momentum identity on random states
    l1 = mom = 0.0
    for _ in range(n_states):
        q = sampling.unit_quaternion(rng)
        qdot = Quaternion(*rng.normal(size=4))
        Bv = rng.normal(size=3)
        gm = float(rng.uniform(0.5, 2.0))
        h_term = 0.5 * gm * float(np.dot(Bv, bloch_of_state(q).as_array()))
        s = _spinor_array(q)
        sdot = _spinor_array(qdot)
        want = oracle.lagrangian_l1(s, sdot, oracle.hamiltonian(Bv, gm))
        l1 = max(l1, abs(lagrangian_l1_quat(q, qdot, h_term) - want))

        vhat = sampling.pure_unit(rng)
        b = Quaternion(0.0, *rng.normal(size=3))
        w = float(rng.uniform(0.5, 3.0))
        qd = -(mul(q, b) + mul(vhat, q) * w)
        mom = max(mom, _vec_dev(momentum_bloch(q, qd, b, w).as_array(), bloch_of_state(q, vhat).as_array()))
    out.append(Check("dynamics: L1 quaternion vs spinor", l1, 1e-12))
    out.append(Check("dynamics: f(p q / omega0) = Bloch vector", mom, 1e-12))
    return out


_RUNNERS = {
    "algebra": suite_algebra,
    "gates": suite_gates,
    "cone": suite_cone,
    "timereversal": suite_timereversal,
    "dynamics": suite_dynamics,
}


def run(suite: str = "all", seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    """Run one suite (or ``all``); checks come back sorted by name."""
    if trials < 1:
        raise ValueError("trials must be positive")
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        checks += _RUNNERS[name](seed=seed, trials=trials)
    return sorted(checks, key=lambda c: c.name)
