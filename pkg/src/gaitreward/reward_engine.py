"""Measurement kernels, reward composition and trajectory scoring.

Kernels work on numpy arrays whose last axis holds a vector quantity, so the
same code scores one step or a whole trajectory at once.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .gait_spec import GaitSpec, coeff_block, sampled_coeff_block

log = logging.getLogger(__name__)

QUAT_TOL = 1e-6
INGEST_QUAT_TOL = 1e-3
DEFAULT_GAMMA = 0.99


class TrajectoryFormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _vec(x, n=None, name="value"):
    a = np.array(x, dtype=float).reshape(-1)
    if n is not None and a.size != n:
        raise ValueError(f"{name}: expected {n} entries, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name}: non-finite entry")
    return a


@dataclass
class Commands:
    xdot_desired: float = 0.0
    ydot_desired: float = 0.0
    quat_desired: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0, 0.0]))

    def __post_init__(self):
        self.quat_desired = _vec(self.quat_desired, 4, "quat_desired")
        if abs(np.linalg.norm(self.quat_desired) - 1.0) > QUAT_TOL:
            raise ValueError("quat_desired must be a unit quaternion")


@dataclass
class TrajectoryStep:
    foot_force_left: np.ndarray
    foot_force_right: np.ndarray
    foot_speed_left: np.ndarray
    foot_speed_right: np.ndarray
    pelvis_velocity: np.ndarray
    pelvis_orientation: np.ndarray
    pelvis_rot_velocity: np.ndarray
    pelvis_acceleration: np.ndarray
    action: np.ndarray
    prev_action: np.ndarray
    joint_torques: np.ndarray
    foot_position_left: np.ndarray
    foot_position_right: np.ndarray
    timestep: int = 0

    def __post_init__(self):
        for f in fields(self):
            if f.name == "timestep":
                continue
            n = {"pelvis_velocity": 2, "pelvis_orientation": 4}.get(f.name)
            if n is None and f.name not in ("action", "prev_action", "joint_torques"):
                n = 3
            setattr(self, f.name, _vec(getattr(self, f.name), n, f.name))
        if self.action.shape != self.prev_action.shape:
            raise ValueError("action and prev_action differ in length")
        if abs(np.linalg.norm(self.pelvis_orientation) - 1.0) > QUAT_TOL:
            raise ValueError("pelvis_orientation must be a unit quaternion")

    @classmethod
    def zero(cls, n_action: int = 6, n_torque: int = 4, t: int = 0) -> "TrajectoryStep":
        z3 = np.zeros(3)
        return cls(z3, z3, z3, z3, np.zeros(2), np.array([1.0, 0, 0, 0]), z3, z3,
                   np.zeros(n_action), np.zeros(n_action), np.zeros(n_torque), z3, z3, t)


# column name in Trajectory -> TrajectoryStep attribute
_STEP_FIELDS = {
    "frc_l": "foot_force_left",
    "frc_r": "foot_force_right",
    "spd_l": "foot_speed_left",
    "spd_r": "foot_speed_right",
    "pelvis_vel": "pelvis_velocity",
    "quat": "pelvis_orientation",
    "rot_vel": "pelvis_rot_velocity",
    "accel": "pelvis_acceleration",
    "action": "action",
    "prev_action": "prev_action",
    "torques": "joint_torques",
    "pos_l": "foot_position_left",
    "pos_r": "foot_position_right",
}


@dataclass
class Trajectory:
    """Column-oriented trajectory: one (T, n) array per measured quantity."""

    t: np.ndarray
    frc_l: np.ndarray
    frc_r: np.ndarray
    spd_l: np.ndarray
    spd_r: np.ndarray
    pelvis_vel: np.ndarray
    quat: np.ndarray
    rot_vel: np.ndarray
    accel: np.ndarray
    action: np.ndarray
    prev_action: np.ndarray
    torques: np.ndarray
    pos_l: np.ndarray
    pos_r: np.ndarray
    cmd_x: np.ndarray
    cmd_y: np.ndarray
    cmd_quat: np.ndarray
    terminated: bool = False

    def __len__(self) -> int:
        return len(self.t)

    def step(self, i: int) -> TrajectoryStep:
        kw = {attr: getattr(self, col)[i] for col, attr in _STEP_FIELDS.items()}
        return TrajectoryStep(timestep=int(self.t[i]), **kw)

    def commands(self, i: int) -> Commands:
        return Commands(float(self.cmd_x[i]), float(self.cmd_y[i]), self.cmd_quat[i])

    def steps(self) -> list[TrajectoryStep]:
        return [self.step(i) for i in range(len(self))]

    def slice(self, start: int, stop: int) -> "Trajectory":
        kw = {f.name: getattr(self, f.name)[start:stop] for f in fields(self)
              if f.name != "terminated"}
        return Trajectory(terminated=self.terminated, **kw)

    @classmethod
    def from_steps(cls, steps: Sequence[TrajectoryStep],
                   commands: Commands | Sequence[Commands] | None = None) -> "Trajectory":
        n = len(steps)
        if commands is None:
            commands = Commands()
        if isinstance(commands, Commands):
            commands = [commands] * n
        if len(commands) != n:
            raise ValueError("commands and steps differ in length")
        na = len(steps[0].action) if n else 0
        nt = len(steps[0].joint_torques) if n else 0
        width = {"pelvis_vel": 2, "quat": 4, "action": na, "prev_action": na, "torques": nt}
        cols = {}
        for col, attr in _STEP_FIELDS.items():
            w = width.get(col, 3)
            cols[col] = np.array([getattr(s, attr) for s in steps], dtype=float).reshape(n, w)
        return cls(
            t=np.array([s.timestep for s in steps], dtype=np.int64),
            cmd_x=np.array([c.xdot_desired for c in commands], dtype=float),
            cmd_y=np.array([c.ydot_desired for c in commands], dtype=float),
            cmd_quat=np.array([c.quat_desired for c in commands], dtype=float).reshape(n, 4),
            **cols,
        )

    @classmethod
    def empty(cls) -> "Trajectory":
        return cls.from_steps([])


@dataclass(frozen=True)
class RewardWeights:
    w_bipedal: float = 0.400
    w_cmd: float = 0.300
    w_smooth: float = 0.100
    w_standing: float = 0.100
    w_hopsym: float = 0.100
    beta: float = 1.0


# ---------------------------------------------------------------- kernels

def _kernel(x):
    # 1 - exp(-x), exact 0 at x == 0
    return -np.expm1(-np.asarray(x, dtype=float))


def omega(swing_ratio: float) -> float:
    """Sigmoid gate that is ~1 during locomotion and ~0 near standing."""
    return 1.0 / (1.0 + math.exp(-50.0 * (swing_ratio - 0.15)))


def q_force(frc, w=1.0):
    return _kernel(w * np.sum(np.square(frc), axis=-1) / 100.0)


def q_speed(spd, w=1.0):
    return _kernel(2.0 * w * np.sum(np.square(spd), axis=-1))


def q_velocity(desired, actual, w=1.0):
    return _kernel(2.0 * w * np.abs(np.asarray(desired) - np.asarray(actual)))


def q_orientation(quat_actual, quat_desired):
    dot = np.sum(np.asarray(quat_actual) * np.asarray(quat_desired), axis=-1)
    # clamp keeps rounding on unit quaternions from going negative
    return _kernel(3.0 * np.clip(1.0 - dot * dot, 0.0, None))


def q_action_diff(action, prev_action):
    return _kernel(5.0 * np.linalg.norm(np.asarray(action) - np.asarray(prev_action), axis=-1))


def q_torque(torques):
    return _kernel(0.05 * np.linalg.norm(torques, axis=-1))


def q_pelvis_acc(rot_vel, accel):
    return _kernel(0.10 * (np.linalg.norm(rot_vel, axis=-1) + np.linalg.norm(accel, axis=-1)))


def symmetry_error(pos_l, pos_r):
    """Squared foot separation in the horizontal (x, y) plane, m^2."""
    d = np.asarray(pos_l)[..., :2] - np.asarray(pos_r)[..., :2]
    return np.sum(d * d, axis=-1)


def hop_gate(offset_gap: float, corrected: bool = False) -> float:
    """exp(-5 |sin(2 pi dtheta)|); ``corrected`` uses sin(pi dtheta) instead.

    The printed gate is fully open at dtheta = 0.5 as well as 0; the corrected
    variant is open only when the offsets coincide.
    """
    arg = math.pi * offset_gap if corrected else 2.0 * math.pi * offset_gap
    return math.exp(-5.0 * abs(math.sin(arg)))


def _arrays_of(step: TrajectoryStep, cmd: Commands | None) -> dict:
    cmd = cmd or Commands()
    return {
        "frc_l": step.foot_force_left, "frc_r": step.foot_force_right,
        "spd_l": step.foot_speed_left, "spd_r": step.foot_speed_right,
        "pelvis_vel": step.pelvis_velocity, "quat": step.pelvis_orientation,
        "rot_vel": step.pelvis_rot_velocity, "accel": step.pelvis_acceleration,
        "action": step.action, "prev_action": step.prev_action,
        "torques": step.joint_torques, "pos_l": step.foot_position_left,
        "pos_r": step.foot_position_right, "cmd_x": cmd.xdot_desired,
        "cmd_y": cmd.ydot_desired, "cmd_quat": cmd.quat_desired,
    }


def _kernels(a, w):
    return {
        "q_frc_l": q_force(a["frc_l"], w),
        "q_spd_l": q_speed(a["spd_l"], w),
        "q_frc_r": q_force(a["frc_r"], w),
        "q_spd_r": q_speed(a["spd_r"], w),
        "q_xdot": q_velocity(a["cmd_x"], np.asarray(a["pelvis_vel"])[..., 0], w),
        "q_ydot": q_velocity(a["cmd_y"], np.asarray(a["pelvis_vel"])[..., 1], w),
        "q_orientation": q_orientation(a["quat"], a["cmd_quat"]),
        "q_action_diff": q_action_diff(a["action"], a["prev_action"]),
        "q_torque": q_torque(a["torques"]),
        "q_pelvis_acc": q_pelvis_acc(a["rot_vel"], a["accel"]),
    }


def _check_finite(step: TrajectoryStep, cmd: Commands | None):
    for name, v in _arrays_of(step, cmd).items():
        if not np.all(np.isfinite(v)):
            raise ValueError(f"{name}: non-finite value")


def measurement_kernels(step: TrajectoryStep, cmd: Commands | None = None,
                        omega: float = 1.0) -> dict[str, float]:
    """Every per-step measurement kernel, each in [0, 1)."""
    _check_finite(step, cmd)
    if not (0.0 <= omega <= 1.0):
        raise ValueError("omega must lie in [0, 1]")
    return {k: float(v) for k, v in _kernels(_arrays_of(step, cmd), omega).items()}


def bipedal_reward(spec: GaitSpec, phi: float, step: TrajectoryStep,
                   omega: float = 1.0) -> float:
    c = coeff_block(spec, phi)
    q = measurement_kernels(step, None, omega)
    return (c[0] * q["q_frc_l"] + c[1] * q["q_spd_l"]
            + c[2] * q["q_frc_r"] + c[3] * q["q_spd_r"])


def cmd_reward(step: TrajectoryStep, cmd: Commands, omega: float = 1.0) -> float:
    q = measurement_kernels(step, cmd, omega)
    return -(q["q_xdot"] + q["q_ydot"] + q["q_orientation"])


def smooth_reward(step: TrajectoryStep) -> float:
    q = measurement_kernels(step)
    return -(q["q_action_diff"] + q["q_torque"] + q["q_pelvis_acc"])


def hop_symmetry_cost(step: TrajectoryStep, spec: GaitSpec, corrected_gate: bool = False) -> float:
    err = symmetry_error(step.foot_position_left, step.foot_position_right)
    return float(_kernel(err * hop_gate(spec.offset_gap, corrected_gate)))


def standing_cost(step: TrajectoryStep, spec: GaitSpec | None = None) -> float:
    """1 - exp(-(err_sym + 20 q_action_diff)); gated by (omega - 1) when composed."""
    err = symmetry_error(step.foot_position_left, step.foot_position_right)
    qa = q_action_diff(step.action, step.prev_action)
    return float(_kernel(err + 20.0 * qa))


def multi_reward(spec: GaitSpec, phi: float, step: TrajectoryStep, cmd: Commands,
                 weights: RewardWeights = RewardWeights(), omega_value: float | None = None,
                 corrected_gate: bool = False) -> float:
    """Generic-policy reward including the standing and hop-symmetry terms."""
    w = omega(spec.swing_ratio) if omega_value is None else omega_value
    r_bip = bipedal_reward(spec, phi, step, w)
    return (weights.w_bipedal * r_bip
            + weights.w_cmd * cmd_reward(step, cmd, w)
            + weights.w_smooth * smooth_reward(step)
            + weights.w_standing * (w - 1.0) * standing_cost(step, spec)
            - weights.w_hopsym * hop_symmetry_cost(step, spec, corrected_gate)
            + weights.beta)


def single_gait_reward(spec: GaitSpec, phi: float, step: TrajectoryStep, cmd: Commands,
                       beta: float = 1.0) -> float:
    return (bipedal_reward(spec, phi, step) + cmd_reward(step, cmd)
            + smooth_reward(step) + beta)


# ---------------------------------------------------------------- scoring

BREAKDOWN_COLUMNS = (
    "t", "phi", "omega", "c_frc_l", "c_spd_l", "c_frc_r", "c_spd_r",
    "q_frc_l", "q_spd_l", "q_frc_r", "q_spd_r", "q_xdot", "q_ydot", "q_orientation",
    "q_action_diff", "q_torque", "q_pelvis_acc", "hop_sym", "standing",
    "r_bipedal", "r_cmd", "r_smooth", "total",
)


_NOT_SUMMED = {"phi", "omega", "c_frc_l", "c_spd_l", "c_frc_r", "c_spd_r"}


@dataclass
class RewardBreakdown:
    columns: dict[str, np.ndarray]
    gamma: float
    mode: str

    @property
    def total(self) -> np.ndarray:
        return self.columns["total"]

    @property
    def undiscounted(self) -> float:
        return float(np.sum(self.total))

    @property
    def discounted(self) -> float:
        return discounted_sum(self.total, self.gamma)

    def __len__(self) -> int:
        return len(self.total)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(BREAKDOWN_COLUMNS)
        for i in range(len(self)):
            row = []
            for c in BREAKDOWN_COLUMNS:
                v = self.columns[c][i]
                row.append(int(v) if c == "t" else repr(float(v)))
            wr.writerow(row)
        sums = ["sum"] + ["" if c in _NOT_SUMMED else repr(float(np.sum(self.columns[c])))
                          for c in BREAKDOWN_COLUMNS[1:]]
        wr.writerow(sums)
        wr.writerow(["discounted", f"gamma={self.gamma!r}"] + [""] * (len(BREAKDOWN_COLUMNS) - 3)
                    + [repr(self.discounted)])
        return buf.getvalue()


def discounted_sum(rewards, gamma: float) -> float:
    r = np.asarray(rewards, dtype=float)
    if r.size == 0:
        return 0.0
    return float(np.sum(r * np.power(gamma, np.arange(r.size, dtype=float))))


def cycle_times(specs: Sequence[GaitSpec]) -> np.ndarray:
    """Cycle time of each step, advancing by 1/L of that step's spec."""
    n = len(specs)
    if n and all(s.period_steps == specs[0].period_steps for s in specs):
        L = specs[0].period_steps
        return (np.arange(n) % L) / L
    out = np.empty(n)
    phi = Fraction(0)
    for i, s in enumerate(specs):
        out[i] = float(phi)
        phi = (phi + Fraction(1, s.period_steps)) % 1
    return out


def score_trajectory(traj: Trajectory, spec: GaitSpec | Sequence[GaitSpec],
                     gamma: float = DEFAULT_GAMMA, mode: str = "single",
                     weights: RewardWeights | None = None,
                     commands: Commands | Sequence[Commands] | None = None,
                     corrected_gate: bool = False,
                     rng: np.random.Generator | None = None) -> RewardBreakdown:
    """Score every step of ``traj`` and accumulate the discounted return.

    ``spec`` is either one spec or a per-step schedule.  Commands default to
    the ones recorded in the trajectory.  Passing ``rng`` replaces expected
    phase coefficients with Bernoulli-sampled indicators.
    """
    if not (0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if mode not in ("single", "multi"):
        raise ValueError(f"unknown reward mode {mode!r}")
    n = len(traj)
    specs = [spec] * n if isinstance(spec, GaitSpec) else list(spec)
    if len(specs) != n:
        raise ValueError(f"schedule has {len(specs)} entries for {n} steps")
    weights = weights or RewardWeights()
    phis = cycle_times(specs)

    a = {k: getattr(traj, k) for k in _STEP_FIELDS}
    if commands is None:
        a.update(cmd_x=traj.cmd_x, cmd_y=traj.cmd_y, cmd_quat=traj.cmd_quat)
    else:
        cmds = [commands] * n if isinstance(commands, Commands) else list(commands)
        if len(cmds) != n:
            raise ValueError("commands schedule length mismatch")
        a.update(cmd_x=np.array([c.xdot_desired for c in cmds]),
                 cmd_y=np.array([c.ydot_desired for c in cmds]),
                 cmd_quat=np.array([c.quat_desired for c in cmds]).reshape(n, 4))

    if mode == "single":
        w = np.ones(n)
    else:
        w = np.array([omega(s.swing_ratio) for s in specs])

    coeffs = np.zeros((n, 4))
    if n:
        if rng is not None:
            if all(s is specs[0] or s == specs[0] for s in specs):
                coeffs = sampled_coeff_block(specs[0], phis, rng)
            else:
                for i, s in enumerate(specs):
                    coeffs[i] = sampled_coeff_block(s, phis[i:i + 1], rng)[0]
        elif all(s is specs[0] for s in specs):
            uniq, inverse = np.unique(phis, return_inverse=True)
            table = np.array([coeff_block(specs[0], float(p)) for p in uniq])
            coeffs = table[inverse.reshape(-1)]
        else:
            for i, (s, p) in enumerate(zip(specs, phis)):
                coeffs[i] = coeff_block(s, float(p))

    q = _kernels(a, w)
    cols = {"t": traj.t.astype(float), "phi": phis, "omega": w}
    for k, name in enumerate(("c_frc_l", "c_spd_l", "c_frc_r", "c_spd_r")):
        cols[name] = coeffs[:, k]
    cols.update(q)
    err = symmetry_error(a["pos_l"], a["pos_r"])
    gates = np.array([hop_gate(s.offset_gap, corrected_gate) for s in specs])
    cols["hop_sym"] = _kernel(err * gates)
    cols["standing"] = _kernel(err + 20.0 * q["q_action_diff"])
    cols["r_bipedal"] = (cols["c_frc_l"] * q["q_frc_l"] + cols["c_spd_l"] * q["q_spd_l"]
                         + cols["c_frc_r"] * q["q_frc_r"] + cols["c_spd_r"] * q["q_spd_r"])
    cols["r_cmd"] = -(q["q_xdot"] + q["q_ydot"] + q["q_orientation"])
    cols["r_smooth"] = -(q["q_action_diff"] + q["q_torque"] + q["q_pelvis_acc"])
    if mode == "single":
        cols["total"] = cols["r_bipedal"] + cols["r_cmd"] + cols["r_smooth"] + weights.beta
    else:
        cols["total"] = (weights.w_bipedal * cols["r_bipedal"]
                         + weights.w_cmd * cols["r_cmd"]
                         + weights.w_smooth * cols["r_smooth"]
                         + weights.w_standing * (w - 1.0) * cols["standing"]
                         - weights.w_hopsym * cols["hop_sym"]
                         + weights.beta)
    cols = {k: np.asarray(v, dtype=float).reshape(n) for k, v in cols.items()}
    return RewardBreakdown(cols, gamma, mode)


# ---------------------------------------------------------------- record IO

RECORD_FIELDS = {
    # record key: expected length (None = any)
    "t": 0, "frc_l": 3, "frc_r": 3, "spd_l": 3, "spd_r": 3, "pelvis_vel": 2,
    "quat": 4, "rot_vel": 3, "accel": 3, "action": None, "torques": None,
    "pos_l": 3, "pos_r": 3, "cmd_x": 0, "cmd_y": 0, "cmd_quat": 4,
}
OPTIONAL_FIELDS = {"prev_action": None}


def _parse_field(rec: dict, key: str, size, line: int):
    v = rec[key]
    if size == 0:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise TrajectoryFormatError(line, f"field {key!r} must be a number")
        if not math.isfinite(v):
            raise TrajectoryFormatError(line, f"field {key!r} is not finite")
        return v
    if not isinstance(v, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        raise TrajectoryFormatError(line, f"field {key!r} must be an array of numbers")
    arr = np.array(v, dtype=float)
    if size is not None and arr.size != size:
        raise TrajectoryFormatError(line, f"field {key!r} needs {size} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise TrajectoryFormatError(line, f"field {key!r} has a non-finite value")
    return arr


def _unit_quat(q, key: str, line: int):
    norm = float(np.linalg.norm(q))
    if abs(norm - 1.0) > INGEST_QUAT_TOL:
        raise TrajectoryFormatError(line, f"field {key!r} has norm {norm:.6g}, expected 1")
    return q / norm


def ingest_trajectory(lines: Iterable[str]) -> Trajectory:
    """Parse line-delimited JSON records into a :class:`Trajectory`."""
    steps, cmds = [], []
    prev = None
    warned = set()
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as e:
            raise TrajectoryFormatError(lineno, f"invalid JSON ({e.msg})") from None
        if not isinstance(rec, dict):
            raise TrajectoryFormatError(lineno, "record must be a JSON object")
        missing = [k for k in RECORD_FIELDS if k not in rec]
        if missing:
            raise TrajectoryFormatError(lineno, f"missing field(s): {', '.join(missing)}")
        for k in sorted(set(rec) - set(RECORD_FIELDS) - set(OPTIONAL_FIELDS)):
            if k not in warned:
                log.warning("line %d: ignoring unknown field %r", lineno, k)
                warned.add(k)
        v = {k: _parse_field(rec, k, n, lineno) for k, n in RECORD_FIELDS.items()}
        if isinstance(v["t"], float) and not v["t"].is_integer():
            raise TrajectoryFormatError(lineno, "field 't' must be an integer")
        if "prev_action" in rec:
            prev_action = _parse_field(rec, "prev_action", None, lineno)
        else:
            prev_action = prev if prev is not None else np.zeros_like(v["action"])
        if prev_action.shape != v["action"].shape:
            raise TrajectoryFormatError(lineno, "prev_action and action differ in length")
        quat = _unit_quat(v["quat"], "quat", lineno)
        cmd_quat = _unit_quat(v["cmd_quat"], "cmd_quat", lineno)
        steps.append(TrajectoryStep(
            v["frc_l"], v["frc_r"], v["spd_l"], v["spd_r"], v["pelvis_vel"], quat,
            v["rot_vel"], v["accel"], v["action"], prev_action, v["torques"],
            v["pos_l"], v["pos_r"], int(v["t"])))
        cmds.append(Commands(float(v["cmd_x"]), float(v["cmd_y"]), cmd_quat))
        prev = v["action"]
    if not steps:
        return Trajectory.empty()
    return Trajectory.from_steps(steps, cmds)


def _floats(a) -> list[float]:
    return [float(x) for x in np.asarray(a).reshape(-1)]


def emit_trajectory(traj: Trajectory) -> str:
    """Serialize to line-delimited JSON; floats round-trip exactly."""
    out = []
    for i in range(len(traj)):
        rec = {"t": int(traj.t[i])}
        for col in ("frc_l", "frc_r", "spd_l", "spd_r", "pelvis_vel", "quat", "rot_vel",
                    "accel", "action", "prev_action", "torques", "pos_l", "pos_r"):
            rec[col] = _floats(getattr(traj, col)[i])
        rec["cmd_x"] = float(traj.cmd_x[i])
        rec["cmd_y"] = float(traj.cmd_y[i])
        rec["cmd_quat"] = _floats(traj.cmd_quat[i])
        out.append(json.dumps(rec))
    return "".join(line + "\n" for line in out)
