"""Planar biped: a pitching pelvis and two point feet on spring-damper legs.

The pelvis carries two Cartesian PD "legs" anchored at a hip point below its
centre of mass.  Each leg pulls its point-mass foot toward a target offset
from the hip; the feet meet a (possibly sloped) ground plane through a
penalty contact with velocity-clamped Coulomb friction.  Physics runs at
40 substeps per control step (1 kHz at the default 40 Hz control rate).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .gait_spec import GaitSpec
from .reward_engine import Commands, Trajectory, TrajectoryStep

G = 9.81
CONTROL_DT = 1.0 / 40.0
SUBSTEPS = 40
FALL_HEIGHT = 0.4
MAX_PENETRATION = 0.05
N_ACTION = 6
N_TORQUE = 4

# per-rollout dynamics randomization ranges
RANDOMIZATION_RANGES = {
    "damping_scale": (0.3, 4.0),
    "mass_scale": (0.5, 1.5),
    "ground_friction": (0.35, 1.1),
    "ground_slope": (-0.03, 0.03),
    "encoder_offset": (-0.05, 0.05),
}
RATE_JITTER = 0.10

# state vector layout
PX, PZ, TH, VX, VZ, W = range(6)
LX, LZ, LVX, LVZ, RX, RZ, RVX, RVZ, TIME = range(6, 15)
N_STATE = 15

# measurement vector layout (one control step)
M_FRC_L, M_FRC_R = 0, 3
M_SPD_L, M_SPD_R = 6, 9
M_PVEL = 12          # (vx, vy)
M_QUAT = 14          # 4
M_ROT = 18
M_ACC = 21
M_TORQ = 24          # 4
M_POS_L, M_POS_R = 28, 31
N_MEAS = 34


class SimulationDiverged(RuntimeError):
    pass


@dataclass(frozen=True)
class ContactParams:
    stiffness: float = 3.0e4
    damping: float = 1.0e3
    tangential_damping: float = 800.0

    def __post_init__(self):
        if not (self.stiffness > 0 and self.damping > 0 and self.tangential_damping > 0):
            raise ValueError("contact stiffness and damping must be > 0")


@dataclass(frozen=True)
class BodyParams:
    pelvis_mass: float = 20.0
    foot_mass: float = 1.0
    pitch_inertia: float = 1.0
    hip_offset: float = 0.1
    leg_stiffness: float = 2000.0
    leg_damping: float = 100.0
    pitch_stiffness: float = 300.0
    pitch_damping: float = 30.0
    stand_height: float = 0.9

    @property
    def total_mass(self) -> float:
        return self.pelvis_mass + 2.0 * self.foot_mass


@dataclass(frozen=True)
class RandomizationConfig:
    damping_scale: float = 1.0
    mass_scale: float = 1.0
    ground_friction: float = 0.8
    ground_slope: float = 0.0
    encoder_offset: float = 0.0
    rate_scale: float = 1.0

    def in_ranges(self) -> bool:
        return all(lo <= getattr(self, k) <= hi for k, (lo, hi) in RANDOMIZATION_RANGES.items())


@dataclass(frozen=True)
class ToyAction:
    """Foot targets relative to the hip and per-leg stiffness scales."""

    dx_left: float = 0.0
    dz_left: float = float("nan")
    stiff_left: float = 1.0
    dx_right: float = 0.0
    dz_right: float = float("nan")
    stiff_right: float = 1.0


@dataclass
class ToyBipedState:
    vector: np.ndarray = field(default_factory=lambda: np.zeros(N_STATE))

    def __getattr__(self, name):
        idx = _STATE_NAMES.get(name)
        if idx is None:
            raise AttributeError(name)
        return float(self.vector[idx])

    @property
    def time(self) -> float:
        return float(self.vector[TIME])

    def contact(self, slope: float = 0.0) -> tuple[bool, bool]:
        v = self.vector
        return (_signed_height(v[LX], v[LZ], slope) < 0.0,
                _signed_height(v[RX], v[RZ], slope) < 0.0)


_STATE_NAMES = {"pelvis_x": PX, "pelvis_z": PZ, "pitch": TH, "pelvis_vx": VX,
                "pelvis_vz": VZ, "pitch_rate": W, "left_x": LX, "left_z": LZ,
                "left_vx": LVX, "left_vz": LVZ, "right_x": RX, "right_z": RZ,
                "right_vx": RVX, "right_vz": RVZ}


def _signed_height(x, z, slope):
    return -x * math.sin(slope) + z * math.cos(slope)


# ---------------------------------------------------------------- physics core

# parameter vector layout
(P_M, P_MF, P_J, P_H, P_KLEG, P_DLEG, P_KTH, P_DTH, P_KG, P_CG, P_CT, P_MU,
 P_SLOPE, P_DT, P_NSUB, P_ENC, P_DZ0) = range(17)
N_PARAM = 17


@njit(cache=True)
def contact_force(x, z, vx, vz, params):
    """Ground force on a point foot; returns (fx, fz, normal, penetration)."""
    s = math.sin(params[P_SLOPE])
    c = math.cos(params[P_SLOPE])
    pen = -(-x * s + z * c)
    if pen <= 0.0:
        return 0.0, 0.0, 0.0, pen
    vn = -vx * s + vz * c
    fn = params[P_KG] * pen - params[P_CG] * vn
    if fn <= 0.0:
        return 0.0, 0.0, 0.0, pen
    vt = vx * c + vz * s
    ft = -params[P_CT] * vt
    lim = params[P_MU] * fn
    if ft > lim:
        ft = lim
    elif ft < -lim:
        ft = -lim
    # n = (-s, c), t = (c, s)
    return -fn * s + ft * c, fn * c + ft * s, fn, pen


@njit(cache=True)
def _control_step(state, action, params, meas):
    """Advance one control step in place; fills ``meas``; False on divergence."""
    M = params[P_M]
    mf = params[P_MF]
    J = params[P_J]
    h = params[P_H]
    n_sub = int(params[P_NSUB])
    dt = params[P_DT] / n_sub
    vx0 = state[VX]
    vz0 = state[VZ]
    for k in range(N_MEAS):
        meas[k] = 0.0
    inv = 1.0 / n_sub
    for _ in range(n_sub):
        th = state[TH]
        sth = math.sin(th)
        cth = math.cos(th)
        rx = -h * sth
        rz = -h * cth
        hx = state[PX] + rx
        hz = state[PZ] + rz
        hvx = state[VX] - h * cth * state[W]
        hvz = state[VZ] + h * sth * state[W]
        fpx = 0.0
        fpz = -M * G
        tau = -params[P_KTH] * th - params[P_DTH] * state[W]
        for f in range(2):
            ix = LX + 4 * f
            ax_ = action[3 * f]
            az_ = action[3 * f + 1]
            k = params[P_KLEG] * action[3 * f + 2]
            d = params[P_DLEG]
            flx = k * (hx + ax_ - state[ix]) + d * (hvx - state[ix + 2])
            flz = k * (hz + az_ - state[ix + 1]) + d * (hvz - state[ix + 3])
            gx, gz, _, _ = contact_force(state[ix], state[ix + 1], state[ix + 2],
                                         state[ix + 3], params)
            state[ix + 2] += dt * (flx + gx) / mf
            state[ix + 3] += dt * ((flz + gz) / mf - G)
            state[ix] += dt * state[ix + 2]
            state[ix + 1] += dt * state[ix + 3]
            fpx -= flx
            fpz -= flz
            tau += rz * (-flx) - rx * (-flz)
            meas[M_FRC_L + 3 * f] += gx * inv
            meas[M_FRC_L + 3 * f + 2] += gz * inv
            meas[M_TORQ + 2 * f] += flx * inv
            meas[M_TORQ + 2 * f + 1] += flz * inv
        state[VX] += dt * fpx / M
        state[VZ] += dt * fpz / M
        state[W] += dt * tau / J
        state[PX] += dt * state[VX]
        state[PZ] += dt * state[VZ]
        state[TH] += dt * state[W]
    state[TIME] += params[P_DT]
    for k in range(N_STATE):
        if not math.isfinite(state[k]):
            return False

    # observed quantities: encoder offset biases pitch and leg angles only
    enc = params[P_ENC]
    th_obs = state[TH] + enc
    meas[M_SPD_L] = state[LVX]
    meas[M_SPD_L + 2] = state[LVZ]
    meas[M_SPD_R] = state[RVX]
    meas[M_SPD_R + 2] = state[RVZ]
    meas[M_PVEL] = state[VX]
    meas[M_PVEL + 1] = 0.0
    meas[M_QUAT] = math.cos(0.5 * th_obs)
    meas[M_QUAT + 2] = math.sin(0.5 * th_obs)
    meas[M_ROT + 1] = state[W]
    meas[M_ACC] = (state[VX] - vx0) / params[P_DT]
    meas[M_ACC + 2] = (state[VZ] - vz0) / params[P_DT]
    hx = state[PX] - h * math.sin(state[TH])
    hz = state[PZ] - h * math.cos(state[TH])
    ce = math.cos(enc)
    se = math.sin(enc)
    for f in range(2):
        ix = LX + 4 * f
        lx = state[ix] - hx
        lz = state[ix + 1] - hz
        meas[M_POS_L + 3 * f] = hx + ce * lx + se * lz
        meas[M_POS_L + 3 * f + 2] = hz - se * lx + ce * lz
    return True


@njit(cache=True)
def _policy_action(coef, t, L, theta_l, theta_r, vx, vz, dz0, out):
    """Truncated Fourier foot targets in each foot's clock angle."""
    nb = 7
    for f in range(2):
        theta = theta_l if f == 0 else theta_r
        psi = 2.0 * math.pi * ((t % L) / L + theta)
        base = 2 * nb * f
        dx = coef[base]
        dz = coef[base + nb]
        for k in range(1, 4):
            ck = math.cos(k * psi)
            sk = math.sin(k * psi)
            dx += coef[base + 2 * k - 1] * ck + coef[base + 2 * k] * sk
            dz += coef[base + nb + 2 * k - 1] * ck + coef[base + nb + 2 * k] * sk
        dx += coef[28] * vx
        dz += coef[29] * vz
        s = 1.0 + coef[30 + f]
        dx = min(max(dx, -0.5), 0.5)
        dz = min(max(dz0 + dz, -1.0), -0.2)
        s = min(max(s, 0.5), 2.0)
        out[3 * f] = dx
        out[3 * f + 1] = dz
        out[3 * f + 2] = s


@njit(cache=True)
def _rollout_kernel(coef, state, params, L, theta_l, theta_r, horizon, meas_out,
                    act_out, prev_out):
    """Closed-loop rollout; returns (steps written, fell, diverged)."""
    dz0 = params[P_DZ0]
    action = np.empty(6)
    prev = np.zeros(6)
    meas = np.empty(N_MEAS)
    for t in range(horizon):
        _policy_action(coef, t, L, theta_l, theta_r, state[VX], state[VZ], dz0, action)
        ok = _control_step(state, action, params, meas)
        if not ok:
            return t, False, True
        for k in range(N_MEAS):
            meas_out[t, k] = meas[k]
        for k in range(6):
            rel = action[k] - (dz0 if k % 3 == 1 else (1.0 if k % 3 == 2 else 0.0))
            act_out[t, k] = rel
            prev_out[t, k] = prev[k]
            prev[k] = rel
        if state[PZ] < FALL_HEIGHT:
            return t + 1, True, False
    return horizon, False, False


# ---------------------------------------------------------------- python API

@dataclass
class ToyBiped:
    """Environment instance; holds mutable state, so one per thread."""

    body: BodyParams = field(default_factory=BodyParams)
    contact: ContactParams = field(default_factory=ContactParams)
    config: RandomizationConfig = field(default_factory=RandomizationConfig)
    control_dt: float = CONTROL_DT

    def __post_init__(self):
        self.params = make_params(self.body, self.contact, self.config, self.control_dt)
        self.state = ToyBipedState(nominal_state(self.body, self.contact))
        self._prev_action = np.zeros(N_ACTION)
        self._t = 0

    @property
    def neutral_dz(self) -> float:
        return float(self.params[P_DZ0])

    def action_vector(self, action: ToyAction) -> np.ndarray:
        dz0 = self.neutral_dz
        a = np.array([action.dx_left, action.dz_left, action.stiff_left,
                      action.dx_right, action.dz_right, action.stiff_right], dtype=float)
        for i in (1, 4):
            if math.isnan(a[i]):
                a[i] = dz0
        a[[0, 3]] = np.clip(a[[0, 3]], -0.5, 0.5)
        a[[1, 4]] = np.clip(a[[1, 4]], -1.0, -0.2)
        a[[2, 5]] = np.clip(a[[2, 5]], 0.5, 2.0)
        return a

    def step(self, action: ToyAction | None = None,
             cmd: Commands | None = None) -> TrajectoryStep:
        a = self.action_vector(action or ToyAction())
        meas = np.empty(N_MEAS)
        if not _control_step(self.state.vector, a, self.params, meas):
            raise SimulationDiverged(f"non-finite state at t={self._t}")
        rel = a - np.array([0.0, self.neutral_dz, 1.0, 0.0, self.neutral_dz, 1.0])
        step = _step_from_meas(meas, rel, self._prev_action, self._t)
        self._prev_action = rel
        self._t += 1
        return step


def nominal_penetration(body: BodyParams, contact: ContactParams, mass_scale=1.0) -> float:
    load = (0.5 * body.pelvis_mass * mass_scale + body.foot_mass) * G
    return load / contact.stiffness


def neutral_leg_offset(body: BodyParams, contact: ContactParams) -> float:
    """Hip-to-foot target giving a standing pelvis height of ``stand_height``."""
    sag = 0.5 * body.pelvis_mass * G / body.leg_stiffness
    return -(body.stand_height - body.hip_offset + nominal_penetration(body, contact) + sag)


def make_params(body: BodyParams, contact: ContactParams, config: RandomizationConfig,
                control_dt: float = CONTROL_DT) -> np.ndarray:
    p = np.zeros(N_PARAM)
    p[P_M] = body.pelvis_mass * config.mass_scale
    p[P_MF] = body.foot_mass
    p[P_J] = body.pitch_inertia * config.mass_scale
    p[P_H] = body.hip_offset
    p[P_KLEG] = body.leg_stiffness
    p[P_DLEG] = body.leg_damping * config.damping_scale
    p[P_KTH] = body.pitch_stiffness
    p[P_DTH] = body.pitch_damping
    p[P_KG] = contact.stiffness
    p[P_CG] = contact.damping
    p[P_CT] = contact.tangential_damping
    p[P_MU] = config.ground_friction
    p[P_SLOPE] = config.ground_slope
    p[P_DT] = control_dt * config.rate_scale
    p[P_NSUB] = SUBSTEPS
    p[P_ENC] = config.encoder_offset
    p[P_DZ0] = neutral_leg_offset(body, contact)
    return p


def nominal_state(body: BodyParams, contact: ContactParams) -> np.ndarray:
    s = np.zeros(N_STATE)
    s[PZ] = body.stand_height
    foot_z = -nominal_penetration(body, contact)
    s[LZ] = foot_z
    s[RZ] = foot_z
    return s


def draw_randomization(seed: int, randomize: bool = True,
                       rate_jitter: bool = False) -> RandomizationConfig:
    if not randomize:
        return RandomizationConfig()
    rng = np.random.default_rng(seed)
    vals = {k: float(rng.uniform(lo, hi)) for k, (lo, hi) in RANDOMIZATION_RANGES.items()}
    if rate_jitter:
        vals["rate_scale"] = float(rng.uniform(1.0 - RATE_JITTER, 1.0 + RATE_JITTER))
    return RandomizationConfig(**vals)


def reset(seed: int = 0, randomize: bool = False, rate_jitter: bool = False,
          body: BodyParams | None = None,
          contact: ContactParams | None = None) -> tuple[ToyBiped, RandomizationConfig]:
    """Fresh environment standing at its nominal pose.

    With ``randomize`` the dynamics are drawn once from RANDOMIZATION_RANGES
    and held for the whole rollout.
    """
    config = draw_randomization(seed, randomize, rate_jitter)
    env = ToyBiped(body or BodyParams(), contact or ContactParams(), config)
    return env, config


def step(state: ToyBipedState, action: ToyAction, config: RandomizationConfig | None = None,
         control_dt: float = CONTROL_DT, body: BodyParams | None = None,
         contact: ContactParams | None = None) -> tuple[ToyBipedState, TrajectoryStep]:
    """Pure one-step transition; ``state`` is left untouched.

    ``prev_action`` in the returned measurement is zero since no history is
    carried; use :class:`ToyBiped` for consecutive steps.
    """
    env = ToyBiped(body or BodyParams(), contact or ContactParams(),
                   config or RandomizationConfig(), control_dt)
    env.state = ToyBipedState(state.vector.copy())
    env._t = int(round(state.time / control_dt))
    out = env.step(action)
    return env.state, out


def _step_from_meas(meas, action, prev_action, t) -> TrajectoryStep:
    return TrajectoryStep(
        foot_force_left=meas[M_FRC_L:M_FRC_L + 3], foot_force_right=meas[M_FRC_R:M_FRC_R + 3],
        foot_speed_left=meas[M_SPD_L:M_SPD_L + 3], foot_speed_right=meas[M_SPD_R:M_SPD_R + 3],
        pelvis_velocity=meas[M_PVEL:M_PVEL + 2], pelvis_orientation=meas[M_QUAT:M_QUAT + 4],
        pelvis_rot_velocity=meas[M_ROT:M_ROT + 3], pelvis_acceleration=meas[M_ACC:M_ACC + 3],
        action=np.array(action), prev_action=np.array(prev_action),
        joint_torques=meas[M_TORQ:M_TORQ + 4], foot_position_left=meas[M_POS_L:M_POS_L + 3],
        foot_position_right=meas[M_POS_R:M_POS_R + 3], timestep=int(t))


# ---------------------------------------------------------------- policy

N_HARMONICS = 3
N_POLICY = 2 * 2 * (1 + 2 * N_HARMONICS) + 2 + 2


@dataclass
class PolicyParams:
    """Flat 32-vector: per-foot Fourier targets, velocity gains, stiffness.

    Layout: left dx[7], left dz[7], right dx[7], right dz[7],
    gain_vx, gain_vz, stiff_left, stiff_right.  Fourier terms are ordered
    constant, then (cos k, sin k) for k = 1..3, in the foot's clock angle.
    """

    vector: np.ndarray = field(default_factory=lambda: np.zeros(N_POLICY))

    def __post_init__(self):
        self.vector = np.asarray(self.vector, dtype=float).reshape(-1).copy()
        if self.vector.size != N_POLICY:
            raise ValueError(f"policy needs {N_POLICY} parameters, got {self.vector.size}")
        if not np.all(np.isfinite(self.vector)):
            raise ValueError("policy parameters must be finite")

    @staticmethod
    def names() -> list[str]:
        out = []
        for foot in ("left", "right"):
            for axis in ("dx", "dz"):
                out.append(f"{foot}_{axis}_c0")
                for k in range(1, N_HARMONICS + 1):
                    out += [f"{foot}_{axis}_cos{k}", f"{foot}_{axis}_sin{k}"]
        return out + ["gain_vx", "gain_vz", "stiff_left", "stiff_right"]

    def to_text(self) -> str:
        return "".join(f"{n} {v!r}\n" for n, v in zip(self.names(), self.vector.tolist()))

    @classmethod
    def from_text(cls, text: str) -> "PolicyParams":
        vals = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'name value'")
            vals[parts[0]] = float(parts[1])
        names = cls.names()
        missing = [n for n in names if n not in vals]
        if missing:
            raise ValueError(f"policy file missing: {', '.join(missing)}")
        return cls(np.array([vals[n] for n in names]))


def rollout(policy: PolicyParams, spec: GaitSpec, cmd: Commands | None = None,
            horizon: int = 240, seed: int = 0, randomize: bool = False,
            rate_jitter: bool = False, body: BodyParams | None = None,
            contact: ContactParams | None = None) -> Trajectory:
    """Run the periodic policy in closed loop for up to ``horizon`` steps.

    Stops early when the pelvis drops below the fall height; the returned
    trajectory's ``terminated`` flag records that.  Raises
    :class:`SimulationDiverged` only when not a single step completed.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    cmd = cmd or Commands()
    env, _ = reset(seed, randomize, rate_jitter, body, contact)
    meas = np.zeros((horizon, N_MEAS))
    act = np.zeros((horizon, N_ACTION))
    prev = np.zeros((horizon, N_ACTION))
    n, fell, diverged = _rollout_kernel(policy.vector, env.state.vector, env.params,
                                        spec.period_steps, spec.theta_left, spec.theta_right,
                                        horizon, meas, act, prev)
    if diverged and n == 0:
        raise SimulationDiverged("simulation diverged on the first step")
    return _trajectory_from_arrays(meas[:n], act[:n], prev[:n], cmd, fell or diverged)


def _trajectory_from_arrays(meas, act, prev, cmd: Commands, terminated: bool) -> Trajectory:
    n = len(meas)
    return Trajectory(
        t=np.arange(n, dtype=np.int64),
        frc_l=meas[:, M_FRC_L:M_FRC_L + 3].copy(), frc_r=meas[:, M_FRC_R:M_FRC_R + 3].copy(),
        spd_l=meas[:, M_SPD_L:M_SPD_L + 3].copy(), spd_r=meas[:, M_SPD_R:M_SPD_R + 3].copy(),
        pelvis_vel=meas[:, M_PVEL:M_PVEL + 2].copy(), quat=meas[:, M_QUAT:M_QUAT + 4].copy(),
        rot_vel=meas[:, M_ROT:M_ROT + 3].copy(), accel=meas[:, M_ACC:M_ACC + 3].copy(),
        action=act.copy(), prev_action=prev.copy(),
        torques=meas[:, M_TORQ:M_TORQ + 4].copy(),
        pos_l=meas[:, M_POS_L:M_POS_L + 3].copy(), pos_r=meas[:, M_POS_R:M_POS_R + 3].copy(),
        cmd_x=np.full(n, cmd.xdot_desired), cmd_y=np.full(n, cmd.ydot_desired),
        cmd_quat=np.tile(cmd.quat_desired, (n, 1)), terminated=terminated,
    )


def synthetic_contact_trajectory(spec: GaitSpec, horizon: int, delta: float = 0.0,
                                 body_weight: float | None = None,
                                 swing_speed: float = 1.0) -> Trajectory:
    """Kinematic trajectory whose contacts follow the spec's crisp windows.

    A foot is loaded while its (shifted) cycle time lies in a stance phase,
    sharing the body weight with the other stance foot; swing feet carry no
    force and move at ``swing_speed``.  ``delta`` shifts every contact
    window later by that many cycles.
    """
    if body_weight is None:
        body_weight = BodyParams().total_mass * G
    L = spec.period_steps
    bounds = np.cumsum((0.0,) + spec.ratios)
    stance = np.array([not p.is_swing for p in spec.phases])
    t = np.arange(horizon)
    phi = (t % L) / L
    in_stance = np.zeros((horizon, 2), dtype=bool)
    for f, theta in enumerate((spec.theta_left, spec.theta_right)):
        local = (phi + theta - delta) % 1.0
        idx = np.clip(np.searchsorted(bounds, local, side="right") - 1, 0, len(stance) - 1)
        in_stance[:, f] = stance[idx]
    n_loaded = in_stance.sum(axis=1)
    share = np.where(n_loaded > 0, body_weight / np.maximum(n_loaded, 1), 0.0)
    z = np.zeros((horizon, 3))
    frc = [z.copy(), z.copy()]
    spd = [z.copy(), z.copy()]
    for f in range(2):
        frc[f][:, 2] = np.where(in_stance[:, f], share, 0.0)
        spd[f][:, 0] = np.where(in_stance[:, f], 0.0, swing_speed)
    cmd = Commands()
    return Trajectory(
        t=t.astype(np.int64), frc_l=frc[0], frc_r=frc[1], spd_l=spd[0], spd_r=spd[1],
        pelvis_vel=np.zeros((horizon, 2)), quat=np.tile([1.0, 0.0, 0.0, 0.0], (horizon, 1)),
        rot_vel=z.copy(), accel=z.copy(), action=np.zeros((horizon, N_ACTION)),
        prev_action=np.zeros((horizon, N_ACTION)), torques=np.zeros((horizon, N_TORQUE)),
        pos_l=z.copy(), pos_r=z.copy(), cmd_x=np.zeros(horizon), cmd_y=np.zeros(horizon),
        cmd_quat=np.tile(cmd.quat_desired, (horizon, 1)),
    )
