import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaitreward.gait_spec import library_gait
from gaitreward.reward_engine import Commands, score_trajectory
from gaitreward.toy_env import (G, LZ, PZ, RANDOMIZATION_RANGES, RZ, BodyParams, ContactParams,
                                PolicyParams, RandomizationConfig, ToyAction, ToyBiped,
                                contact_force, draw_randomization, make_params, reset, rollout,
                                step, synthetic_contact_trajectory)

PARAMS = make_params(BodyParams(), ContactParams(), RandomizationConfig())


def test_reset_nominal():
    env, cfg = reset(seed=3, randomize=False)
    assert cfg == RandomizationConfig()
    assert cfg.damping_scale == cfg.mass_scale == 1.0
    assert cfg.ground_friction == 0.8 and cfg.ground_slope == 0.0
    assert env.state.pelvis_z == pytest.approx(0.9)
    assert env.state.contact() == (True, True)


def test_reset_seeded():
    assert reset(5, True)[1] == reset(5, True)[1]
    assert reset(5, True)[1] != reset(6, True)[1]


def test_randomization_ranges():
    draws = [draw_randomization(s) for s in range(10_000)]
    for name, (lo, hi) in RANDOMIZATION_RANGES.items():
        v = np.array([getattr(d, name) for d in draws])
        assert lo <= v.min() and v.max() <= hi
    assert np.mean([d.mass_scale for d in draws]) == pytest.approx(1.0, abs=0.01)
    assert all(d.in_ranges() for d in draws[:100])


def test_rate_jitter():
    rates = [draw_randomization(s, rate_jitter=True).rate_scale for s in range(500)]
    assert 0.9 <= min(rates) and max(rates) <= 1.1 and np.std(rates) > 0.01
    assert draw_randomization(1).rate_scale == 1.0


def test_static_load_after_one_second():
    env, _ = reset()
    for _ in range(40):
        s = env.step(ToyAction())
    half = BodyParams().total_mass * G / 2
    assert s.foot_force_left[2] == pytest.approx(half, rel=0.02)
    assert s.foot_force_right[2] == pytest.approx(half, rel=0.02)


def test_lifted_foot_has_no_force():
    assert contact_force(0.0, 0.01, 0.3, -1.0, PARAMS) == (0.0, 0.0, 0.0, -0.01)


@given(st.floats(-1, 1), st.floats(-0.05, 0.05), st.floats(-5, 5), st.floats(-5, 5),
       st.floats(0.35, 1.1), st.floats(-0.03, 0.03))
def test_contact_consistency(x, z, vx, vz, mu, slope):
    p = make_params(BodyParams(), ContactParams(),
                    RandomizationConfig(ground_friction=mu, ground_slope=slope))
    fx, fz, fn, pen = contact_force(x, z, vx, vz, p)
    if fn > 0:
        assert pen > 0
    # tangential component of the returned force
    ft = fx * math.cos(slope) + fz * math.sin(slope)
    assert abs(ft) <= mu * fn + 1e-9
    assert fn >= 0


def test_drop_apexes_decay():
    env, _ = reset()
    env.state.vector[[PZ, LZ, RZ]] += 0.05
    z = [env.state.pelvis_z]
    for _ in range(160):
        env.step(ToyAction())
        z.append(env.state.pelvis_z)
    z = np.array(z)
    apex = [z[0]] + [z[i] for i in range(1, len(z) - 1) if z[i] >= z[i - 1] and z[i] > z[i + 1]]
    assert len(apex) >= 3
    assert np.all(np.diff(apex) < 0)


def test_workspace_clamp():
    env = ToyBiped()
    a = env.action_vector(ToyAction(dx_left=3.0, dz_left=0.0, stiff_left=9.0,
                                    dx_right=-3.0, dz_right=-4.0, stiff_right=0.0))
    assert list(a) == [0.5, -0.2, 2.0, -0.5, -1.0, 0.5]


def test_functional_step_is_pure():
    env, cfg = reset()
    before = env.state.vector.copy()
    nxt, meas = step(env.state, ToyAction(dx_left=0.1), cfg)
    assert np.array_equal(env.state.vector, before)
    assert not np.array_equal(nxt.vector, before)
    assert nxt.time == pytest.approx(1 / 40)
    ref = ToyBiped()
    assert np.array_equal(ref.step(ToyAction(dx_left=0.1)).foot_force_left,
                          meas.foot_force_left)


def test_stand_equilibrium_rollout():
    traj = rollout(PolicyParams(), library_gait("stand"), horizon=240)
    assert len(traj) == 240 and not traj.terminated
    assert np.max(np.abs(traj.pelvis_vel)) < 1e-3
    assert np.min(traj.pos_l[:, 2]) >= -0.05 and np.min(traj.pos_r[:, 2]) >= -0.05


def test_measurements_populated():
    rng = np.random.default_rng(0)
    pol = PolicyParams(rng.normal(0, 0.05, 32))
    traj = rollout(pol, library_gait("walk"), horizon=60, seed=2, randomize=True)
    for name in ("frc_l", "frc_r", "spd_l", "spd_r", "accel", "torques", "pos_l", "pos_r",
                 "action", "quat", "rot_vel"):
        col = getattr(traj, name)
        assert np.all(np.isfinite(col))
        assert np.any(col != 0), name
    # planar model: lateral axis structurally zero
    assert np.all(traj.frc_l[:, 1] == 0) and np.all(traj.pelvis_vel[:, 1] == 0)
    assert np.array_equal(traj.prev_action[1:], traj.action[:-1])


def test_rollout_determinism_and_horizon():
    pol = PolicyParams(np.random.default_rng(1).normal(0, 0.1, 32))
    a = rollout(pol, library_gait("run"), horizon=80, seed=4, randomize=True)
    b = rollout(pol, library_gait("run"), horizon=80, seed=4, randomize=True)
    for name in ("frc_l", "pos_r", "quat", "action", "accel"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    assert len(rollout(pol, library_gait("run"), horizon=1)) == 1
    with pytest.raises(ValueError):
        rollout(pol, library_gait("run"), horizon=0)


def test_fall_terminates():
    pol = PolicyParams()
    pol.vector[[7, 21]] = 3.0  # drives the z targets toward the short end
    pol.vector[[30, 31]] = -0.5
    traj = rollout(pol, library_gait("hop"), horizon=240)
    assert traj.terminated and len(traj) < 240


def test_encoder_offset_only_affects_readings():
    base = ToyBiped()
    off = ToyBiped(config=RandomizationConfig(encoder_offset=0.04))
    for _ in range(10):
        a, b = base.step(), off.step()
    assert np.array_equal(base.state.vector, off.state.vector)
    assert not np.array_equal(a.pelvis_orientation, b.pelvis_orientation)
    assert np.array_equal(a.foot_force_left, b.foot_force_left)


def test_policy_text_round_trip():
    pol = PolicyParams(np.random.default_rng(2).normal(size=32))
    back = PolicyParams.from_text(pol.to_text())
    assert np.array_equal(back.vector, pol.vector)
    with pytest.raises(ValueError):
        PolicyParams.from_text("gain_vx 1.0\n")
    with pytest.raises(ValueError):
        PolicyParams(np.zeros(31))


def test_synthetic_patterns():
    hop = synthetic_contact_trajectory(library_gait("hop"), 56)
    assert np.array_equal(hop.frc_l, hop.frc_r)
    walk = library_gait("walk")
    tr = synthetic_contact_trajectory(walk, 56)
    loaded = tr.frc_l[:, 2] > 0
    assert loaded.mean() == pytest.approx(0.6, abs=1 / 28)
    assert np.all(tr.spd_l[loaded] == 0) and np.all(tr.spd_l[~loaded, 0] > 0)
    exact = score_trajectory(tr, walk).columns["r_bipedal"].sum()
    shifted = score_trajectory(synthetic_contact_trajectory(walk, 56, 0.25),
                               walk).columns["r_bipedal"].sum()
    assert exact > shifted
