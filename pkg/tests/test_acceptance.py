"""Acceptance suite: one recorded pass/fail line per criterion."""

import math
import time

import numpy as np
from click.testing import CliRunner

from gaitreward.cli import coefficient_table, main
from gaitreward.gait_search import contact_pattern, grf_coefficient_report, swing_stance_grf
from gaitreward.gait_spec import coeff_expectation, library_gait
from gaitreward.phase_math import (IndicatorDistribution, VonMisesParams, indicator_expectation,
                                   verify_indicator, von_mises_cdf)
from gaitreward.reward_engine import (Commands, TrajectoryStep, measurement_kernels, multi_reward,
                                      omega, q_action_diff, q_force, q_orientation, q_pelvis_acc,
                                      q_speed, q_torque, q_velocity, score_trajectory)
from gaitreward.toy_env import (RANDOMIZATION_RANGES, PolicyParams, draw_randomization, rollout,
                                synthetic_contact_trajectory)

from conftest import TRAIN_SEEDS
from test_reward_engine import oracle_multi, random_cmd, random_step


def test_c1_indicator_matches_monte_carlo(criterion):
    t0 = time.perf_counter()
    recs = verify_indicator(kappas=(8.0, 16.0, 64.0), grid=64, samples=10**6, seed=0)
    dt = time.perf_counter() - t0
    worst = max(r["max_abs_error"] for r in recs)
    criterion(1, "analytic E[I] vs Monte Carlo, 64 phi x 3 kappa x 3 intervals",
              len(recs) == 9 and worst < 5e-3 and dt < 60,
              f"max |err| {worst:.2e} < 5e-3, {dt:.1f} s < 60 s")


def test_c2_cdf_symmetry_branches_rotation(criterion):
    rng = np.random.default_rng(0)
    worst_mid = worst_end = worst_rot = 0.0
    for _ in range(200):
        p = VonMisesParams(rng.uniform(0, 2 * math.pi), rng.uniform(0.5, 500))
        worst_mid = max(worst_mid, abs(von_mises_cdf(p.mean, p) - 0.5))
        worst_end = max(worst_end, abs(von_mises_cdf(p.mean - math.pi, p)),
                        abs(von_mises_cdf(p.mean + math.pi, p) - 1.0))
    for _ in range(500):
        a, length, delta, phi = rng.random(), rng.uniform(0.05, 0.95), rng.random(), rng.random()
        kappa = rng.uniform(1, 200)
        base = IndicatorDistribution.from_cycle(a, a + length, kappa)
        moved = IndicatorDistribution.from_cycle(a + delta, a + length + delta, kappa)
        worst_rot = max(worst_rot, abs(indicator_expectation(phi, base)
                                       - indicator_expectation(phi + delta, moved)))
    criterion(2, "Von Mises CDF symmetry, branch ends, rotation equivariance",
              max(worst_mid, worst_end, worst_rot) <= 1e-9,
              f"mean {worst_mid:.1e}, ends {worst_end:.1e}, rotation {worst_rot:.1e}; tol 1e-9")


def _table(spec):
    rows = coefficient_table(spec).splitlines()[1:]
    return np.array([[float(x) for x in r.split(",")] for r in rows])


def test_c3_coefficient_curves(criterion):
    walk = _table(library_gait("walk"))
    shift = float(np.max(np.abs(walk[:, 1] - np.roll(walk[:, 2], -256))))
    hop = _table(library_gait("hop"))
    hop_same = bool(np.array_equal(hop[:, 1], hop[:, 2]) and np.array_equal(hop[:, 3], hop[:, 4]))
    skip_phases = len(library_gait("skip").phases)
    crisp_spec = library_gait("walk", kappa=1e4)
    crisp_err = 0.0
    for phi in np.linspace(0, 1, 512, endpoint=False):
        if min(phi, abs(phi - 0.4), 1 - phi) < 0.01:
            continue
        ideal = -1.0 if phi < 0.4 else 0.0
        crisp_err = max(crisp_err, abs(coeff_expectation(crisp_spec, "force", "left", phi) - ideal))
    criterion(3, "walk half-period shift, hop identity, skip phases, crisp limit",
              shift < 1e-6 and hop_same and skip_phases == 4 and crisp_err <= 1e-3,
              f"shift {shift:.1e} < 1e-6, hop identical {hop_same}, skip {skip_phases} phases, "
              f"crisp {crisp_err:.1e} <= 1e-3")


def _rotation(angle):
    return np.array([math.cos(angle / 2), 0.0, 0.0, math.sin(angle / 2)])


def test_c4_kernels(criterion):
    rng = np.random.default_rng(1)
    ref = np.array([1.0, 0, 0, 0])
    zero = measurement_kernels(TrajectoryStep.zero(), Commands())
    zero_ok = all(v == 0.0 for v in zero.values())
    checks = {
        "frc": lambda v, s: (q_force(v), q_force(s * v)),
        "spd": lambda v, s: (q_speed(v), q_speed(s * v)),
        "vel": lambda v, s: (q_velocity(v[0], v[0] + v[1]), q_velocity(v[0], v[0] + s * v[1])),
        "orient": lambda v, s: (q_orientation(_rotation(abs(v[0]) % math.pi / s), ref),
                                q_orientation(_rotation(abs(v[0]) % math.pi), ref)),
        "action": lambda v, s: (q_action_diff(v, np.zeros(3)), q_action_diff(s * v, np.zeros(3))),
        "torque": lambda v, s: (q_torque(v), q_torque(s * v)),
        "pelvis": lambda v, s: (q_pelvis_acc(v, v[::-1]), q_pelvis_acc(s * v, s * v[::-1])),
    }
    bad = []
    for name, f in checks.items():
        for _ in range(1000):
            v = rng.normal(0, rng.choice([0.01, 1, 30]), 3)
            lo, hi = f(v, 1.0 + rng.exponential())
            # saturated kernels round to exactly 1.0 in double precision
            if not (0.0 <= lo <= hi <= 1.0):
                bad.append(name)
                break
    gated = []
    for _ in range(1000):
        v = rng.normal(0, 50, 3)
        gated += [q_force(v, 0.0), q_speed(v, 0.0), q_velocity(v[0], v[1], 0.0)]
    gate_ok = all(g == 0.0 for g in gated)
    mid = abs(omega(0.15) - 0.5)
    criterion(4, "kernel zeros, monotonicity, omega gating, omega(0.15)",
              zero_ok and not bad and gate_ok and mid <= 1e-12,
              f"zero {zero_ok}, non-monotone {bad or 'none'} over 1000 draws each, "
              f"gated {gate_ok}, |omega(0.15)-0.5| {mid:.0e}")


def test_c5_multi_recomposition(criterion):
    rng = np.random.default_rng(2)
    names = ("walk", "run", "hop", "gallop", "skip", "stand")
    worst = 0.0
    for i in range(1000):
        spec = library_gait(names[i % len(names)])
        s, c, phi = random_step(rng), random_cmd(rng), rng.random()
        worst = max(worst, abs(multi_reward(spec, phi, s, c) - oracle_multi(spec, phi, s, c)))
    bias = multi_reward(library_gait("walk"), 0.3, TrajectoryStep.zero(), Commands())
    criterion(5, "multi reward vs term-by-term oracle, zero-cost bias",
              worst <= 1e-9 and bias == 1.0, f"max |diff| {worst:.1e} <= 1e-9, bias {bias!r}")


def test_c6_linearity_of_expectation(criterion):
    spec = library_gait("walk")
    pol = PolicyParams(np.random.default_rng(6).normal(0, 0.1, 32))
    traj = rollout(pol, spec, horizon=50, seed=6)
    exact = score_trajectory(traj, spec).discounted
    draws = np.array([score_trajectory(traj, spec, rng=np.random.default_rng(s)).discounted
                      for s in range(10_000)])
    se = draws.std(ddof=1) / math.sqrt(draws.size)
    gap = abs(draws.mean() - exact)
    criterion(6, "sampled-indicator return averages to the analytic return",
              len(traj) == 50 and gap <= 3 * se,
              f"|mean - analytic| {gap:.4f} <= 3 SE {3 * se:.4f}")


def test_c7_gait_discrimination(criterion):
    t0 = time.perf_counter()
    margins = {}
    for name in ("walk", "run", "hop"):
        spec = library_gait(name)
        good = score_trajectory(synthetic_contact_trajectory(spec, 280), spec)
        bad = score_trajectory(synthetic_contact_trajectory(spec, 280, 0.25), spec)
        margins[name] = float(good.columns["r_bipedal"].sum() - bad.columns["r_bipedal"].sum())
    dt = time.perf_counter() - t0
    detail = ", ".join(f"{k} margin {v:.2f}" for k, v in margins.items())
    criterion(7, "aligned contacts outscore 0.25-shifted contacts",
              all(m > 0 for m in margins.values()) and dt < 10, f"{detail}; {dt:.2f} s")


def test_c8_randomization(criterion):
    draws = [draw_randomization(s) for s in range(10_000)]
    in_range, worst = True, 0.0
    for name, (lo, hi) in RANDOMIZATION_RANGES.items():
        v = np.array([getattr(d, name) for d in draws])
        in_range &= bool(lo <= v.min() and v.max() <= hi)
        worst = max(worst, abs(v.mean() - (lo + hi) / 2) / (hi - lo))
    criterion(8, "randomization ranges and midpoints",
              in_range and worst <= 0.01,
              f"all in range {in_range}, worst mean offset {100 * worst:.2f}% of width <= 1%")


def _gait_outcome(trained, gait, seed):
    spec, res, traj = trained.get(gait, seed)
    if traj.terminated or len(traj) < 3 * spec.period_steps:
        return False, "fell"
    pat = contact_pattern(traj, spec.period_steps, warmup_cycles=1)
    swing, stance = swing_stance_grf(grf_coefficient_report(traj, spec, warmup_cycles=1))
    diff = pat.phase_difference
    target = (diff < 0.1) if gait == "hop" else (abs(diff - 0.5) <= 0.1)
    grf_ok = stance > 0 and swing * 5 <= stance
    return bool(target and grf_ok), f"dphi {diff:.3f}, swing/stance GRF {swing:.1f}/{stance:.0f}"


def _behaviour(trained, criterion, gait, requirement):
    t0 = time.perf_counter()
    results = [_gait_outcome(trained, gait, s) for s in TRAIN_SEEDS]
    minutes = (time.perf_counter() - t0) / 60
    passed = sum(ok for ok, _ in results)
    detail = "; ".join(f"seed {s}: {'ok' if ok else 'no'} {d}"
                       for s, (ok, d) in zip(TRAIN_SEEDS, results))
    criterion(9, f"{gait}: {requirement} and deep-swing GRF 5x below stance, >= 3/5 seeds",
              passed >= 3 and minutes < 15,
              f"{passed}/5 seeds, {minutes:.1f} min; {detail}")


def test_c9_hop_behaviour(trained, criterion):
    _behaviour(trained, criterion, "hop", "phase difference < 0.1")


def test_c9_walk_behaviour(trained, criterion):
    _behaviour(trained, criterion, "walk", "phase difference 0.5 +- 0.1")


def test_c10_determinism(criterion, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()
    runs = {
        "verify": ["verify", "--out", "{d}/verify.txt"],
        "train": ["train", "--gait", "walk", "--generations", "3", "--population", "8",
                  "--parents", "2", "--out", "{d}/train"],
        "rollout": ["rollout", "--gait", "walk", "--seed", "3", "--randomize",
                    "--out", "{d}/traj.jsonl"],
    }
    same = {}
    for name, args in runs.items():
        for d in ("a", "b"):
            (tmp_path / d).mkdir(exist_ok=True)
            res = runner.invoke(main, [a.format(d=d) for a in args])
            assert res.exit_code == 0, res.output
        files = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*")
                       if p.is_file())
        same[name] = bool(files) and all(
            (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes() for f in files)
    criterion(10, "verify/train/rollout outputs byte-identical across runs", all(same.values()),
              ", ".join(f"{k} {v}" for k, v in same.items()))
