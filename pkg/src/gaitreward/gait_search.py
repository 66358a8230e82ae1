"""Evolution-strategy search over periodic foot-target policies.

The fitness of a policy is the discounted return of the composed gait
reward on the toy biped, averaged over a few randomized rollouts.  The
helpers at the bottom turn a rollout into the contact statistics used to
check that the optimized motion matches the requested gait.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .gait_spec import GaitSpec, coeff_expectation
from .reward_engine import Commands, Trajectory, score_trajectory
from .toy_env import G, N_POLICY, BodyParams, PolicyParams, SimulationDiverged, rollout

__all__ = [
    "ESConfig", "PolicyParams", "ContactPattern", "SearchResult", "evaluate",
    "optimize", "contact_pattern", "grf_coefficient_report", "episode_seeds",
]

CONTACT_THRESHOLD = 0.05  # fraction of body weight
N_BINS = 32
SIGMA_DECAY = 0.97


@dataclass(frozen=True)
class ESConfig:
    population: int = 32
    parents: int = 8
    sigma0: float = 0.1
    generations: int = 200
    horizon: int = 240
    episodes: int = 4
    seed: int = 0
    gamma: float = 0.99
    reward_mode: str = "multi"
    randomize: bool = True

    def __post_init__(self):
        if not (1 <= self.parents < self.population):
            raise ValueError("need 1 <= parents < population")
        if not self.sigma0 > 0:
            raise ValueError("sigma0 must be > 0")
        if self.generations < 0 or self.horizon < 1 or self.episodes < 1:
            raise ValueError("generations >= 0, horizon >= 1 and episodes >= 1 required")


def episode_seeds(cfg: ESConfig, generation: int) -> list[int]:
    """Rollout seeds shared by every candidate of one generation."""
    ss = np.random.SeedSequence([cfg.seed, generation])
    return [int(x) for x in ss.generate_state(cfg.episodes)]


def episode_return(params: PolicyParams, spec: GaitSpec, cmd: Commands, cfg: ESConfig,
                   seed: int) -> float:
    try:
        traj = rollout(params, spec, cmd, cfg.horizon, seed=seed, randomize=cfg.randomize)
    except SimulationDiverged:
        return 0.0
    return score_trajectory(traj, spec, cfg.gamma, cfg.reward_mode).discounted


def evaluate(params: PolicyParams, spec: GaitSpec, cmd: Commands | None = None,
             cfg: ESConfig = ESConfig(), seeds: list[int] | None = None) -> float:
    """Mean discounted return over ``cfg.episodes`` seeded rollouts."""
    cmd = cmd or Commands()
    seeds = episode_seeds(cfg, 0) if seeds is None else seeds
    return math.fsum(episode_return(params, spec, cmd, cfg, s) for s in seeds) / len(seeds)


@dataclass
class SearchResult:
    best: PolicyParams
    best_fitness: float
    history: list[dict] = field(default_factory=list)

    def history_csv(self) -> str:
        buf = io.StringIO()
        cols = ["generation", "best", "mean", "best_ever", "sigma"]
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(cols)
        for row in self.history:
            wr.writerow([row["generation"]] + [repr(float(row[c])) for c in cols[1:]])
        return buf.getvalue()


def recombination_weights(mu: int) -> np.ndarray:
    w = np.log(mu + 0.5) - np.log(np.arange(1, mu + 1))
    return w / w.sum()


def optimize(spec: GaitSpec, cmd: Commands | None = None, cfg: ESConfig = ESConfig(),
             initial: PolicyParams | None = None, progress=None) -> SearchResult:
    """(mu, lambda) evolution strategy with log-rank recombination.

    The search mean is scored alongside the sampled population each
    generation and competes for best-ever.  Generation 0 scores the initial
    parameters alone.
    """
    cmd = cmd or Commands()
    mean = (initial or PolicyParams()).vector.copy()
    rng = np.random.default_rng(cfg.seed)
    weights = recombination_weights(cfg.parents)
    sigma = cfg.sigma0

    f0 = evaluate(PolicyParams(mean), spec, cmd, cfg, episode_seeds(cfg, 0))
    best, best_f = mean.copy(), f0
    history = [dict(generation=0, best=f0, mean=f0, best_ever=f0, sigma=sigma)]
    for gen in range(1, cfg.generations + 1):
        seeds = episode_seeds(cfg, gen)
        cand = mean + sigma * rng.standard_normal((cfg.population, N_POLICY))
        fit = np.array([evaluate(PolicyParams(x), spec, cmd, cfg, seeds) for x in cand])
        f_mean = evaluate(PolicyParams(mean), spec, cmd, cfg, seeds)
        order = np.argsort(-fit, kind="stable")
        if fit[order[0]] > best_f:
            best, best_f = cand[order[0]].copy(), float(fit[order[0]])
        if f_mean > best_f:
            best, best_f = mean.copy(), f_mean
        mean = weights @ cand[order[:cfg.parents]]
        history.append(dict(generation=gen, best=float(fit[order[0]]),
                            mean=float(fit.mean()), best_ever=best_f, sigma=sigma))
        sigma *= SIGMA_DECAY
        if progress is not None:
            progress(history[-1])
    return SearchResult(PolicyParams(best), best_f, history)


# ---------------------------------------------------------------- contact analysis

@dataclass(frozen=True)
class ContactPattern:
    duty_left: float
    duty_right: float
    phase_difference: float
    flight_fraction: float


def _contacts(traj: Trajectory, body_weight: float | None) -> np.ndarray:
    fz = np.stack([traj.frc_l[:, 2], traj.frc_r[:, 2]], axis=1)
    if body_weight is None:
        body_weight = BodyParams().total_mass * G
    return fz > CONTACT_THRESHOLD * body_weight


def _check_span(traj: Trajectory, period: int):
    if len(traj) < 2 * period:
        raise ValueError(f"trajectory has {len(traj)} steps; need at least two cycles "
                         f"({2 * period})")


def contact_pattern(traj: Trajectory, period: int, body_weight: float | None = None,
                    warmup_cycles: int = 0) -> ContactPattern:
    """Duty factors, inter-foot phase difference and flight fraction.

    Only whole cycles after ``warmup_cycles`` are used.  The phase
    difference is the circular distance between the two feet's mean
    touchdown phases, folded into [0, 0.5]; it is NaN when a foot never
    touches down.
    """
    start = warmup_cycles * period
    n_cycles = (len(traj) - start) // period
    _check_span(traj.slice(start, len(traj)), period)
    on = _contacts(traj, body_weight)[start:start + n_cycles * period]
    duty = on.reshape(n_cycles, period, 2).mean(axis=1).mean(axis=0)
    flight = float(np.mean(~on[:, 0] & ~on[:, 1]))
    onset_phase = []
    for f in range(2):
        c = on[:, f]
        steps = np.nonzero(c[1:] & ~c[:-1])[0] + 1 + start
        if steps.size == 0:
            onset_phase.append(math.nan)
            continue
        ang = 2 * math.pi * (steps % period) / period
        onset_phase.append(math.atan2(np.sin(ang).mean(), np.cos(ang).mean()) / (2 * math.pi))
    diff = abs(onset_phase[0] - onset_phase[1]) % 1.0
    diff = min(diff, 1.0 - diff)
    return ContactPattern(float(duty[0]), float(duty[1]), float(diff), flight)


@dataclass
class GRFRow:
    bin: int
    phi: float
    foot: str
    coeff_frc: float
    mean_grf: float
    count: int


def grf_coefficient_report(traj: Trajectory, spec: GaitSpec, n_bins: int = N_BINS,
                           warmup_cycles: int = 0) -> list[GRFRow]:
    """Mean vertical GRF per cycle-time bin next to E[C_frc] at the bin centre."""
    L = spec.period_steps
    start = warmup_cycles * L
    _check_span(traj.slice(start, len(traj)), L)
    t = np.arange(start, len(traj))
    phi = (t % L) / L
    bins = np.minimum((phi * n_bins).astype(int), n_bins - 1)
    rows = []
    for foot, frc in (("left", traj.frc_l), ("right", traj.frc_r)):
        fz = frc[start:, 2]
        for b in range(n_bins):
            centre = (b + 0.5) / n_bins
            sel = bins == b
            n = int(sel.sum())
            rows.append(GRFRow(b, centre, foot, coeff_expectation(spec, "force", foot, centre),
                               float(fz[sel].mean()) if n else math.nan, n))
    return rows


def grf_report_csv(rows: list[GRFRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["bin", "phi", "foot", "coeff_frc", "mean_grf", "count"])
    for r in rows:
        wr.writerow([r.bin, repr(r.phi), r.foot, repr(r.coeff_frc), repr(r.mean_grf), r.count])
    return buf.getvalue()


def swing_stance_grf(rows: list[GRFRow], swing_at: float = -0.9,
                     stance_at: float = -0.1) -> tuple[float, float]:
    """Mean GRF over deep-swing bins and over deep-stance bins (both feet)."""
    swing = [r.mean_grf for r in rows if r.count and r.coeff_frc <= swing_at]
    stance = [r.mean_grf for r in rows if r.count and r.coeff_frc >= stance_at]
    return (float(np.mean(swing)) if swing else math.nan,
            float(np.mean(stance)) if stance else math.nan)
