"""``gait`` command line: inspect, score, verify, train and roll out gaits.

Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
"""

from __future__ import annotations

import csv
import io
import logging
import sys
from pathlib import Path

import click
import numpy as np
import yaml

from . import gait_search as gs
from .gait_spec import (LIBRARY, GaitSpec, SpecValidationError, coeff_expectation,
                        library_gait, spec_from_dict, validate)
from .phase_math import VERIFY_TOL, verify_indicator
from .reward_engine import (DEFAULT_GAMMA, Commands, TrajectoryFormatError, emit_trajectory,
                            ingest_trajectory, score_trajectory)
from .toy_env import PolicyParams, SimulationDiverged, rollout

MIN_VERIFY_SAMPLES = 10**5


class ValidationFailed(click.ClickException):
    exit_code = 2


def _fail_validation(errors):
    if len(errors) == 1:
        raise ValidationFailed(errors[0])
    raise ValidationFailed(f"{len(errors)} problems:\n" + "\n".join(f"  - {e}" for e in errors))


def spec_options(f):
    f = click.option("--theta-right", type=float, help="Right-foot cycle offset.")(f)
    f = click.option("--theta-left", type=float, help="Left-foot cycle offset.")(f)
    f = click.option("--period", type=int, help="Timesteps per cycle.")(f)
    f = click.option("--kappa", type=float, help="Von Mises concentration.")(f)
    f = click.option("--spec", "spec_file", type=click.Path(dir_okay=False),
                     help="Gait spec file (YAML).")(f)
    f = click.option("--gait", help=f"Library gait: {', '.join(LIBRARY)}.")(f)
    return f


def resolve_spec(gait=None, spec_file=None, kappa=None, period=None,
                 theta_left=None, theta_right=None) -> GaitSpec:
    """Library gait or spec file, then command-line overrides field by field."""
    try:
        if spec_file is not None:
            try:
                doc = yaml.safe_load(Path(spec_file).read_text())
            except OSError as e:
                _fail_validation([f"cannot read spec file: {e}"])
            except yaml.YAMLError as e:
                _fail_validation([f"spec file is not valid YAML: {e}"])
            base = library_gait(gait) if gait else None
            spec = spec_from_dict(doc, base)
        elif gait is not None:
            spec = library_gait(gait)
        else:
            raise click.UsageError("give --gait or --spec")
        overrides = {k: v for k, v in dict(kappa=kappa, period_steps=period,
                                           theta_left=theta_left,
                                           theta_right=theta_right).items() if v is not None}
        if overrides:
            spec = validate(GaitSpec(**{**spec.__dict__, **overrides}))
        return spec
    except SpecValidationError as e:
        _fail_validation(e.errors)
    except ValueError as e:
        _fail_validation([str(e)])


def _write(out: str | None, text: str):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


@click.group()
@click.option("-v", "--verbose", is_flag=True)
def main(verbose):
    """Periodic reward composition for bipedal gaits."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")


@main.command()
@click.argument("name", required=False)
@spec_options
def show(name, gait, spec_file, kappa, period, theta_left, theta_right):
    """Print a validated gait specification."""
    spec = resolve_spec(gait or name, spec_file, kappa, period, theta_left, theta_right)
    click.echo(f"name: {spec.name}")
    click.echo(f"kappa: {spec.kappa!r}")
    click.echo(f"period_steps: {spec.period_steps}")
    click.echo(f"theta_left: {spec.theta_left!r}")
    click.echo(f"theta_right: {spec.theta_right!r}")
    click.echo(f"offset_gap: {abs(spec.offset_gap)!r}")
    click.echo(f"swing_ratio: {spec.swing_ratio!r}")
    click.echo("phases:")
    start = 0.0
    for j, p in enumerate(spec.phases):
        kind = "swing" if p.is_swing else "stance"
        click.echo(f"  - {j}: {kind} ratio={p.ratio!r} interval=[{start:.6g}, "
                   f"{start + p.ratio:.6g}] c_frc={p.coeff_frc!r} c_spd={p.coeff_spd!r}")
        start += p.ratio


def coefficient_table(spec: GaitSpec, samples: int = 512) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["phi", "frc_left", "frc_right", "spd_left", "spd_right"])
    for i in range(samples):
        phi = i / samples
        wr.writerow([repr(phi)] + [repr(coeff_expectation(spec, ch, foot, phi))
                                   for ch, foot in (("force", "left"), ("force", "right"),
                                                    ("speed", "left"), ("speed", "right"))])
    return buf.getvalue()


@main.command("plot-coeffs")
@spec_options
@click.option("--samples", default=512, show_default=True, type=click.IntRange(min=2))
@click.option("--out", type=click.Path(dir_okay=False), help="CSV path (default stdout).")
def plot_coeffs(gait, spec_file, kappa, period, theta_left, theta_right, samples, out):
    """Export expected coefficient curves as CSV."""
    spec = resolve_spec(gait, spec_file, kappa, period, theta_left, theta_right)
    _write(out, coefficient_table(spec, samples))


@main.command()
@click.argument("trajectory", type=click.Path(dir_okay=False))
@spec_options
@click.option("--gamma", default=DEFAULT_GAMMA, show_default=True,
              type=click.FloatRange(0.0, 1.0))
@click.option("--mode", type=click.Choice(["single", "multi"]), default="single",
              show_default=True)
@click.option("--corrected-gate", is_flag=True, help="Hop-symmetry gate with period 1.")
@click.option("--out", type=click.Path(dir_okay=False), help="Breakdown CSV path.")
def score(trajectory, gait, spec_file, kappa, period, theta_left, theta_right, gamma, mode,
          corrected_gate, out):
    """Score a trajectory file against a gait."""
    spec = resolve_spec(gait, spec_file, kappa, period, theta_left, theta_right)
    try:
        with open(trajectory) as fh:
            traj = ingest_trajectory(fh)
    except OSError as e:
        raise click.ClickException(f"cannot read trajectory: {e}")
    except TrajectoryFormatError as e:
        _fail_validation([f"{trajectory}: {e}"])
    bd = score_trajectory(traj, spec, gamma, mode, corrected_gate=corrected_gate)
    if out is not None:
        Path(out).write_text(bd.to_csv())
    click.echo(f"steps={len(bd)} total={bd.undiscounted!r} discounted={bd.discounted!r}")


@main.command()
@click.option("--kappa", "kappas", multiple=True, type=float,
              help="Concentration to test (repeatable; default 8, 16, 64).")
@click.option("--grid", default=64, show_default=True, type=click.IntRange(min=1))
@click.option("--samples", default=10**6, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", type=click.Path(dir_okay=False), help="Also write the report here.")
def verify(kappas, grid, samples, seed, out):
    """Check phase-indicator expectations against Monte Carlo."""
    if samples < MIN_VERIFY_SAMPLES:
        raise click.BadParameter(f"must be >= {MIN_VERIFY_SAMPLES}", param_hint="--samples")
    kappas = kappas or (8.0, 16.0, 64.0)
    records = verify_indicator(kappas, grid, samples, seed)
    worst = max(r["max_abs_error"] for r in records)
    ok = worst < VERIFY_TOL
    lines = ["kappa,start,end,max_abs_error"]
    lines += [f"{r['kappa']!r},{r['start']!r},{r['end']!r},{r['max_abs_error']!r}"
              for r in records]
    lines.append(f"# max_abs_error={worst!r} tol={VERIFY_TOL!r} "
                 f"samples={samples} seed={seed} {'PASS' if ok else 'FAIL'}")
    text = "\n".join(lines) + "\n"
    if out is not None:
        Path(out).write_text(text)
    click.echo(text, nl=False)
    sys.exit(0 if ok else 1)


@main.command()
@spec_options
@click.option("--generations", default=200, show_default=True, type=click.IntRange(min=0))
@click.option("--horizon", default=240, show_default=True, type=click.IntRange(min=1))
@click.option("--population", default=32, show_default=True, type=click.IntRange(min=2))
@click.option("--parents", default=8, show_default=True, type=click.IntRange(min=1))
@click.option("--sigma", default=0.1, show_default=True, type=float)
@click.option("--episodes", default=4, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--gamma", default=DEFAULT_GAMMA, show_default=True,
              type=click.FloatRange(0.0, 1.0))
@click.option("--mode", type=click.Choice(["single", "multi"]), default="multi",
              show_default=True)
@click.option("--out", required=True, type=click.Path(file_okay=False),
              help="Output directory.")
def train(gait, spec_file, kappa, period, theta_left, theta_right, generations, horizon,
          population, parents, sigma, episodes, seed, gamma, mode, out):
    """Optimize a periodic policy for a gait on the toy biped."""
    spec = resolve_spec(gait, spec_file, kappa, period, theta_left, theta_right)
    try:
        cfg = gs.ESConfig(population=population, parents=parents, sigma0=sigma,
                          generations=generations, horizon=horizon, episodes=episodes,
                          seed=seed, gamma=gamma, reward_mode=mode)
    except ValueError as e:
        _fail_validation([str(e)])
    log = logging.getLogger("gaitreward.train")
    res = gs.optimize(spec, Commands(), cfg, progress=lambda h: log.info(
        "gen %d best %.3f mean %.3f best-ever %.3f", h["generation"], h["best"], h["mean"],
        h["best_ever"]))
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "policy.txt").write_text(res.best.to_text())
    (outdir / "history.csv").write_text(res.history_csv())
    traj = rollout(res.best, spec, Commands(), horizon, seed=seed)
    summary = [f"best_fitness={res.best_fitness!r}", f"eval_steps={len(traj)}",
               f"eval_fell={traj.terminated}"]
    try:
        rows = gs.grf_coefficient_report(traj, spec, warmup_cycles=1)
        pattern = gs.contact_pattern(traj, spec.period_steps, warmup_cycles=1)
    except ValueError as e:
        (outdir / "summary.txt").write_text("\n".join(summary) + "\n")
        raise click.ClickException(f"evaluation rollout too short for a report: {e}")
    (outdir / "grf_report.csv").write_text(gs.grf_report_csv(rows))
    swing, stance = gs.swing_stance_grf(rows)
    summary += [f"phase_difference={pattern.phase_difference!r}",
                f"duty_left={pattern.duty_left!r}", f"duty_right={pattern.duty_right!r}",
                f"flight_fraction={pattern.flight_fraction!r}",
                f"deep_swing_grf={swing!r}", f"deep_stance_grf={stance!r}"]
    (outdir / "summary.txt").write_text("\n".join(summary) + "\n")
    click.echo("\n".join(summary))


@main.command("rollout")
@spec_options
@click.option("--policy", "policy_file", type=click.Path(dir_okay=False),
              help="Policy file from `train` (default: zero policy).")
@click.option("--horizon", default=240, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--randomize", is_flag=True, help="Draw randomized dynamics from the seed.")
@click.option("--cmd-x", default=0.0, show_default=True, type=float)
@click.option("--out", type=click.Path(dir_okay=False), help="Trajectory path (JSONL).")
def rollout_cmd(gait, spec_file, kappa, period, theta_left, theta_right, policy_file, horizon,
                seed, randomize, cmd_x, out):
    """Simulate a policy and emit the trajectory records."""
    spec = resolve_spec(gait, spec_file, kappa, period, theta_left, theta_right)
    if policy_file is None:
        policy = PolicyParams()
    else:
        try:
            policy = PolicyParams.from_text(Path(policy_file).read_text())
        except OSError as e:
            raise click.ClickException(f"cannot read policy: {e}")
        except ValueError as e:
            _fail_validation([f"{policy_file}: {e}"])
    try:
        traj = rollout(policy, spec, Commands(cmd_x), horizon, seed=seed, randomize=randomize)
    except SimulationDiverged as e:
        raise click.ClickException(str(e))
    _write(out, emit_trajectory(traj))
    if out is not None:
        bd = score_trajectory(traj, spec)
        click.echo(f"steps={len(traj)} fell={traj.terminated} total={bd.undiscounted!r} "
                   f"discounted={bd.discounted!r}")


if __name__ == "__main__":
    main()
