import os

import pytest
from hypothesis import HealthCheck, settings

from gaitreward import gait_search as gs
from gaitreward.gait_spec import library_gait
from gaitreward.toy_env import rollout

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TRAIN_SEEDS = (0, 1, 2, 3, 4)
TRAIN_GENERATIONS = int(os.environ.get("GAIT_TRAIN_GENERATIONS", "200"))


class TrainedGaits:
    """Lazily trains (gait, seed) pairs once per session."""

    def __init__(self):
        self._cache = {}

    def get(self, gait: str, seed: int):
        key = (gait, seed)
        if key not in self._cache:
            spec = library_gait(gait)
            cfg = gs.ESConfig(generations=TRAIN_GENERATIONS, seed=seed)
            res = gs.optimize(spec, cfg=cfg)
            traj = rollout(res.best, spec, horizon=cfg.horizon, seed=seed)
            self._cache[key] = (spec, res, traj)
        return self._cache[key]


@pytest.fixture(scope="session")
def trained():
    return TrainedGaits()


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line, print it, and fail the test if it did not pass."""
    lines = request.config.stash[ACCEPTANCE]

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        lines.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[ACCEPTANCE]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
