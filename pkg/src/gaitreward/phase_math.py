"""Von Mises machinery behind the probabilistic phase indicators.

Each phase of a gait is an interval on the unit cycle whose start and end
times are Von Mises random variables sharing one concentration ``kappa``.
The expected value of the phase indicator at cycle time ``phi`` is

    E[I(phi)] = P(A < x) * (1 - P(B < x)),    x = 2*pi*phi

where ``x`` is lifted onto the real line next to the interval before the
two CDFs are read (see :func:`lift_angle`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

TWO_PI = 2.0 * math.pi
DEFAULT_KAPPA = 16.0
CDF_TOL = 1e-10


class DomainError(ValueError):
    """Raised when an input lies outside a function's mathematical domain."""


def wrap_cycle(phi: float) -> float:
    """Reduce a cycle time into [0, 1)."""
    w = phi % 1.0
    # -1e-17 % 1.0 == 1.0 in floating point
    return 0.0 if w >= 1.0 else w


def wrap_angle(x):
    """Reduce angle(s) into [-pi, pi)."""
    return (np.asarray(x) + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class VonMisesParams:
    mean: float
    kappa: float = DEFAULT_KAPPA

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError(f"kappa must be finite and > 0, got {self.kappa}")
        if not math.isfinite(self.mean):
            raise DomainError(f"mean must be finite, got {self.mean}")
        m = self.mean % TWO_PI
        object.__setattr__(self, "mean", 0.0 if m >= TWO_PI else m)


@dataclass(frozen=True)
class IndicatorDistribution:
    """Start (A) and end (B) Von Mises variables of one phase interval."""

    start: VonMisesParams
    end: VonMisesParams

    def __post_init__(self):
        if self.start.kappa != self.end.kappa:
            raise DomainError("start and end must share one kappa")

    @classmethod
    def from_cycle(cls, a: float, b: float, kappa: float = DEFAULT_KAPPA):
        """Build from start/end expressed as cycle fractions."""
        return cls(VonMisesParams(TWO_PI * a, kappa), VonMisesParams(TWO_PI * b, kappa))

    @property
    def kappa(self) -> float:
        return self.start.kappa

    @property
    def arc(self) -> float:
        """Forward angular length from start mean to end mean, in (0, 2pi]."""
        arc = (self.end.mean - self.start.mean) % TWO_PI
        return TWO_PI if arc == 0.0 else arc


def bessel_i0(kappa: float) -> float:
    """Modified Bessel function of the first kind, order zero."""
    if not math.isfinite(kappa):
        raise DomainError(f"bessel_i0 needs a finite argument, got {kappa}")
    if kappa < 0:
        raise DomainError(f"bessel_i0 expects kappa >= 0, got {kappa}")
    return float(special.i0(kappa))


@lru_cache(maxsize=256)
def _scaled_i0(kappa: float) -> float:
    # exp(-kappa) * I0(kappa); finite for any kappa
    return float(special.i0e(kappa))


def _half_mass(d: float, kappa: float) -> float:
    """Probability mass of a centred Von Mises on [0, d], for 0 <= d <= pi."""
    if d == 0.0:
        return 0.0
    norm = TWO_PI * _scaled_i0(kappa)

    def density(t):
        return math.exp(kappa * (math.cos(t) - 1.0)) / norm

    # keep a node inside the peak when kappa is large
    split = 8.0 / math.sqrt(kappa)
    points = [split] if split < d else None
    val, _ = integrate.quad(density, 0.0, d, epsabs=CDF_TOL, epsrel=CDF_TOL,
                            limit=200, points=points)
    return val


def centred_cdf(d: float, kappa: float) -> float:
    """CDF of a zero-mean Von Mises at offset ``d``; clamps outside [-pi, pi]."""
    if d <= -math.pi:
        return 0.0
    if d >= math.pi:
        return 1.0
    # quadrature error can push the half mass a hair past 0.5
    if d >= 0.0:
        return min(1.0, 0.5 + _half_mass(d, kappa))
    return max(0.0, 0.5 - _half_mass(-d, kappa))


def von_mises_cdf(x: float, params: VonMisesParams) -> float:
    """CDF on the branch [mean - pi, mean + pi].

    ``x`` is first reduced into that branch, so both endpoints are reachable:
    ``cdf(mean - pi) == 0`` and ``cdf(mean + pi) == 1``.
    """
    if not (params.kappa > 0):
        raise DomainError("kappa must be > 0")
    d = x - params.mean
    # (mean + pi) - mean can round past pi; that is still the branch end
    if abs(d) > math.pi * (1.0 + 1e-12):
        d = float(wrap_angle(d))
    return centred_cdf(d, params.kappa)


def lift_angle(x, dist: IndicatorDistribution):
    """Representative of angle(s) ``x`` nearest the interval's midpoint.

    Returns offsets ``(d_start, d_end)`` of the lifted angle from the start
    and end means, with the end mean unrolled to ``start + arc``.  Lifting
    relative to the midpoint keeps every point inside the interval on the
    same side of both boundaries, including intervals longer than half a
    cycle.
    """
    a = dist.start.mean
    arc = dist.arc
    mid = a + 0.5 * arc
    lifted = mid + wrap_angle(np.asarray(x, dtype=float) - mid)
    return lifted - a, lifted - (a + arc)


def indicator_expectation(phi: float, dist: IndicatorDistribution) -> float:
    """E[I(phi)] = P(A < x) * (1 - P(B < x)) with x = 2*pi*phi."""
    d_start, d_end = lift_angle(TWO_PI * wrap_cycle(phi), dist)
    kappa = dist.kappa
    p_started = centred_cdf(float(d_start), kappa)
    if p_started == 0.0:
        return 0.0
    return p_started * (1.0 - centred_cdf(float(d_end), kappa))


def sample_branch(rng: np.random.Generator, params: VonMisesParams, size) -> np.ndarray:
    """Von Mises draws offset from the mean, on [-pi, pi]."""
    # numpy's sampler is the Best-Fisher rejection scheme
    return rng.vonmises(0.0, params.kappa, size=size)


def mc_indicator_oracle(phi, dist: IndicatorDistribution, samples: int, seed: int):
    """Monte Carlo estimate of :func:`indicator_expectation`.

    Draws ``samples`` independent (A, B) pairs and counts how often the lifted
    query angle falls strictly between them.  ``phi`` may be an array; every
    entry is scored against the same draws.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    off_a = sample_branch(rng, dist.start, samples)
    off_b = sample_branch(rng, dist.end, samples)
    phis = np.atleast_1d(np.asarray(phi, dtype=float))
    d_start, d_end = lift_angle(TWO_PI * (phis % 1.0), dist)
    est = np.empty(phis.shape)
    for i, (ds, de) in enumerate(zip(d_start, d_end)):
        est[i] = np.count_nonzero((off_a < ds) & (de < off_b)) / samples
    return float(est[0]) if np.ndim(phi) == 0 else est


def sample_indicator(phi, dist: IndicatorDistribution, rng: np.random.Generator) -> np.ndarray:
    """One Bernoulli draw of I(phi) per entry of ``phi`` (fresh A, B each)."""
    phis = np.asarray(phi, dtype=float)
    d_start, d_end = lift_angle(TWO_PI * (phis % 1.0), dist)
    a = rng.vonmises(0.0, dist.kappa, size=phis.shape)
    b = rng.vonmises(0.0, dist.kappa, size=phis.shape)
    return ((a < d_start) & (d_end < b)).astype(float)


VERIFY_TOL = 5e-3
# (start, end) in cycles; the last interval wraps and exceeds half a cycle
VERIFY_GEOMETRIES = ((0.0, 0.5), (0.25, 0.35), (0.6, 1.3))


def verify_indicator(kappas=(8.0, 16.0, 64.0), grid: int = 64, samples: int = 10**6,
                     seed: int = 0, geometries=VERIFY_GEOMETRIES) -> list[dict]:
    """Analytic-vs-Monte-Carlo comparison over a phi x kappa x interval grid."""
    phis = np.arange(grid) / grid
    out = []
    for kappa in kappas:
        for a, b in geometries:
            dist = IndicatorDistribution.from_cycle(a, b, kappa)
            exact = np.array([indicator_expectation(p, dist) for p in phis])
            est = mc_indicator_oracle(phis, dist, samples, seed)
            out.append({"kappa": float(kappa), "start": a, "end": b,
                        "max_abs_error": float(np.max(np.abs(exact - est)))})
    return out
