"""Probabilistic periodic reward composition for bipedal gaits."""

from .gait_spec import GaitSpec, PhaseDef, SpecValidationError, library_gait, validate
from .phase_math import DomainError, IndicatorDistribution, VonMisesParams, indicator_expectation
from .reward_engine import Commands, Trajectory, TrajectoryStep, score_trajectory

__all__ = [
    "GaitSpec", "PhaseDef", "SpecValidationError", "library_gait", "validate",
    "DomainError", "IndicatorDistribution", "VonMisesParams", "indicator_expectation",
    "Commands", "Trajectory", "TrajectoryStep", "score_trajectory",
]

__version__ = "0.1.0"
