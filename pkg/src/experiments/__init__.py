"""Experiment sweeps: one class per experiment kind."""

from .experiment import Experiment, PointResult
from .factory import create_experiment

__all__ = ["Experiment", "PointResult", "create_experiment"]
