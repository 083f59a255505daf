#!/usr/bin/env python3.12
"""
errors

Exception hierarchy shared by all transit-control subpackages.

Author: transit-control maintainers

Date: 17.10.2026
"""


class TransitControlError(Exception):
    """Base class for all domain errors."""


class ConfigError(TransitControlError, ValueError):
    """Invalid configuration document or value."""

    def __init__(self, errors: list[str] | str) -> None:
        self.errors = [errors] if isinstance(errors, str) else list(errors)
        super().__init__("; ".join(self.errors))


class SimulationError(TransitControlError):
    """Simulator was driven outside its contract."""


class ScenarioError(TransitControlError, ValueError):
    """Invalid perturbation or anomaly specification."""


class DecisionPointError(TransitControlError):
    """A control call was made for a bus that is not at a decision point."""


class ShapeError(TransitControlError, ValueError):
    """Array dimensions do not match."""


class StaleCacheError(TransitControlError):
    """A forward cache was used after its parameters changed."""


class NonFiniteGradientError(TransitControlError, FloatingPointError):
    """A gradient contained NaN or infinite values."""


class DivergenceError(TransitControlError):
    """Training loss exceeded the divergence guard."""


class CheckpointError(TransitControlError):
    """Checkpoint files are missing or inconsistent."""


class OracleError(TransitControlError):
    """One or more self-test oracles failed."""
