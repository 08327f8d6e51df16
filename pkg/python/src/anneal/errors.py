"""
Exception hierarchy of the anneal package.
"""
from __future__ import annotations

# TYPE ANNOTATIONs
from typing import TYPE_CHECKING
if TYPE_CHECKING:
    from .schedules.adaptive.transcript import RunTranscript

# API public
__all__ = [
    "AnnealError", "AssumptionViolation", "MalformedSchedule", "InvalidConfiguration",
    "EnumerationCapExceeded", "ContractViolation", "RunFailure", "HeavyNotFound",
    "SampleStarvation",
]



class AnnealError(Exception):
    """
    Root of every error raised on purpose by the package.
    """


class AssumptionViolation(AnnealError, ValueError):
    """
    A mathematical precondition does not hold (assumptions on n and A, a_0 >= 1, B > 1, ...).
    """

    def __init__(self, assumption: str, message: str) -> None:
        super().__init__(f"assumption '{assumption}' violated: {message}")
        self.assumption = assumption


class MalformedSchedule(AnnealError, ValueError):
    """
    A cooling schedule is not strictly increasing or does not run from 0 to ∞.
    """


class InvalidConfiguration(AnnealError, ValueError):
    """
    A configuration is not valid for the Gibbs system it is used with.
    """


class EnumerationCapExceeded(AnnealError, ValueError):
    """
    Exhaustive enumeration was refused because the configuration space is above the cap.
    """

    def __init__(self, size_estimate: float, cap: int) -> None:
        super().__init__(
            f"configuration space of ~{size_estimate:.3g} states exceeds the cap of {cap}."
        )
        self.size_estimate = size_estimate
        self.cap = cap


class ContractViolation(AnnealError, RuntimeError):
    """
    A routine was called outside of its contract (e.g. bisection predicate false at 'lo').
    """


class RunFailure(AnnealError, RuntimeError):
    """
    A randomized run failed. The transcript of the run is attached.
    """

    def __init__(self, message: str, transcript: RunTranscript | None = None) -> None:
        super().__init__(message)
        self.transcript = transcript


class HeavyNotFound(RunFailure):
    """
    No allowed interval reached 2hs hits in FIND-HEAVY.
    """


class SampleStarvation(RunFailure):
    """
    The rough ratio estimator drew no sample in the interval at its second temperature.
    """
