"""
Exact-oracle verification of cooling schedules: the B-Chebyshev condition on every step, and in
both directions for reversible schedules.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs local
from .partition_function import PartitionFunction
from ..models.schedule import CoolingSchedule
from ..utils import INF, Beta, beta_to_json

# TYPE ANNOTATIONs
from typing import Any, Sequence

# API public
__all__ = [
    "ScheduleVerification", "ReversibleVerification", "verify_schedule", "verify_reversible",
]



class ScheduleVerification:
    """
    Checks Z(2β_{i+1}−β_i) Z(β_i) / Z(β_{i+1})² <= B for every step of a schedule with the exact
    oracle. Comparisons happen in log space with an additive slack ('tolerance').
    Use the 'passed', 'log_ratios' and 'worst_log_ratio' properties to access the results.
    """

    def __init__(
            self,
            z: PartitionFunction,
            schedule: CoolingSchedule | Sequence[Beta | float | str],
            bound: float,
            tolerance: float = 1e-9,
        ) -> None:
        """
        Verifies the schedule against B = 'bound'.

        Args:
            z (PartitionFunction): the exact oracle.
            schedule (CoolingSchedule | Sequence[Beta | float | str]): the schedule. A sequence is
                converted, which checks its endpoints and monotonicity.
            bound (float): B > 0.
            tolerance (float, optional): additive slack in log space. Defaults to 1e-9.

        Raises:
            MalformedSchedule: if the sequence is not a valid schedule.
            ValueError: if the bound is not positive.
        """

        if not bound > 0: raise ValueError(f"The Chebyshev bound B must be positive, got {bound}.")
        self._z = z
        self._schedule = (
            schedule if isinstance(schedule, CoolingSchedule) else CoolingSchedule(schedule)
        )
        self._log_bound = math.log(bound)
        self._tolerance = tolerance

        # RUN
        self._log_ratios = [z.log_chebyshev_ratio(b, bp) for b, bp in self._schedule.pairs()]

    @property
    def schedule(self) -> CoolingSchedule:
        return self._schedule

    @property
    def log_ratios(self) -> list[float]:
        """
        ln of the Chebyshev ratio of each step.
        """
        return self._log_ratios

    @property
    def worst_log_ratio(self) -> float:
        return max(self._log_ratios)

    @property
    def worst_ratio(self) -> float:
        return math.exp(self.worst_log_ratio)

    @property
    def failures(self) -> list[int]:
        """
        Indices of the steps above the bound.
        """
        return [
            i for i, r in enumerate(self._log_ratios) if r > self._log_bound + self._tolerance
        ]

    @property
    def passed(self) -> bool:
        return not self.failures

    def rows(self) -> list[dict[str, Any]]:
        """
        One row per step (index, beta, beta_next, log_ratio, ok), for tables and JSON reports.
        """

        limit = self._log_bound + self._tolerance
        return [
            {
                "index": i,
                "beta": beta_to_json(b),
                "beta_next": beta_to_json(bp),
                "log_ratio": r,
                "ok": r <= limit,
            }
            for i, ((b, bp), r) in enumerate(zip(self._schedule.pairs(), self._log_ratios))
        ]

    def __bool__(self) -> bool:
        return self.passed


class ReversibleVerification(ScheduleVerification):
    """
    Checks a reversible schedule: the forward condition on every step and the reversed one
    Z(2β_i−β_{i+1}) Z(β_{i+1}) / Z(β_i)² <= B on every finite step. The step to ∞ is checked
    forward only, its reversed ratio being infinite for every non-constant Z.
    """

    def __init__(
            self,
            z: PartitionFunction,
            schedule: CoolingSchedule | Sequence[Beta | float | str],
            bound: float,
            tolerance: float = 1e-9,
        ) -> None:
        super().__init__(z, schedule, bound, tolerance)

        # RUN reversed
        self._reverse_log_ratios = [
            z.log_chebyshev_ratio(bp, b) for b, bp in self._schedule.pairs() if bp is not INF
        ]

    @property
    def reverse_log_ratios(self) -> list[float]:
        """
        ln of the reversed Chebyshev ratio of each finite step.
        """
        return self._reverse_log_ratios

    @property
    def reverse_failures(self) -> list[int]:
        return [
            i for i, r in enumerate(self._reverse_log_ratios)
            if r > self._log_bound + self._tolerance
        ]

    @property
    def worst_log_ratio(self) -> float:
        return max(self._log_ratios + self._reverse_log_ratios)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.reverse_failures

    def rows(self) -> list[dict[str, Any]]:
        rows = super().rows()
        limit = self._log_bound + self._tolerance
        for row, reverse in zip(rows, self._reverse_log_ratios):
            row["reverse_log_ratio"] = reverse
            row["ok"] = row["ok"] and reverse <= limit
        return rows


def verify_schedule(
        z: PartitionFunction,
        schedule: CoolingSchedule | Sequence[Beta | float | str],
        bound: float,
        tolerance: float = 1e-9,
    ) -> ScheduleVerification:
    """
    Verifies that the schedule is B-Chebyshev for z.
    """
    return ScheduleVerification(z, schedule, bound, tolerance)


def verify_reversible(
        z: PartitionFunction,
        schedule: CoolingSchedule | Sequence[Beta | float | str],
        bound: float,
        tolerance: float = 1e-9,
    ) -> ReversibleVerification:
    """
    Verifies that the schedule is reversible B-Chebyshev for z.
    """
    return ReversibleVerification(z, schedule, bound, tolerance)
