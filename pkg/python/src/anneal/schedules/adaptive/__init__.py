"""
The adaptive cooling schedule: interval partition, heaviness tests, rough ratio estimator, the
schedule loop and its budgets.
"""

# IMPORTs local
from .search import monotone_bsearch, bracket_by_doubling, bisect_last_true
from .partition import IntervalPartition, build_partition
from .config import AdaptiveConfig
from .transcript import CallRecord, MoveRecord, FailureRecord, RunTranscript
from .heaviness import interval_fraction, is_heavy, find_heavy, est_ratio, log_est_ratio
from .budget import (
    q_budget, required_accuracy, total_sample_budget, total_sample_accuracy,
    schedule_length_bound, reversible_length_bound, long_move_bound, interval_emission_bound,
    optimal_move_bound, warm_chain_budget,
)
from .algorithm import PrintCoolingSchedule, print_cooling_schedule

# API public
__all__ = [
    "monotone_bsearch",
    "bracket_by_doubling",
    "bisect_last_true",
    "IntervalPartition",
    "build_partition",
    "AdaptiveConfig",
    "CallRecord",
    "MoveRecord",
    "FailureRecord",
    "RunTranscript",
    "interval_fraction",
    "is_heavy",
    "find_heavy",
    "est_ratio",
    "log_est_ratio",
    "q_budget",
    "required_accuracy",
    "total_sample_budget",
    "total_sample_accuracy",
    "schedule_length_bound",
    "reversible_length_bound",
    "long_move_bound",
    "interval_emission_bound",
    "optimal_move_bound",
    "warm_chain_budget",
    "PrintCoolingSchedule",
    "print_cooling_schedule",
]
