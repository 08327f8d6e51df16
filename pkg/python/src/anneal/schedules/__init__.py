"""
Cooling schedules: the non-adaptive ones, the constructions on an explicit partition function
and the adaptive schedule.
"""

# IMPORTs local
from .nonadaptive import (
    uniform_schedule, bezakova_schedule, LowerBoundGreedy, lower_bound_greedy, augment_reversible,
)
from .theory import (
    ConvexCurve, PLApprox, pl_approx, existence_schedule, greedy_schedule, LBInequality,
    check_lb_inequality, existence_length_bound, adaptive_length_bound, unit_level,
)
from .adaptive import (
    AdaptiveConfig, IntervalPartition, RunTranscript, PrintCoolingSchedule, build_partition,
    is_heavy, find_heavy, est_ratio, monotone_bsearch, print_cooling_schedule, q_budget,
)

# API public
__all__ = [
    "uniform_schedule",
    "bezakova_schedule",
    "LowerBoundGreedy",
    "lower_bound_greedy",
    "augment_reversible",
    "ConvexCurve",
    "PLApprox",
    "pl_approx",
    "existence_schedule",
    "greedy_schedule",
    "LBInequality",
    "check_lb_inequality",
    "existence_length_bound",
    "adaptive_length_bound",
    "unit_level",
    "AdaptiveConfig",
    "IntervalPartition",
    "RunTranscript",
    "PrintCoolingSchedule",
    "build_partition",
    "is_heavy",
    "find_heavy",
    "est_ratio",
    "monotone_bsearch",
    "print_cooling_schedule",
    "q_budget",
]
