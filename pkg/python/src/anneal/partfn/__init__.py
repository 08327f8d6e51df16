"""
Exact log-space partition function oracle and schedule verification.
"""

# IMPORTs local
from .log_weight import check_log_weights, log_sum, log_add, log_expm1, log_mean
from .partition_function import PartitionFunction, log_z, f_prime, chebyshev_ratio
from .verification import (
    ScheduleVerification, ReversibleVerification, verify_schedule, verify_reversible,
)

# API public
__all__ = [
    "check_log_weights",
    "log_sum",
    "log_add",
    "log_expm1",
    "log_mean",
    "PartitionFunction",
    "log_z",
    "f_prime",
    "chebyshev_ratio",
    "ScheduleVerification",
    "ReversibleVerification",
    "verify_schedule",
    "verify_reversible",
]
