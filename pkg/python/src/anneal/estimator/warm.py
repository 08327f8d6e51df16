"""
Sample counts of the product estimator when the draws come from warm-started chains.
"""
from __future__ import annotations

# IMPORTs
import math

# TYPE ANNOTATIONs
from typing import NamedTuple

# API public
__all__ = ["WarmSampleCount", "warm_sample_count"]



class WarmSampleCount(NamedTuple):
    """
    K draws per ratio and the independence tolerance κ they need.
    """

    samples: int
    kappa: float


def warm_sample_count(length: int, epsilon: float) -> WarmSampleCount:
    """
    K = ⌈512ℓ/ε²⌉ and κ = 2^{-20} ε²/(K⁵ ℓ).

    Args:
        length (int): the schedule length ℓ >= 1.
        epsilon (float): the relative accuracy, in (0, 1].

    Raises:
        ValueError: if ℓ < 1 or ε is out of range.

    Returns:
        WarmSampleCount: (K, κ).
    """

    if length < 1: raise ValueError(f"ℓ must be >= 1, got {length}.")
    if not 0. < epsilon <= 1.: raise ValueError(f"ε must lie in (0, 1], got {epsilon}.")
    samples = math.ceil(512. * length / epsilon ** 2)
    return WarmSampleCount(samples, 2. ** -20 * epsilon ** 2 / (float(samples) ** 5 * length))
