"""
Confidence amplification: the median of independent product estimates.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs sub
from dataclasses import replace
from scipy.stats import binom

# IMPORTs local
from .product import BASE_CONFIDENCE, CountEstimate

# TYPE ANNOTATIONs
from typing import Sequence

# API public
__all__ = ["median_confidence", "runs_for_confidence", "amplify"]



def median_confidence(runs: int, confidence: float = BASE_CONFIDENCE) -> float:
    """
    The probability that the median of 'runs' independent estimates, each correct with the
    given probability, is correct: P(Bin(runs, p) > runs/2).
    """

    if runs < 1: raise ValueError(f"runs must be >= 1, got {runs}.")
    return float(binom.sf(runs // 2, runs, confidence))


def runs_for_confidence(delta: float, confidence: float = BASE_CONFIDENCE) -> int:
    """
    The smallest odd number of runs whose median is correct with probability >= 1 − δ.
    """

    if not 0. < delta < 1.: raise ValueError(f"δ must lie in (0, 1), got {delta}.")
    runs = 1
    while median_confidence(runs, confidence) < 1. - delta: runs += 2
    return runs


def amplify(estimates: Sequence[CountEstimate]) -> CountEstimate:
    """
    The median in log space of independent estimates, with the confidence of the median. The
    returned estimate keeps the other fields of the first input.

    Raises:
        ValueError: if no estimate is given.
    """

    if len(estimates) == 0: raise ValueError("amplify needs at least one estimate.")
    if len(estimates) == 1: return estimates[0]

    logs = np.array([estimate.log_estimate for estimate in estimates], dtype=np.float64)
    median = float(np.median(logs))
    confidence = median_confidence(len(estimates), estimates[0].confidence)
    return replace(
        estimates[0],
        log_estimate=median,
        confidence=confidence,
        runs=sum(estimate.runs for estimate in estimates),
        zero=math.isinf(median),
        ratios=(),
        diagnostic=None if math.isfinite(median) else "the median run is zero.",
    )
