"""
The randomized primitives of the adaptive schedule: the heaviness test of an interval, the
search for a heavy interval outside of the banned ones and the rough ratio estimator.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs alias
import numpy as np

# IMPORTs local
from .partition import IntervalPartition
from .transcript import RunTranscript
from ...errors import ContractViolation, HeavyNotFound, SampleStarvation
from ...samplers.base import DEFAULT_CHUNK, HamiltonianSampler, draw_levels
from ...utils import Beta, LevelArray

# TYPE ANNOTATIONs
from typing import Iterable

# API public
__all__ = ["interval_fraction", "is_heavy", "find_heavy", "est_ratio", "log_est_ratio"]

# SLACK on the estimator precondition
_PRECONDITION_SLACK = 1e-9

logger = logging.getLogger(__name__)



def interval_fraction(levels: LevelArray, interval: tuple[int, int]) -> float:
    """
    The fraction of the levels that lie in [b, c].
    """

    if levels.size == 0: return 0.
    b, c = interval
    return float(np.count_nonzero((levels >= b) & (levels <= c))) / levels.size


def is_heavy(
        interval: tuple[int, int],
        beta: Beta,
        sampler: HamiltonianSampler,
        h: float,
        s: int,
        rng: np.random.Generator,
        *,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
        transcript: RunTranscript | None = None,
    ) -> bool:
    """
    Draws s levels at β and tells whether the fraction U landing in the interval is at least 2h.

    Args:
        interval (tuple[int, int]): the interval [b, c].
        beta (Beta): the inverse temperature.
        sampler (HamiltonianSampler): the level oracle.
        h (float): the heaviness parameter.
        s (int): the number of draws.
        rng (np.random.Generator): the random stream.
        workers (int, optional): threads used for the draws. Defaults to 1.
        chunk_size (int, optional): draws per stream chunk. Defaults to DEFAULT_CHUNK.
        transcript (RunTranscript | None, optional): where the batch is recorded. Defaults to None.

    Returns:
        bool: U >= 2h.
    """

    levels = draw_levels(sampler, beta, s, rng, workers, chunk_size)
    fraction = interval_fraction(levels, interval)
    if transcript is not None:
        transcript.record_call('is_heavy', beta, s, interval=interval, value=fraction)
    return fraction >= 2. * h


def find_heavy(
        beta: Beta,
        bad: Iterable[tuple[int, int]],
        sampler: HamiltonianSampler,
        partition: IntervalPartition,
        h: float,
        s: int,
        rng: np.random.Generator,
        *,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
        transcript: RunTranscript | None = None,
    ) -> tuple[int, int]:
    """
    Draws s levels at β, histograms them over the intervals that are not banned and returns the
    most hit one (the lowest b wins ties).

    Raises:
        HeavyNotFound: if every allowed count is below 2hs (in particular when all are banned).

    Returns:
        tuple[int, int]: the interval [b, c].
    """

    levels = draw_levels(sampler, beta, s, rng, workers, chunk_size)
    counts = partition.histogram(levels)
    banned = set(bad)
    allowed = np.array([interval not in banned for interval in partition.intervals])
    masked = np.where(allowed, counts, -1)
    best = int(np.argmax(masked))
    if transcript is not None:
        transcript.record_call(
            'find_heavy', beta, s, interval=partition[best], value=float(max(masked[best], 0)),
        )

    if masked[best] < 2. * h * s:
        error = HeavyNotFound(
            f"no allowed interval reached 2hs = {2. * h * s:.4g} hits at β = {beta} "
            f"(best {max(int(masked[best]), 0)}, {len(banned)} banned).",
            transcript,
        )
        if transcript is not None: transcript.record_failure(error, beta)
        raise error
    return partition[best]


def log_est_ratio(
        interval: tuple[int, int],
        beta_1: float,
        beta_2: float,
        sampler: HamiltonianSampler,
        s: int,
        rng: np.random.Generator,
        *,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
        transcript: RunTranscript | None = None,
    ) -> float:
    """
    ln EST(I, β₁, β₂) = ln(U₁/U₂) + b(β₁ − β₂), an estimate of ln(Z(β₂)/Z(β₁)) within ln(4e)
    when I is heavy at both temperatures. U₁ = 0 gives −inf.

    Raises:
        ContractViolation: if |β₁ − β₂|(c − b) > 1.
        SampleStarvation: if U₂ = 0.
    """

    b, c = interval
    if abs(beta_1 - beta_2) * (c - b) > 1. + _PRECONDITION_SLACK:
        raise ContractViolation(
            f"|β₁ − β₂|(c − b) = {abs(beta_1 - beta_2) * (c - b):.6g} exceeds 1 on [{b}, {c}]."
        )

    u_1 = interval_fraction(draw_levels(sampler, beta_1, s, rng, workers, chunk_size), interval)
    u_2 = interval_fraction(draw_levels(sampler, beta_2, s, rng, workers, chunk_size), interval)
    if transcript is not None:
        transcript.record_call('est_ratio', beta_1, s, interval=interval, value=u_1)
        transcript.record_call('est_ratio', beta_2, s, interval=interval, value=u_2)

    if u_2 == 0.:
        error = SampleStarvation(
            f"no draw in [{b}, {c}] at β₂ = {beta_2:.6g} out of {s}.", transcript,
        )
        if transcript is not None: transcript.record_failure(error, beta_2)
        raise error
    if u_1 == 0.: return -math.inf
    return math.log(u_1) - math.log(u_2) + b * (beta_1 - beta_2)


def est_ratio(
        interval: tuple[int, int],
        beta_1: float,
        beta_2: float,
        sampler: HamiltonianSampler,
        s: int,
        rng: np.random.Generator,
        *,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
        transcript: RunTranscript | None = None,
    ) -> float:
    """
    EST(I, β₁, β₂) = (U₁/U₂) e^{b(β₁ − β₂)}. See 'log_est_ratio'.
    """

    return math.exp(log_est_ratio(
        interval, beta_1, beta_2, sampler, s, rng,
        workers=workers, chunk_size=chunk_size, transcript=transcript,
    ))
