"""
The unbiased estimator of one ratio Z(β′)/Z(β): the mean of W = e^{(β−β′)H(X)}, X ~ μ_β.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs sub
from dataclasses import dataclass

# IMPORTs local
from ..partfn.log_weight import log_mean
from ..samplers.base import DEFAULT_CHUNK, HamiltonianSampler, draw_levels
from ..utils import INF, Beta, LevelArray, NEG_INF, beta_to_json

# TYPE ANNOTATIONs
from typing import Any
import numpy.typing as npt

# API public
__all__ = ["RatioEstimate", "log_ratio_weights", "sample_ratio"]



@dataclass(frozen=True)
class RatioEstimate:
    """
    S_i, the sample mean of W over 'count' draws, kept in log space with the second moment used
    by the squared coefficient of variation.
    """

    beta: Beta
    beta_prime: Beta
    log_mean: float
    count: int
    log_second_moment: float = NEG_INF

    @property
    def mean(self) -> float:
        return math.exp(self.log_mean)

    @property
    def is_zero(self) -> bool:
        """
        Whether no draw contributed (possible only towards β′ = ∞).
        """
        return self.log_mean == NEG_INF

    @property
    def log_squared_cv(self) -> float:
        """
        ln(E(W²)/E(W)²) estimated from the draws.
        """

        if self.is_zero: return math.nan
        return self.log_second_moment - 2. * self.log_mean

    def to_json(self) -> dict[str, Any]:
        return {
            "beta": beta_to_json(self.beta), "beta_next": beta_to_json(self.beta_prime),
            "log_mean": None if self.is_zero else self.log_mean, "count": self.count,
        }


def log_ratio_weights(levels: LevelArray, beta: Beta, beta_prime: Beta) -> npt.NDArray[np.float64]:
    """
    ln W = (β − β′)H per level; for β′ = ∞ this is 0 on H = 0 and −inf elsewhere.
    """

    if beta_prime is INF: return np.where(levels == 0, 0., NEG_INF)
    return (float(beta) - float(beta_prime)) * levels.astype(np.float64)


def sample_ratio(
        beta: Beta,
        beta_prime: Beta,
        sampler: HamiltonianSampler,
        count: int,
        rng: np.random.Generator,
        *,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
    ) -> RatioEstimate:
    """
    To estimate Z(β′)/Z(β) from 'count' draws at β.

    Args:
        beta (Beta): the current inverse temperature, finite.
        beta_prime (Beta): the next one, β′ >= β.
        sampler (HamiltonianSampler): the level oracle.
        count (int): the number of draws, >= 1.
        rng (np.random.Generator): the random stream.
        workers (int, optional): threads used for the draws. Defaults to 1.
        chunk_size (int, optional): draws per stream chunk. Defaults to DEFAULT_CHUNK.

    Raises:
        ValueError: if count < 1, β is infinite or β′ < β.

    Returns:
        RatioEstimate: the estimate.
    """

    if count < 1: raise ValueError(f"count must be >= 1, got {count}.")
    if beta is INF: raise ValueError("The ratio is sampled at a finite β.")
    if beta_prime < beta: raise ValueError(f"β′ = {beta_prime} is below β = {beta}.")

    levels = draw_levels(sampler, beta, count, rng, workers, chunk_size)
    weights = log_ratio_weights(levels, beta, beta_prime)
    return RatioEstimate(beta, beta_prime, log_mean(weights), count, log_mean(2. * weights))
