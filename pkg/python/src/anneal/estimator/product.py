"""
The telescoping product estimator: one ratio estimate per step of a B-Chebyshev schedule,
multiplied in log space onto the analytically known end of the partition function.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs alias
import numpy as np

# IMPORTs sub
from dataclasses import dataclass, field

# IMPORTs local
from .ratio import RatioEstimate, sample_ratio
from ..errors import AssumptionViolation, InvalidConfiguration
from ..models.schedule import CoolingSchedule
from ..models.systems import Anchor
from ..samplers.base import DEFAULT_CHUNK, HamiltonianSampler
from ..schedules.adaptive.transcript import RunTranscript
from ..utils import INF, Beta, NEG_INF, beta_to_json

# TYPE ANNOTATIONs
from typing import Any, Sequence

# API public
__all__ = ["CountEstimate", "samples_per_ratio", "telescope", "product_estimate"]

# CONFIDENCE of a single product estimate
BASE_CONFIDENCE = .75

logger = logging.getLogger(__name__)



@dataclass(frozen=True)
class CountEstimate:
    """
    A point estimate of ln Z at the unknown end of the product (Z(∞), Z(β_target) or Z(0) for
    the INFINITY_KNOWN systems) with its claimed confidence.
    """

    log_estimate: float
    epsilon: float
    confidence: float
    anchor: Anchor
    known_log_z: float
    bound_b: float
    samples_per_ratio: int
    ratios: tuple[RatioEstimate, ...] = ()
    target_beta: Beta = INF
    runs: int = 1
    empirical_only: bool = False
    zero: bool = False
    diagnostic: str | None = None
    schedule: CoolingSchedule | None = field(default=None, compare=False)
    transcript: RunTranscript | None = field(default=None, compare=False, repr=False)

    @property
    def estimate(self) -> float:
        return math.exp(self.log_estimate)

    @property
    def total_samples(self) -> int:
        return sum(ratio.count for ratio in self.ratios)

    def within(self, true_log_z: float) -> bool:
        """
        Whether (1 − ε)Z <= Ŝ <= (1 + ε)Z for the true ln Z.
        """

        if self.zero: return False
        return (
            math.log1p(-self.epsilon) <= self.log_estimate - true_log_z <= math.log1p(self.epsilon)
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "log_estimate": None if self.zero else self.log_estimate,
            "eps": self.epsilon,
            "confidence": self.confidence,
            "runs": self.runs,
            "anchor": self.anchor.value,
            "known_log_z": self.known_log_z,
            "target_beta": beta_to_json(self.target_beta),
            "B": self.bound_b,
            "samples_per_ratio": self.samples_per_ratio,
            "empirical_only": self.empirical_only,
            "zero": self.zero,
            "diagnostic": self.diagnostic,
            "per_ratio": [ratio.to_json() for ratio in self.ratios],
        }


def samples_per_ratio(bound_b: float, length: int, epsilon: float) -> int:
    """
    ⌈16Bℓ/ε²⌉.
    """
    return math.ceil(16. * bound_b * length / epsilon ** 2)


def telescope(known_log_z: float, log_ratios: Sequence[float], anchor: Anchor) -> float:
    """
    ln Z at the unknown end: ln Z(0) + Σ ln S_i when Z(0) is known, ln Z(∞) − Σ ln S_i when
    Z(∞) is.
    """

    total = math.fsum(log_ratios)
    return known_log_z + total if anchor is Anchor.ZERO_KNOWN else known_log_z - total


def product_estimate(
        schedule: CoolingSchedule,
        sampler: HamiltonianSampler,
        bound_b: float,
        epsilon: float,
        rng: np.random.Generator,
        *,
        known_log_z: float,
        anchor: Anchor = Anchor.ZERO_KNOWN,
        target_beta: Beta | None = None,
        max_samples_per_ratio: int | None = None,
        workers: int = 1,
        chunk_size: int = DEFAULT_CHUNK,
        transcript: RunTranscript | None = None,
    ) -> CountEstimate:
    """
    Estimates the unknown end of the telescoping product Z(0) Π Z(β_{i+1})/Z(β_i) with
    ⌈16Bℓ/ε²⌉ draws per ratio. For a B-Chebyshev schedule, (1 − ε)Z <= Ŝ <= (1 + ε)Z holds with
    probability at least 3/4. Every ratio gets its own child stream of 'rng'.

    Args:
        schedule (CoolingSchedule): a B-Chebyshev schedule of the instance.
        sampler (HamiltonianSampler): the level oracle.
        bound_b (float): B >= 1.
        epsilon (float): the relative accuracy, in (0, 1).
        rng (np.random.Generator): the parent stream.
        known_log_z (float): ln Z at the known end.
        anchor (Anchor, optional): which end is known. Defaults to Anchor.ZERO_KNOWN.
        target_beta (Beta | None, optional): for ZERO_KNOWN systems, the β at which Z is wanted;
            the schedule is truncated there. Defaults to None (∞).
        max_samples_per_ratio (int | None, optional): caps the draws per ratio, making the
            guarantee empirical only. Defaults to None.
        workers (int, optional): threads used for the draws. Defaults to 1.
        chunk_size (int, optional): draws per stream chunk. Defaults to DEFAULT_CHUNK.
        transcript (RunTranscript | None, optional): where the batches are recorded.
            Defaults to None.

    Raises:
        AssumptionViolation: if ε is not in (0, 1) or B < 1.
        InvalidConfiguration: if a target β is given for an INFINITY_KNOWN system.

    Returns:
        CountEstimate: the estimate, flagged as zero if some ratio drew no contribution.
    """

    if not 0. < epsilon < 1.: raise AssumptionViolation("0 < eps < 1", f"ε = {epsilon}.")
    if not bound_b >= 1.: raise AssumptionViolation("B >= 1", f"B = {bound_b}.")
    if target_beta is not None and anchor is Anchor.INFINITY_KNOWN:
        raise InvalidConfiguration("A target β needs Z(0) to be the known end.")

    target = INF if target_beta is None else target_beta
    betas = list(schedule.betas) if target is INF else schedule.truncated(target)
    pairs = list(zip(betas[:-1], betas[1:]))
    count = samples_per_ratio(bound_b, max(len(pairs), 1), epsilon)
    empirical_only = False
    if max_samples_per_ratio is not None and count > max_samples_per_ratio:
        logger.warning(
            "per-ratio samples capped at %d (B = %.4g requires %d): the 3/4 guarantee is "
            "empirical only", max_samples_per_ratio, bound_b, count,
        )
        count, empirical_only = int(max_samples_per_ratio), True
    logger.info("product estimate: %d ratios with %d samples each", len(pairs), count)

    ratios = []
    for (beta, beta_prime), stream in zip(pairs, rng.spawn(len(pairs))):
        ratio = sample_ratio(
            beta, beta_prime, sampler, count, stream, workers=workers, chunk_size=chunk_size,
        )
        if transcript is not None:
            transcript.record_call(
                'product', beta, count, value=None if ratio.is_zero else ratio.log_mean,
            )
        ratios.append(ratio)

    zeros = [i for i, ratio in enumerate(ratios) if ratio.is_zero]
    diagnostic = None
    log_estimate = telescope(
        known_log_z, [ratio.log_mean for ratio in ratios if not ratio.is_zero], anchor,
    )
    if zeros:
        i = zeros[0]
        diagnostic = (
            f"ratio {i} ({beta_to_json(pairs[i][0])} -> {beta_to_json(pairs[i][1])}) drew no "
            f"level 0 out of {count}: the estimate is zero."
        )
        logger.warning(diagnostic)
        log_estimate = NEG_INF if anchor is Anchor.ZERO_KNOWN else math.inf

    return CountEstimate(
        log_estimate=log_estimate, epsilon=epsilon, confidence=BASE_CONFIDENCE, anchor=anchor,
        known_log_z=known_log_z, bound_b=bound_b, samples_per_ratio=count, ratios=tuple(ratios),
        target_beta=target, empirical_only=empirical_only, zero=bool(zeros),
        diagnostic=diagnostic, schedule=schedule, transcript=transcript,
    )
