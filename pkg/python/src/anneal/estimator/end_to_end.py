"""
The counting pipeline: the adaptive schedule of the instance, then the product estimate along
it, both recorded in one transcript.
"""
from __future__ import annotations

# IMPORTs
import math
import logging

# IMPORTs alias
import numpy as np

# IMPORTs local
from .amplify import amplify
from .product import CountEstimate, product_estimate
from ..errors import EnumerationCapExceeded
from ..models.enumeration import DEFAULT_CAP, enumerate_coefficients
from ..models.schedule import CoolingSchedule
from ..models.systems import GibbsSystem
from ..partfn.partition_function import PartitionFunction
from ..partfn.verification import verify_schedule
from ..samplers.base import ChainConfig, HamiltonianSampler
from ..samplers.exact import ExactSampler
from ..samplers.mcmc import MCMCSampler
from ..schedules.adaptive.algorithm import print_cooling_schedule
from ..schedules.adaptive.budget import total_sample_accuracy, total_sample_budget
from ..schedules.adaptive.config import AdaptiveConfig
from ..utils import Beta

# API public
__all__ = ["exact_partition_function", "default_sampler", "desk_bound", "end_to_end"]

logger = logging.getLogger(__name__)



def exact_partition_function(
        system: GibbsSystem,
        cap: int = DEFAULT_CAP,
        workers: int = 1,
    ) -> PartitionFunction | None:
    """
    The enumerated partition function of the system, or None when it is above the cap.
    """

    try:
        return enumerate_coefficients(system, cap, workers)
    except EnumerationCapExceeded as error:
        logger.info("no exact oracle: %s", error)
        return None


def default_sampler(
        system: GibbsSystem,
        z: PartitionFunction | None = None,
        seed: int = 0,
    ) -> HamiltonianSampler:
    """
    The exact sampler when the partition function is known, the cold-started chain otherwise.
    """

    if z is not None: return ExactSampler(z)
    return MCMCSampler(system, ChainConfig(seed=seed))


def desk_bound(z: PartitionFunction, schedule: CoolingSchedule, config: AdaptiveConfig) -> float:
    """
    The worst exact Chebyshev ratio of the schedule (at least 1). Logs a warning when it is above
    the configured bound.
    """

    verification = verify_schedule(z, schedule, config.chebyshev_bound)
    if not verification.passed:
        logger.warning(
            "schedule fails B = %.4g at steps %s", config.chebyshev_bound, verification.failures,
        )
    return max(1., verification.worst_ratio)


def end_to_end(
        system: GibbsSystem,
        config: AdaptiveConfig,
        epsilon: float,
        rng: np.random.Generator | None = None,
        *,
        seed: int | None = None,
        sampler: HamiltonianSampler | None = None,
        target_beta: Beta | None = None,
        runs: int = 1,
        max_samples_per_ratio: int | None = None,
        cap: int = DEFAULT_CAP,
    ) -> CountEstimate:
    """
    Counts with the whole pipeline: the adaptive schedule, then the product estimate (the median
    of 'runs' of them). In faithful mode B = 3·10⁶; in desk mode B is the worst exact ratio of
    the schedule when the instance is enumerable. The two phases get independent child streams.

    Args:
        system (GibbsSystem): the instance.
        config (AdaptiveConfig): the run configuration.
        epsilon (float): the relative accuracy, in (0, 1).
        rng (np.random.Generator | None, optional): the random stream. Defaults to a generator
            seeded with 'seed'.
        seed (int | None, optional): the seed recorded in the transcript. Defaults to None.
        sampler (HamiltonianSampler | None, optional): the level oracle. Defaults to
            'default_sampler'.
        target_beta (Beta | None, optional): the β at which Z is wanted. Defaults to None.
        runs (int, optional): independent product estimates whose median is returned.
            Defaults to 1.
        max_samples_per_ratio (int | None, optional): caps the draws per ratio. Defaults to None.
        cap (int, optional): the enumeration cap of the exact oracle. Defaults to DEFAULT_CAP.

    Raises:
        AssumptionViolation: in faithful mode, if the technical assumptions fail.
        RunFailure: if the schedule run aborts.

    Returns:
        CountEstimate: the estimate, carrying the schedule and the transcript.
    """

    if runs < 1: raise ValueError(f"runs must be >= 1, got {runs}.")
    rng = rng if rng is not None else np.random.default_rng(seed)
    schedule_stream, product_stream = rng.spawn(2)

    z = exact_partition_function(system, cap, config.workers)
    if sampler is None: sampler = default_sampler(system, z, seed or 0)

    n, ln_a = system.degree, system.ln_a
    if config.faithful and n >= 2 and ln_a > 1.:
        logger.info(
            "faithful budget: %.4g samples in total at variation distance %.4g",
            total_sample_budget(n, ln_a, epsilon), total_sample_accuracy(n, ln_a, epsilon),
        )

    schedule, transcript = print_cooling_schedule(
        system, sampler, config, schedule_stream, seed=seed,
    )
    if config.faithful:
        bound_b = config.chebyshev_bound
    elif z is not None:
        bound_b = desk_bound(z, schedule, config)
        logger.info("desk B from the exact oracle: %.6g", bound_b)
    else:
        bound_b = config.chebyshev_bound
        logger.warning("no exact oracle: the desk run keeps B = %.4g", bound_b)

    estimates = [
        product_estimate(
            schedule, sampler, bound_b, epsilon, stream,
            known_log_z=system.known_log_z, anchor=system.anchor, target_beta=target_beta,
            max_samples_per_ratio=max_samples_per_ratio, workers=config.workers,
            chunk_size=config.chunk_size, transcript=transcript,
        )
        for stream in product_stream.spawn(runs)
    ]
    estimate = amplify(estimates)
    logger.info(
        "end-to-end estimate ln Z = %.6g (confidence %.4g, Q = %d)",
        estimate.log_estimate, estimate.confidence, transcript.total_samples,
    )
    if not math.isfinite(estimate.log_estimate): logger.warning("the estimate is degenerate")
    return estimate
