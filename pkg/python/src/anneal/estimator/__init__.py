"""
The telescoping product estimator, its confidence amplification and the counting pipeline.
"""

# IMPORTs local
from .ratio import RatioEstimate, log_ratio_weights, sample_ratio
from .product import CountEstimate, samples_per_ratio, telescope, product_estimate
from .amplify import median_confidence, runs_for_confidence, amplify
from .warm import WarmSampleCount, warm_sample_count
from .end_to_end import exact_partition_function, default_sampler, desk_bound, end_to_end

# API public
__all__ = [
    "RatioEstimate",
    "log_ratio_weights",
    "sample_ratio",
    "CountEstimate",
    "samples_per_ratio",
    "telescope",
    "product_estimate",
    "median_confidence",
    "runs_for_confidence",
    "amplify",
    "WarmSampleCount",
    "warm_sample_count",
    "exact_partition_function",
    "default_sampler",
    "desk_bound",
    "end_to_end",
]
