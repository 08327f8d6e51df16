"""
Log-space arithmetic on nonnegative weights. A weight w is carried as ln w, zero is NEG_INF.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs sub
from scipy.special import logsumexp

# IMPORTs local
from ..utils import NEG_INF, LogWeight

# TYPE ANNOTATIONs
import numpy.typing as npt

# API public
__all__ = ["check_log_weights", "log_sum", "log_add", "log_expm1", "log_mean"]



def check_log_weights(values: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """
    To check and convert log weights. The string '-inf' is accepted for zero weights.

    Args:
        values (npt.ArrayLike): the log weights.

    Raises:
        ValueError: if a value is NaN or +inf, or the input is not one-dimensional.

    Returns:
        npt.NDArray[np.float64]: the log weights as a float64 array.
    """

    objects = np.asarray(values, dtype=object)
    if objects.ndim != 1: raise ValueError("Log weights must be a one-dimensional sequence.")
    array = np.array([float(v) for v in objects], dtype=np.float64)
    if np.isnan(array).any(): raise ValueError("A log weight cannot be NaN.")
    if np.isposinf(array).any(): raise ValueError("A log weight cannot be +inf.")
    return array


def log_sum(values: npt.NDArray[np.float64]) -> LogWeight:
    """
    Stable ln Σ exp(values) with max extraction. Zero weights (NEG_INF) are skipped and an
    empty or all-zero input gives NEG_INF.
    """

    finite = values[np.isfinite(values)]
    if finite.size == 0: return NEG_INF
    return float(logsumexp(finite))


def log_add(a: LogWeight, b: LogWeight) -> LogWeight:
    """
    ln(e^a + e^b).
    """
    return float(np.logaddexp(a, b))


def log_expm1(a: float) -> float:
    """
    ln(e^a − 1) for a > 0, computed without materialising e^a.
    """

    if a <= 0: return NEG_INF
    return a + math.log(-math.expm1(-a))


def log_mean(values: npt.NDArray[np.float64]) -> LogWeight:
    """
    ln of the mean of exp(values).
    """

    if values.size == 0: raise ValueError("Cannot average an empty sequence.")
    return log_sum(values) - math.log(values.size)
