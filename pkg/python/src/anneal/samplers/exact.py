"""
Exact sampling of the Hamiltonian level from an explicit partition function.
"""
from __future__ import annotations

# IMPORTs alias
import numpy as np

# IMPORTs local
from ..partfn.partition_function import PartitionFunction
from ..utils import INF, Beta, LevelArray

# API public
__all__ = ["ExactSampler", "exact_sampler"]



class ExactSampler:
    """
    Samples level i with probability a_i e^{-iβ} / Z(β) by inverse CDF. At β = ∞ it always
    returns level 0. Stateless, so it can be shared between threads.
    """

    stateful = False

    def __init__(self, z: PartitionFunction) -> None:
        self._z = z
        self._support = np.flatnonzero(np.isfinite(z.log_coeffs))

    @property
    def degree(self) -> int:
        return self._z.degree

    @property
    def partition_function(self) -> PartitionFunction:
        return self._z

    def probabilities(self, beta: Beta) -> np.ndarray:
        """
        The level distribution μ_β(H = i).
        """
        return np.exp(self._z.level_log_probabilities(beta))

    def sample(self, beta: Beta, size: int, rng: np.random.Generator) -> LevelArray:
        if beta is INF: return np.zeros(size, dtype=np.int64)
        cdf = np.cumsum(self.probabilities(beta))
        levels = np.searchsorted(cdf, rng.random(size) * cdf[-1], side='right')
        return np.minimum(levels, self._support[-1]).astype(np.int64)

    def __repr__(self) -> str:
        return f"ExactSampler({self._z!r})"


def exact_sampler(z: PartitionFunction) -> ExactSampler:
    """
    The exact Hamiltonian sampler of an explicit partition function.
    """
    return ExactSampler(z)
