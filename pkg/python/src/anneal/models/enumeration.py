"""
Brute-force enumeration of desk-scale Gibbs systems into explicit partition functions.
"""
from __future__ import annotations

# IMPORTs
import math
import logging
import itertools

# IMPORTs alias
import numpy as np

# IMPORTs sub
from concurrent.futures import ThreadPoolExecutor
from scipy.special import logsumexp

# IMPORTs local
from .numba_functions import (
    labelling_histogram, matching_histogram, RELATION_EQUAL, RELATION_DIFFER, RELATION_BOTH_ONE,
)
from .systems import Colorings, Explicit, GibbsSystem, GraphSystem, IndependentSets, IsingGrid
from .systems import Matchings
from ..errors import EnumerationCapExceeded
from ..partfn.partition_function import PartitionFunction

# TYPE ANNOTATIONs
import numpy.typing as npt

# API public
__all__ = ["DEFAULT_CAP", "enumerate_coefficients", "level_counts"]

# CAP on visited configurations
DEFAULT_CAP = 2 ** 24

logger = logging.getLogger(__name__)



def enumerate_coefficients(
        system: GibbsSystem,
        cap: int = DEFAULT_CAP,
        workers: int = 1,
    ) -> PartitionFunction:
    """
    Exact coefficients a_i of the system by exhaustive enumeration, in log space.
    The result does not depend on 'workers'.

    Args:
        system (GibbsSystem): the system to enumerate.
        cap (int, optional): the largest configuration space accepted. Defaults to 2**24.
        workers (int, optional): threads used for the labelling systems. Defaults to 1.

    Raises:
        EnumerationCapExceeded: if the configuration space is above 'cap'.
        AssumptionViolation: if the enumerated a_0 is 0.

    Returns:
        PartitionFunction: the exact partition function.
    """

    if isinstance(system, Explicit): return system.partition_function
    size_estimate = math.exp(min(system.log_state_space, 700.))
    if size_estimate > cap: raise EnumerationCapExceeded(size_estimate, cap)

    counts = level_counts(system, workers=workers)
    with np.errstate(divide='ignore', invalid='ignore'):
        log_counts = np.log(counts.astype(np.float64))
        if isinstance(system, IndependentSets):
            sizes = np.arange(counts.shape[1], dtype=np.float64)
            log_coeffs = logsumexp(log_counts + sizes * math.log(system.fugacity), axis=1)
        else:
            log_coeffs = log_counts.reshape(counts.shape[0], -1)[:, 0]
    logger.debug(
        "enumerated %s: %.3g configurations, %d levels",
        system.kind, size_estimate, counts.shape[0],
    )
    return PartitionFunction(log_coeffs)


def level_counts(system: GibbsSystem, workers: int = 1) -> npt.NDArray[np.int64]:
    """
    Raw integer counts per level (for independent sets, per level and set size).
    """

    if isinstance(system, Matchings):
        graph = system.graph
        return matching_histogram(graph.heads, graph.tails, graph.vertex_count, system.degree)
    if not isinstance(system, GraphSystem):
        raise TypeError(f"Cannot enumerate a {type(system).__name__}.")

    relation = {
        Colorings: RELATION_EQUAL, IsingGrid: RELATION_DIFFER, IndependentSets: RELATION_BOTH_ONE,
    }[type(system)]
    track_ones = isinstance(system, IndependentSets)
    graph = system.graph
    labels = system.states_per_vertex

    # SHARDs over the labels of the first vertices
    fixed = 0
    if workers > 1:
        while fixed < graph.vertex_count and labels ** fixed < 4 * workers: fixed += 1
    prefixes = [
        np.asarray(prefix, dtype=np.int64)
        for prefix in itertools.product(range(labels), repeat=fixed)
    ]

    def shard(prefix: npt.NDArray[np.int64]) -> npt.NDArray[np.int64]:
        return labelling_histogram(
            graph.offsets, graph.neighbours, labels, relation, prefix, system.degree, track_ones,
        )

    if len(prefixes) == 1: return shard(prefixes[0])
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return np.sum(list(executor.map(shard, prefixes)), axis=0)
