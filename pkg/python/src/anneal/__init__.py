"""
Contains the public python API of the anneal library: exact log-space partition functions, the
Gibbs systems, their level samplers, cooling schedules (non-adaptive, theoretical and adaptive)
and the annealed product estimator.
"""

# IMPORTs local
from .utils import INF
from .errors import (
    AnnealError, AssumptionViolation, MalformedSchedule, InvalidConfiguration,
    EnumerationCapExceeded, ContractViolation, RunFailure, HeavyNotFound, SampleStarvation,
)
from .partfn import PartitionFunction, verify_schedule, verify_reversible
from .models import (
    Graph, Move, CoolingSchedule, Anchor, Colorings, IsingGrid, IndependentSets, Matchings,
    Explicit, enumerate_coefficients,
)
from .samplers import ChainConfig, ExactSampler, MCMCSampler
from .schedules import (
    AdaptiveConfig, uniform_schedule, bezakova_schedule, augment_reversible, existence_schedule,
    greedy_schedule, pl_approx, print_cooling_schedule,
)
from .estimator import CountEstimate, product_estimate, amplify, end_to_end

# EXPORT
__all__ = [
    "INF",
    "AnnealError",
    "AssumptionViolation",
    "MalformedSchedule",
    "InvalidConfiguration",
    "EnumerationCapExceeded",
    "ContractViolation",
    "RunFailure",
    "HeavyNotFound",
    "SampleStarvation",
    "PartitionFunction",
    "verify_schedule",
    "verify_reversible",
    "Graph",
    "Move",
    "CoolingSchedule",
    "Anchor",
    "Colorings",
    "IsingGrid",
    "IndependentSets",
    "Matchings",
    "Explicit",
    "enumerate_coefficients",
    "ChainConfig",
    "ExactSampler",
    "MCMCSampler",
    "AdaptiveConfig",
    "uniform_schedule",
    "bezakova_schedule",
    "augment_reversible",
    "existence_schedule",
    "greedy_schedule",
    "pl_approx",
    "print_cooling_schedule",
    "CountEstimate",
    "product_estimate",
    "amplify",
    "end_to_end",
]
