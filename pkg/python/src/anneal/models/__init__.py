"""
Combinatorial Gibbs systems, cooling schedules and desk-scale enumeration.
"""

# IMPORTs local
from .graph import Graph
from .schedule import Move, CoolingSchedule
from .systems import (
    Anchor, GibbsSystem, GraphSystem, Colorings, IsingGrid, IndependentSets, Matchings, Explicit,
    hamiltonian,
)
from .enumeration import DEFAULT_CAP, enumerate_coefficients, level_counts

# API public
__all__ = [
    "Graph",
    "Move",
    "CoolingSchedule",
    "Anchor",
    "GibbsSystem",
    "GraphSystem",
    "Colorings",
    "IsingGrid",
    "IndependentSets",
    "Matchings",
    "Explicit",
    "hamiltonian",
    "DEFAULT_CAP",
    "enumerate_coefficients",
    "level_counts",
]
