"""
Gibbs systems: colourings, the Ising grid, independent sets, matchings and explicit partition
functions. Each one exposes its degree n, ln A, the anchor of its telescoping product and its
Hamiltonian.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs sub
from abc import ABC, abstractmethod
from enum import Enum

# IMPORTs local
from .graph import Graph
from ..errors import InvalidConfiguration
from ..partfn.partition_function import PartitionFunction

# TYPE ANNOTATIONs
from typing import Any
import numpy.typing as npt

# API public
__all__ = [
    "Anchor", "GibbsSystem", "GraphSystem", "Colorings", "IsingGrid", "IndependentSets",
    "Matchings", "Explicit", "hamiltonian",
]



class Anchor(str, Enum):
    """
    Which end of the telescoping product Z(∞) = Z(0) Π Z(β_{i+1})/Z(β_i) is known analytically.
    """

    ZERO_KNOWN = 'zero_known'
    INFINITY_KNOWN = 'infinity_known'


class GibbsSystem(ABC):
    """
    A counting instance: configurations σ with an integer Hamiltonian H(σ) in [0, n], weighted
    by e^{-βH(σ)} (times a fugacity for independent sets).
    """

    kind: str = ''

    @property
    @abstractmethod
    def degree(self) -> int:
        """
        The degree n of Z.
        """

    @property
    @abstractmethod
    def ln_a(self) -> float:
        """
        ln A = ln Z(0), or an analytic upper bound of it for INFINITY_KNOWN systems.
        """

    @property
    def anchor(self) -> Anchor:
        return Anchor.ZERO_KNOWN

    @property
    def known_log_z(self) -> float:
        """
        ln Z at the known end: ln Z(0) for ZERO_KNOWN systems, ln Z(∞) otherwise.
        """
        return self.ln_a

    @property
    def log_state_space(self) -> float:
        """
        ln of the number of configurations an exhaustive enumeration visits.
        """
        return self.ln_a

    @abstractmethod
    def check_state(self, state: Any) -> Any:
        """
        To check and normalise a configuration.

        Raises:
            InvalidConfiguration: if the configuration is not valid for the system.
        """

    @abstractmethod
    def _hamiltonian(self, state: Any) -> int: ...

    def hamiltonian(self, state: Any) -> int:
        """
        H(σ), an integer in [0, n].

        Raises:
            InvalidConfiguration: if σ is not valid for the system.
        """
        return self._hamiltonian(self.check_state(state))

    def initial_state(self) -> Any:
        """
        The fixed feasible state cold-started chains start from.
        """
        raise InvalidConfiguration(f"{type(self).__name__} has no Markov chain.")

    def default_tau2(self) -> int:
        """
        Default number of chain steps per sample.
        """
        raise InvalidConfiguration(f"{type(self).__name__} has no Markov chain.")

    @abstractmethod
    def to_json(self) -> dict[str, Any]: ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, ln_a={self.ln_a:.6g})"


class GraphSystem(GibbsSystem):
    """
    A system whose configurations are vertex labellings of a graph with values in 0..q−1.
    """

    def __init__(self, graph: Graph, states_per_vertex: int) -> None:
        self._graph = graph
        self._states_per_vertex = states_per_vertex

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def states_per_vertex(self) -> int:
        return self._states_per_vertex

    @property
    def degree(self) -> int:
        return self._graph.edge_count

    @property
    def log_state_space(self) -> float:
        return self._graph.vertex_count * math.log(self._states_per_vertex)

    def check_state(self, state: Any) -> npt.NDArray[np.int64]:
        array = np.asarray(state, dtype=np.int64)
        if array.shape != (self._graph.vertex_count,):
            raise InvalidConfiguration(
                f"A configuration labels the {self._graph.vertex_count} vertices, "
                f"got shape {array.shape}."
            )
        if array.size and (array.min() < 0 or array.max() >= self._states_per_vertex):
            raise InvalidConfiguration(
                f"Labels must lie in 0..{self._states_per_vertex - 1}."
            )
        return array

    def default_tau2(self) -> int:
        vertex_count = max(self._graph.vertex_count, 2)
        return max(1, math.ceil(vertex_count * math.log(vertex_count)))


class Colorings(GraphSystem):
    """
    k-labellings of a graph; H(σ) is the number of monochromatic edges, n = |E| and
    A = k^{|V|}. Z(∞) is the number of proper k-colourings.
    """

    kind = 'colorings'

    def __init__(self, graph: Graph, k: int) -> None:
        if k < 1: raise ValueError(f"The number of colours k must be >= 1, got {k}.")
        super().__init__(graph, k)
        self._k = int(k)

    @property
    def k(self) -> int:
        return self._k

    @property
    def ln_a(self) -> float:
        return self._graph.vertex_count * math.log(self._k)

    def _hamiltonian(self, state: npt.NDArray[np.int64]) -> int:
        return int(np.count_nonzero(state[self._graph.heads] == state[self._graph.tails]))

    def initial_state(self) -> npt.NDArray[np.int64]:
        """
        The networkx greedy colouring, folded into k colours when it needs more.
        """
        return self._graph.greedy_coloring() % self._k

    def default_tau2(self) -> int:
        vertex_count = max(self._graph.vertex_count, 2)
        return max(1, math.ceil(self._k * vertex_count * math.log(vertex_count)))

    def to_json(self) -> dict[str, Any]:
        return {"type": self.kind, "k": self._k, "graph": self._graph.to_json()}


class IsingGrid(GraphSystem):
    """
    Ferromagnetic Ising model on the side × side grid with spins 0/1; H(σ) is the number of
    disagreeing edges, A = 2^{|V|}.
    """

    kind = 'ising_grid'

    def __init__(self, side: int) -> None:
        if side < 1: raise ValueError(f"The grid side must be >= 1, got {side}.")
        super().__init__(Graph.grid(side), 2)
        self._side = int(side)

    @property
    def side(self) -> int:
        return self._side

    @property
    def ln_a(self) -> float:
        return self._graph.vertex_count * math.log(2.)

    def _hamiltonian(self, state: npt.NDArray[np.int64]) -> int:
        return int(np.count_nonzero(state[self._graph.heads] != state[self._graph.tails]))

    def initial_state(self) -> npt.NDArray[np.int64]:
        return np.zeros(self._graph.vertex_count, dtype=np.int64)

    def to_json(self) -> dict[str, Any]:
        return {"type": self.kind, "side": self._side}


class IndependentSets(GraphSystem):
    """
    All vertex subsets σ weighted by λ^{|σ|} e^{-βH(σ)}, H(σ) being the number of edges inside σ
    and n = |E|. Z(0) = (1 + λ)^{|V|} and Z(∞) = Z_G(λ), the hard-core partition function (the
    number of independent sets for λ = 1). The empty set keeps a_0 >= 1.
    """

    kind = 'independent_sets'

    def __init__(self, graph: Graph, fugacity: float = 1.) -> None:
        if not fugacity > 0: raise ValueError(f"The fugacity must be positive, got {fugacity}.")
        super().__init__(graph, 2)
        self._fugacity = float(fugacity)

    @property
    def fugacity(self) -> float:
        return self._fugacity

    @property
    def ln_a(self) -> float:
        return self._graph.vertex_count * math.log1p(self._fugacity)

    @property
    def log_state_space(self) -> float:
        return self._graph.vertex_count * math.log(2.)

    def _hamiltonian(self, state: npt.NDArray[np.int64]) -> int:
        return int(np.count_nonzero(
            (state[self._graph.heads] == 1) & (state[self._graph.tails] == 1)
        ))

    def initial_state(self) -> npt.NDArray[np.int64]:
        return np.zeros(self._graph.vertex_count, dtype=np.int64)

    def to_json(self) -> dict[str, Any]:
        return {"type": self.kind, "fugacity": self._fugacity, "graph": self._graph.to_json()}


class Matchings(GibbsSystem):
    """
    Matchings M of a graph weighted by λ^{|M|} with λ = e^{-β}, H(M) = |M|.
    Z(0) is the number of matchings and Z(∞) = 1 (the empty matching), so the product runs from
    the known end ∞. ln A is the analytic upper bound |E| ln 2 and n = min(|E|, ⌊|V|/2⌋).
    A matching is stored as its 'mate' array: mate[v] is the partner of v, or −1.
    """

    kind = 'matchings'

    def __init__(self, graph: Graph) -> None:
        self._graph = graph
        self._edge_set = set(graph.edges)

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def degree(self) -> int:
        return min(self._graph.edge_count, self._graph.vertex_count // 2)

    @property
    def ln_a(self) -> float:
        return self._graph.edge_count * math.log(2.)

    @property
    def anchor(self) -> Anchor:
        return Anchor.INFINITY_KNOWN

    @property
    def known_log_z(self) -> float:
        return 0.

    def mate_from_edges(self, edges: list[tuple[int, int]]) -> npt.NDArray[np.int64]:
        """
        The mate array of a matching given as a list of edges.
        """

        mate = np.full(self._graph.vertex_count, -1, dtype=np.int64)
        for u, v in edges:
            if mate[u] != -1 or mate[v] != -1:
                raise InvalidConfiguration(f"Edges share a vertex at ({u}, {v}).")
            mate[u], mate[v] = v, u
        return self.check_state(mate)

    def check_state(self, state: Any) -> npt.NDArray[np.int64]:
        mate = np.asarray(state, dtype=np.int64)
        if mate.shape != (self._graph.vertex_count,):
            raise InvalidConfiguration(
                f"A matching is a mate array of size {self._graph.vertex_count}, "
                f"got shape {mate.shape}."
            )
        for u, v in enumerate(mate):
            if v == -1: continue
            if not 0 <= v < mate.size or mate[v] != u:
                raise InvalidConfiguration(f"mate[{u}] = {v} is not symmetric.")
            if (min(u, v), max(u, v)) not in self._edge_set:
                raise InvalidConfiguration(f"({u}, {v}) is not an edge of the graph.")
        return mate

    def _hamiltonian(self, state: npt.NDArray[np.int64]) -> int:
        return int(np.count_nonzero(state >= 0) // 2)

    def initial_state(self) -> npt.NDArray[np.int64]:
        """
        The empty matching, exact sample at β = ∞.
        """
        return np.full(self._graph.vertex_count, -1, dtype=np.int64)

    def default_tau2(self) -> int:
        return max(1, self._graph.vertex_count * self._graph.edge_count)

    def to_json(self) -> dict[str, Any]:
        return {"type": self.kind, "graph": self._graph.to_json()}


class Explicit(GibbsSystem):
    """
    An explicitly given partition function; configurations are the levels themselves.
    """

    kind = 'explicit'

    def __init__(self, z: PartitionFunction) -> None:
        self._z = z

    @property
    def partition_function(self) -> PartitionFunction:
        return self._z

    @property
    def degree(self) -> int:
        return self._z.degree

    @property
    def ln_a(self) -> float:
        return self._z.ln_a

    def check_state(self, state: Any) -> int:
        level = int(state)
        if not 0 <= level <= self._z.degree:
            raise InvalidConfiguration(f"Level {level} is outside 0..{self._z.degree}.")
        if not np.isfinite(self._z.log_coeffs[level]):
            raise InvalidConfiguration(f"Level {level} has no configuration (a_{level} = 0).")
        return level

    def _hamiltonian(self, state: int) -> int:
        return state

    def to_json(self) -> dict[str, Any]:
        return self._z.to_json()


def hamiltonian(system: GibbsSystem, state: Any) -> int:
    """
    H(σ) for the configuration σ of the system.
    """
    return system.hamiltonian(state)
