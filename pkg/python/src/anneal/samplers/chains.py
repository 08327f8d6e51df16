"""
Single transitions of the Markov chains of the graph systems, the in-place multi-step advance
used by the samplers, and explicit transition matrices of small instances.
"""
from __future__ import annotations

# IMPORTs
import math
import logging
import itertools

# IMPORTs alias
import numpy as np

# IMPORTs local
from .numba_functions import heat_bath_steps, matching_steps
from ..errors import InvalidConfiguration
from ..models.graph import Graph
from ..models.numba_functions import (
    is_related, RELATION_EQUAL, RELATION_DIFFER, RELATION_BOTH_ONE,
)
from ..models.systems import Colorings, GibbsSystem, GraphSystem, IndependentSets, IsingGrid
from ..models.systems import Matchings
from ..utils import INF, Beta

# TYPE ANNOTATIONs
import numpy.typing as npt

# API public
__all__ = [
    "advance", "glauber_step", "matching_chain_step", "check_ergodicity", "TransitionMatrix",
    "glauber_transition_matrix", "matching_transition_matrix",
]

# STATEs accepted by the explicit transition matrices
MAX_MATRIX_STATES = 64

logger = logging.getLogger(__name__)



def _relation(system: GraphSystem) -> int:
    if isinstance(system, Colorings): return RELATION_EQUAL
    if isinstance(system, IsingGrid): return RELATION_DIFFER
    if isinstance(system, IndependentSets): return RELATION_BOTH_ONE
    raise InvalidConfiguration(f"No Glauber dynamics for {type(system).__name__}.")


def _log_fugacity(system: GraphSystem) -> float:
    return math.log(system.fugacity) if isinstance(system, IndependentSets) else 0.


def advance(
        system: GibbsSystem,
        state: npt.NDArray[np.int64],
        level: int,
        beta: Beta,
        steps: int,
        rng: np.random.Generator,
    ) -> int:
    """
    To advance the chain of the system 'steps' transitions at β, in place.

    Args:
        system (GibbsSystem): a graph system or matchings.
        state (npt.NDArray[np.int64]): labels, or the mate array for matchings. Updated in place.
        level (int): H(state) before the transitions.
        beta (Beta): the inverse temperature.
        steps (int): the number of transitions.
        rng (np.random.Generator): the random stream.

    Returns:
        int: H(state) after the transitions.
    """

    infinite = beta is INF
    finite_beta = 0. if infinite else float(beta)
    if isinstance(system, Matchings):
        graph = system.graph
        return int(matching_steps(
            state, graph.heads, graph.tails, finite_beta, infinite, steps, level, rng,
        ))
    if isinstance(system, GraphSystem):
        graph = system.graph
        return int(heat_bath_steps(
            state, graph.offsets, graph.neighbours, system.states_per_vertex, _relation(system),
            finite_beta, infinite, _log_fugacity(system), steps, level, rng,
        ))
    raise InvalidConfiguration(f"{type(system).__name__} has no Markov chain.")


def glauber_step(
        system: GraphSystem,
        state: npt.ArrayLike,
        beta: Beta,
        rng: np.random.Generator,
    ) -> npt.NDArray[np.int64]:
    """
    One heat-bath single-site update of a colouring, Ising or independent-set configuration.
    The input is left untouched.
    """

    new_state = system.check_state(state).copy()
    advance(system, new_state, system.hamiltonian(new_state), beta, 1, rng)
    return new_state


def matching_chain_step(
        graph: Graph,
        state: npt.ArrayLike,
        beta: Beta,
        rng: np.random.Generator,
    ) -> npt.NDArray[np.int64]:
    """
    One transition of the matching chain with λ = e^{-β}, on a mate array. The input is left
    untouched.
    """

    system = Matchings(graph)
    new_state = system.check_state(state).copy()
    advance(system, new_state, system.hamiltonian(new_state), beta, 1, rng)
    return new_state


def check_ergodicity(system: GibbsSystem) -> bool:
    """
    Whether the Glauber dynamics is known to be ergodic at every β; logs a warning for colourings
    with k < Δ + 2.
    """

    if isinstance(system, Colorings):
        delta = system.graph.max_degree
        if system.k < delta + 2:
            logger.warning(
                "Glauber dynamics for %d-colourings with max degree %d (k < Δ+2) may not be "
                "ergodic at large β.", system.k, delta,
            )
            return False
    return True



class TransitionMatrix:
    """
    The explicit transition matrix P of a chain on an enumerated state space, with the Gibbs
    distribution π it targets.
    """

    def __init__(
            self,
            states: list[tuple[int, ...]],
            matrix: npt.NDArray[np.float64],
            log_weights: npt.NDArray[np.float64],
        ) -> None:
        self._states = states
        self._matrix = matrix
        self._gibbs = np.exp(log_weights - np.logaddexp.reduce(log_weights))

    @property
    def states(self) -> list[tuple[int, ...]]:
        return self._states

    @property
    def matrix(self) -> npt.NDArray[np.float64]:
        return self._matrix

    @property
    def gibbs(self) -> npt.NDArray[np.float64]:
        """
        π(x) ∝ e^{-βH(x)} (times the fugacity weight).
        """
        return self._gibbs

    def detailed_balance_gap(self) -> float:
        """
        max |π(x)P(x,y) − π(y)P(y,x)|.
        """

        flow = self._gibbs[:, None] * self._matrix
        return float(np.abs(flow - flow.T).max())

    def stationary(self, iterations: int = 100_000, tolerance: float = 1e-15) -> np.ndarray:
        """
        The fixed point of π ↦ πP by power iteration from the uniform distribution.
        """

        distribution = np.full(len(self._states), 1. / len(self._states))
        for _ in range(iterations):
            updated = distribution @ self._matrix
            if np.abs(updated - distribution).max() < tolerance: return updated
            distribution = updated
        return distribution


def glauber_transition_matrix(system: GraphSystem, beta: float) -> TransitionMatrix:
    """
    The heat-bath Glauber transition matrix of a small labelling system at a finite β.

    Raises:
        ValueError: if the system has more than 64 configurations.
    """

    labels = system.states_per_vertex
    vertex_count = system.graph.vertex_count
    if labels ** vertex_count > MAX_MATRIX_STATES:
        raise ValueError(f"{labels}^{vertex_count} states is above {MAX_MATRIX_STATES}.")
    relation = _relation(system)
    log_fugacity = _log_fugacity(system)
    bias = np.zeros(labels)
    if relation == RELATION_BOTH_ONE: bias[1] = log_fugacity

    offsets, adjacency = system.graph.offsets, system.graph.neighbours
    states = list(itertools.product(range(labels), repeat=vertex_count))
    index = {state: i for i, state in enumerate(states)}
    matrix = np.zeros((len(states), len(states)))
    log_weights = np.empty(len(states))
    for i, state in enumerate(states):
        array = np.asarray(state, dtype=np.int64)
        log_weights[i] = (
            -beta * system.hamiltonian(array) + log_fugacity * np.count_nonzero(array == 1)
        )
        for v in range(vertex_count):
            neighbours = adjacency[offsets[v]:offsets[v + 1]]
            energies = np.array([
                sum(is_related(c, int(state[w]), relation) for w in neighbours)
                for c in range(labels)
            ], dtype=np.float64)
            weights = np.exp(bias - beta * (energies - energies.min()))
            weights /= weights.sum()
            for c in range(labels):
                target = state[:v] + (c,) + state[v + 1:]
                matrix[i, index[target]] += weights[c] / vertex_count
    return TransitionMatrix(states, matrix, log_weights)


def matching_transition_matrix(graph: Graph, beta: float) -> TransitionMatrix:
    """
    The transition matrix of the matching chain at a finite β. States are the matchings as sorted
    edge tuples.

    Raises:
        ValueError: if the graph has more than 64 matchings.
    """

    system = Matchings(graph)
    states: list[tuple[int, ...]] = []
    for r in range(len(graph.edges) + 1):
        for subset in itertools.combinations(range(len(graph.edges)), r):
            covered = [x for e in subset for x in graph.edges[e]]
            if len(covered) == len(set(covered)): states.append(subset)
            if len(states) > MAX_MATRIX_STATES:
                raise ValueError(f"The graph has more than {MAX_MATRIX_STATES} matchings.")
    index = {state: i for i, state in enumerate(states)}
    edge_index = {edge: e for e, edge in enumerate(graph.edges)}
    add = .5 * min(1., math.exp(-beta))

    matrix = np.zeros((len(states), len(states)))
    log_weights = np.array([-beta * len(state) for state in states])
    for i, state in enumerate(states):
        mate = system.mate_from_edges([graph.edges[e] for e in state])
        for e, (u, v) in enumerate(graph.edges):
            if mate[u] == v:
                target, probability = tuple(x for x in state if x != e), .5
            elif mate[u] == -1 and mate[v] == -1:
                target, probability = tuple(sorted(state + (e,))), add
            elif mate[u] == -1 or mate[v] == -1:
                covered = v if mate[u] == -1 else u
                old = edge_index[(min(covered, mate[covered]), max(covered, mate[covered]))]
                target = tuple(sorted([x for x in state if x != old] + [e]))
                probability = .5
            else:
                continue
            matrix[i, index[target]] += probability / len(graph.edges)
        matrix[i, i] += 1. - matrix[i].sum()
    return TransitionMatrix(states, matrix, log_weights)
