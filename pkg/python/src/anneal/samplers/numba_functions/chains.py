"""
Contains numba-optimized Markov chain transitions: heat-bath Glauber dynamics for the labelling
systems and the add/remove/slide chain on matchings. Only 'Generator.random' is used inside the
kernels.
"""
from __future__ import annotations

# IMPORTs
import math

# IMPORTs alias
import numpy as np

# IMPORTs sub
from numba import njit

# IMPORTs local
from ...models.numba_functions import is_related, RELATION_BOTH_ONE

# API public
__all__ = ['heat_bath_steps', 'matching_steps']



@njit(nogil=True)
def heat_bath_steps(
        state: np.ndarray,
        offsets: np.ndarray,
        neighbours: np.ndarray,
        labels: int,
        relation: int,
        beta: float,
        beta_infinite: bool,
        log_fugacity: float,
        steps: int,
        level: int,
        rng: np.random.Generator,
    ) -> int:
    """
    To run 'steps' single-site heat-bath updates in place. A uniformly chosen vertex gets label c
    with probability ∝ exp(bias_c − β(e_c − min e)), e_c being the number of its edges that would
    count in H, bias_1 = ln λ for independent sets and 0 otherwise. At β = ∞ the label is drawn
    among the minimisers of e_c only.

    Args:
        state (np.ndarray): the labels, updated in place.
        offsets (np.ndarray): CSR offsets of the graph.
        neighbours (np.ndarray): CSR neighbour lists.
        labels (int): the number of labels per vertex.
        relation (int): which edges count in H.
        beta (float): the inverse temperature (ignored when 'beta_infinite').
        beta_infinite (bool): whether β = ∞.
        log_fugacity (float): ln λ, only used for independent sets.
        steps (int): the number of updates.
        level (int): H(state) before the updates.
        rng (np.random.Generator): the random stream.

    Returns:
        int: H(state) after the updates.
    """

    vertex_count = state.size
    if vertex_count == 0: return level
    counts = np.zeros(labels, dtype=np.int64)
    weights = np.zeros(labels, dtype=np.float64)

    for _ in range(steps):
        v = min(int(rng.random() * vertex_count), vertex_count - 1)

        # ENERGY per label
        for c in range(labels): counts[c] = 0
        for index in range(offsets[v], offsets[v + 1]):
            label = state[neighbours[index]]
            for c in range(labels):
                if is_related(c, label, relation): counts[c] += 1
        minimum = counts.min()

        # WEIGHTs
        total = 0.
        for c in range(labels):
            bias = log_fugacity if (relation == RELATION_BOTH_ONE and c == 1) else 0.
            if beta_infinite:
                weights[c] = math.exp(bias) if counts[c] == minimum else 0.
            else:
                weights[c] = math.exp(bias - beta * (counts[c] - minimum))
            total += weights[c]

        # DRAW
        threshold = rng.random() * total
        chosen = -1
        cumulative = 0.
        for c in range(labels):
            cumulative += weights[c]
            if threshold < cumulative:
                chosen = c
                break
        if chosen == -1:
            for c in range(labels):
                if weights[c] > 0.: chosen = c

        level += counts[chosen] - counts[state[v]]
        state[v] = chosen
    return level

@njit(nogil=True)
def matching_steps(
        mate: np.ndarray,
        heads: np.ndarray,
        tails: np.ndarray,
        beta: float,
        beta_infinite: bool,
        steps: int,
        size: int,
        rng: np.random.Generator,
    ) -> int:
    """
    To run 'steps' transitions of the matching chain in place, with weight λ^{|M|}, λ = e^{-β}.
    An edge e = (u, v) is chosen uniformly and the proposal is: remove e if e ∈ M, add e if u
    and v are both free, slide e in place of the edge covering v (resp. u) if only u (resp. v)
    is free, stay otherwise. The proposal is accepted with probability min(1, w(M′)/w(M))/2.

    Args:
        mate (np.ndarray): the partner of every vertex or −1, updated in place.
        heads (np.ndarray): first endpoint of every edge.
        tails (np.ndarray): second endpoint of every edge.
        beta (float): the inverse temperature (ignored when 'beta_infinite').
        beta_infinite (bool): whether β = ∞ (no edge is ever added).
        steps (int): the number of transitions.
        size (int): |M| before the transitions.
        rng (np.random.Generator): the random stream.

    Returns:
        int: |M| after the transitions.
    """

    edge_count = heads.size
    if edge_count == 0: return size
    if beta_infinite:
        add_probability = 0.
    else:
        add_probability = .5 * min(1., math.exp(-beta))

    for _ in range(steps):
        e = min(int(rng.random() * edge_count), edge_count - 1)
        u = heads[e]
        v = tails[e]
        r = rng.random()
        if mate[u] == v:
            if r < .5:
                mate[u] = -1
                mate[v] = -1
                size -= 1
        elif mate[u] == -1 and mate[v] == -1:
            if r < add_probability:
                mate[u] = v
                mate[v] = u
                size += 1
        elif mate[u] == -1:
            if r < .5:
                mate[mate[v]] = -1
                mate[u] = v
                mate[v] = u
        elif mate[v] == -1:
            if r < .5:
                mate[mate[u]] = -1
                mate[u] = v
                mate[v] = u
    return size
