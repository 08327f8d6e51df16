"""
Contains numba-optimized functions to enumerate the configurations of the graph systems and
histogram their Hamiltonian levels.
"""
from __future__ import annotations

# IMPORTs alias
import numpy as np

# IMPORTs sub
from numba import njit

# API public
__all__ = [
    'labelling_histogram', 'matching_histogram', 'is_related', 'RELATION_EQUAL', 'RELATION_DIFFER',
    'RELATION_BOTH_ONE',
]

# RELATIONs counted by the Hamiltonian
RELATION_EQUAL = 0
RELATION_DIFFER = 1
RELATION_BOTH_ONE = 2



@njit(inline='always')
def is_related(a: int, b: int, relation: int) -> bool:
    """
    Whether the edge with endpoint labels a and b counts in the Hamiltonian.
    """

    if relation == RELATION_EQUAL: return a == b
    if relation == RELATION_DIFFER: return a != b
    return a == 1 and b == 1

@njit(nogil=True, cache=True)
def labelling_histogram(
        offsets: np.ndarray,
        neighbours: np.ndarray,
        labels: int,
        relation: int,
        prefix: np.ndarray,
        degree: int,
        track_ones: bool,
    ) -> np.ndarray:
    """
    To histogram H over every labelling in {0..labels−1}^V whose first vertices are fixed to
    'prefix'. The labellings are visited in odometer order (last vertex fastest) and H is updated
    from the neighbours of every relabelled vertex only.

    Args:
        offsets (np.ndarray): CSR offsets of the graph.
        neighbours (np.ndarray): CSR neighbour lists.
        labels (int): the number of labels per vertex.
        relation (int): which edges count in H (RELATION_*).
        prefix (np.ndarray): the fixed labels of vertices 0..len(prefix)−1.
        degree (int): the maximum level n.
        track_ones (bool): whether to also split the counts by the number of vertices labelled 1.

    Returns:
        np.ndarray: int64 counts of shape (n + 1, |V| + 1) if 'track_ones' else (n + 1, 1).
    """

    vertex_count = offsets.size - 1
    fixed = prefix.size
    state = np.zeros(vertex_count, dtype=np.int64)
    for v in range(fixed): state[v] = prefix[v]

    columns = vertex_count + 1 if track_ones else 1
    histogram = np.zeros((degree + 1, columns), dtype=np.int64)

    # LEVEL initial
    level = 0
    ones = 0
    for u in range(vertex_count):
        if state[u] == 1: ones += 1
        for index in range(offsets[u], offsets[u + 1]):
            w = neighbours[index]
            if u < w and is_related(state[u], state[w], relation): level += 1

    while True:
        histogram[level, ones if track_ones else 0] += 1

        # ODOMETER
        v = vertex_count - 1
        while v >= fixed:
            old = state[v]
            new = old + 1
            if new == labels: new = 0
            for index in range(offsets[v], offsets[v + 1]):
                w = neighbours[index]
                if is_related(new, state[w], relation): level += 1
                if is_related(old, state[w], relation): level -= 1
            if old == 1: ones -= 1
            if new == 1: ones += 1
            state[v] = new
            if new != 0: break
            v -= 1
        if v < fixed: break
    return histogram

@njit(nogil=True, cache=True)
def matching_histogram(
        heads: np.ndarray,
        tails: np.ndarray,
        vertex_count: int,
        degree: int,
    ) -> np.ndarray:
    """
    To count the matchings of a graph by size with an iterative include/exclude backtracking
    over the edges.

    Args:
        heads (np.ndarray): first endpoint of every edge.
        tails (np.ndarray): second endpoint of every edge.
        vertex_count (int): |V|.
        degree (int): the maximum matching size bound n.

    Returns:
        np.ndarray: int64 counts of the matchings of each size 0..n.
    """

    edge_count = heads.size
    histogram = np.zeros(degree + 1, dtype=np.int64)
    used = np.zeros(vertex_count, dtype=np.bool_)
    chosen = np.zeros(edge_count, dtype=np.bool_)
    # 0: untouched, 1: include branch taken, 2: both branches taken
    stage = np.zeros(edge_count + 1, dtype=np.int8)

    depth = 0
    size = 0
    while depth >= 0:
        if depth == edge_count:
            histogram[size] += 1
            depth -= 1
            continue

        u = heads[depth]
        v = tails[depth]
        if stage[depth] == 0:
            stage[depth] = 1
            if not used[u] and not used[v]:
                used[u] = True
                used[v] = True
                chosen[depth] = True
                size += 1
                depth += 1
                stage[depth] = 0
                continue
        if stage[depth] == 1:
            if chosen[depth]:
                used[u] = False
                used[v] = False
                chosen[depth] = False
                size -= 1
            stage[depth] = 2
            depth += 1
            stage[depth] = 0
            continue
        depth -= 1
    return histogram
