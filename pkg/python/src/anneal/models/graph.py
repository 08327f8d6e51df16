"""
Simple undirected graphs with vertices 0..n−1, stored as sorted edge arrays and a CSR adjacency
for the numba kernels.
"""
from __future__ import annotations

# IMPORTs alias
import numpy as np
import networkx as nx

# TYPE ANNOTATIONs
from typing import Any, Iterable
import numpy.typing as npt

# API public
__all__ = ["Graph"]



class Graph:
    """
    A simple graph G = (V, E) without self-loops or duplicate edges. Edges are stored as (u, v)
    with u < v, sorted.
    """

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int] | list[int]]) -> None:
        """
        Builds and checks the graph.

        Args:
            vertex_count (int): |V|, the vertices being 0..|V|−1.
            edges (Iterable[tuple[int, int] | list[int]]): the unordered vertex pairs.

        Raises:
            ValueError: on a self-loop, a duplicate edge or an out-of-range vertex.
        """

        if vertex_count < 0: raise ValueError(f"vertex_count must be >= 0, got {vertex_count}.")
        self._vertex_count = int(vertex_count)

        seen: set[tuple[int, int]] = set()
        for edge in edges:
            if len(edge) != 2: raise ValueError(f"An edge is a vertex pair, got {edge!r}.")
            u, v = int(edge[0]), int(edge[1])
            if u == v: raise ValueError(f"Self-loop on vertex {u}.")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"Edge ({u}, {v}) has a vertex outside 0..{vertex_count - 1}.")
            key = (min(u, v), max(u, v))
            if key in seen: raise ValueError(f"Duplicate edge {key}.")
            seen.add(key)
        self._edges = tuple(sorted(seen))

        # ARRAYs
        pairs = np.asarray(self._edges, dtype=np.int64).reshape(-1, 2)
        self._heads = np.ascontiguousarray(pairs[:, 0])
        self._tails = np.ascontiguousarray(pairs[:, 1])
        self._offsets, self._neighbours = self._csr()

    def _csr(self) -> tuple[npt.NDArray[np.int64], npt.NDArray[np.int64]]:
        """
        To build the CSR adjacency (offsets of size |V|+1 and the concatenated neighbour lists).
        """

        degrees = np.bincount(
            np.concatenate([self._heads, self._tails]), minlength=self._vertex_count,
        ).astype(np.int64)
        offsets = np.zeros(self._vertex_count + 1, dtype=np.int64)
        np.cumsum(degrees, out=offsets[1:])
        neighbours = np.empty(offsets[-1], dtype=np.int64)
        cursor = offsets[:-1].copy()
        for u, v in self._edges:
            neighbours[cursor[u]] = v
            cursor[u] += 1
            neighbours[cursor[v]] = u
            cursor[v] += 1
        return offsets, neighbours

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        """
        From a networkx graph; nodes are relabelled 0..|V|−1 in sorted order.
        """

        mapping = {node: index for index, node in enumerate(sorted(graph.nodes()))}
        return cls(len(mapping), [(mapping[u], mapping[v]) for u, v in graph.edges()])

    @classmethod
    def path(cls, vertex_count: int) -> Graph:
        return cls.from_networkx(nx.path_graph(vertex_count))

    @classmethod
    def cycle(cls, vertex_count: int) -> Graph:
        return cls.from_networkx(nx.cycle_graph(vertex_count))

    @classmethod
    def complete(cls, vertex_count: int) -> Graph:
        return cls.from_networkx(nx.complete_graph(vertex_count))

    @classmethod
    def grid(cls, side: int) -> Graph:
        """
        The side × side grid (no periodic boundary), vertex (r, c) being r·side + c.
        """
        return cls.from_networkx(nx.grid_2d_graph(side, side))

    @classmethod
    def from_json(cls, document: dict[str, Any]) -> Graph:
        """
        From {"n": |V|, "edges": [[u, v], ...]}.
        """
        return cls(document["n"], document.get("edges", []))

    def to_json(self) -> dict[str, Any]:
        return {"n": self._vertex_count, "edges": [list(e) for e in self._edges]}

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._vertex_count))
        graph.add_edges_from(self._edges)
        return graph

    @property
    def vertex_count(self) -> int:
        return self._vertex_count

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def heads(self) -> npt.NDArray[np.int64]:
        """
        First endpoint of every edge.
        """
        return self._heads

    @property
    def tails(self) -> npt.NDArray[np.int64]:
        """
        Second endpoint of every edge.
        """
        return self._tails

    @property
    def offsets(self) -> npt.NDArray[np.int64]:
        """
        CSR offsets: the neighbours of v are neighbours[offsets[v]:offsets[v + 1]].
        """
        return self._offsets

    @property
    def neighbours(self) -> npt.NDArray[np.int64]:
        return self._neighbours

    @property
    def max_degree(self) -> int:
        """
        Δ, the maximum vertex degree (0 for an edgeless graph).
        """

        if self._vertex_count == 0: return 0
        return int(np.diff(self._offsets).max())

    def greedy_coloring(self) -> npt.NDArray[np.int64]:
        """
        A proper colouring with at most Δ + 1 colours (networkx largest-first greedy).
        """

        colouring = nx.greedy_color(self.to_networkx(), strategy='largest_first')
        return np.asarray([colouring[v] for v in range(self._vertex_count)], dtype=np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph): return NotImplemented
        return self._vertex_count == other._vertex_count and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertex_count, self._edges))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self._vertex_count}, edge_count={self.edge_count})"
