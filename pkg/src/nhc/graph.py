"""Mutable undirected weighted graph with caller-supplied integer node ids."""

from __future__ import annotations

import copy
from typing import Dict, Iterable, Iterator, List, Tuple

import numpy as np


class GraphError(ValueError):
    pass


Edge = Tuple[int, int, float]


class DynamicGraph:
    """Undirected, simple, positively weighted graph.

    Adjacency is stored as ``{node: {neighbor: weight}}`` and kept symmetric.
    Node ids removed from the graph are remembered and may not be re-added.
    """

    def __init__(self, edges: Iterable[tuple] | None = None):
        self._adj: Dict[int, Dict[int, float]] = {}
        self._retired: set = set()
        self.edge_count = 0
        if edges is not None:
            for e in edges:
                self.add_edge(*e)

    # -- queries -----------------------------------------------------------

    def __contains__(self, u: int) -> bool:
        return u in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        return self._adj == other._adj and self.edge_count == other.edge_count

    @property
    def nodes(self) -> List[int]:
        return sorted(self._adj)

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def weight(self, u: int, v: int) -> float:
        try:
            return self._adj[u][v]
        except KeyError:
            raise GraphError(f"no edge ({u}, {v})") from None

    def degree(self, u: int) -> int:
        return len(self._row(u))

    def neighbors(self, u: int) -> List[Tuple[int, float]]:
        return list(self._row(u).items())

    def adj(self, u: int) -> Dict[int, float]:
        """Live neighbor->weight mapping of ``u``; do not mutate."""
        return self._row(u)

    def degrees(self) -> Dict[int, int]:
        return {u: len(nb) for u, nb in self._adj.items()}

    def edges(self) -> Iterator[Edge]:
        """Each undirected edge once, as ``(u, v, w)`` with ``u < v``."""
        for u, nb in self._adj.items():
            for v, w in nb.items():
                if u < v:
                    yield u, v, w

    def is_unit_weight(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges())

    def copy(self) -> "DynamicGraph":
        return copy.deepcopy(self)

    def _row(self, u: int) -> Dict[int, float]:
        try:
            return self._adj[u]
        except KeyError:
            raise GraphError(f"node {u} not in graph") from None

    # -- mutation ----------------------------------------------------------

    def add_node(self, u: int) -> None:
        if u in self._adj:
            return
        if not isinstance(u, (int, np.integer)) or u < 0:
            raise GraphError(f"node id must be a non-negative integer, got {u!r}")
        if u in self._retired:
            raise GraphError(f"node id {u} was removed and cannot be reused")
        self._adj[int(u)] = {}

    def add_edge(self, u: int, v: int, w: float = 1.0) -> str:
        """Insert edge ``(u, v)``.

        Returns ``"new"``, ``"unchanged"`` or ``"weight change"``.
        """
        if u == v:
            raise GraphError(f"self-loop on node {u} rejected")
        w = float(w)
        if not w > 0 or w == float("inf"):
            raise GraphError(f"edge weight must be positive and finite, got {w}")
        self.add_node(u)
        self.add_node(v)
        old = self._adj[u].get(v)
        self._adj[u][v] = w
        self._adj[v][u] = w
        if old is None:
            self.edge_count += 1
            return "new"
        return "unchanged" if old == w else "weight change"

    def remove_edge(self, u: int, v: int) -> float:
        """Delete edge ``(u, v)`` and return its weight."""
        if not self.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v})")
        w = self._adj[u].pop(v)
        del self._adj[v][u]
        self.edge_count -= 1
        return w

    def remove_node(self, u: int) -> List[Edge]:
        """Delete ``u`` and its incident edges; returns the removed edges."""
        row = self._row(u)
        removed = [(u, v, w) for v, w in row.items()]
        for v in row:
            del self._adj[v][u]
        self.edge_count -= len(removed)
        del self._adj[u]
        self._retired.add(u)
        return removed

    # -- export ------------------------------------------------------------

    def to_csr(self, nodes: List[int] | None = None):
        """Return ``(nodes, indptr, indices, weights)`` with both edge directions."""
        if nodes is None:
            nodes = self.nodes
        index = {u: i for i, u in enumerate(nodes)}
        indptr = np.zeros(len(nodes) + 1, dtype=np.int64)
        for i, u in enumerate(nodes):
            indptr[i + 1] = indptr[i] + len(self._adj[u])
        indices = np.empty(indptr[-1], dtype=np.int64)
        weights = np.empty(indptr[-1], dtype=np.float64)
        k = 0
        for u in nodes:
            for v, w in self._adj[u].items():
                indices[k] = index[v]
                weights[k] = w
                k += 1
        return nodes, indptr, indices, weights
