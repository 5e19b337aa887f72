"""Louvain modularity optimization baseline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from . import kernels
from .graph import DynamicGraph


class LouvainError(ValueError):
    pass


@dataclass
class Dendrogram:
    nodes: List[int]
    levels: List[np.ndarray] = field(default_factory=list)
    modularities: List[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.levels)

    def flatten(self, level: int = -1) -> Dict[int, int]:
        return flatten(self, level)


def _aggregate(indptr, indices, weights, comm, n_comm):
    rows = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    keys = comm[rows] * n_comm + comm[indices]
    uniq, inv = np.unique(keys, return_inverse=True)
    w = np.bincount(inv, weights=weights)
    src = uniq // n_comm
    dst = uniq % n_comm
    new_indptr = np.zeros(n_comm + 1, dtype=np.int64)
    np.add.at(new_indptr, src + 1, 1)
    return np.cumsum(new_indptr), dst.astype(np.int64), w.astype(np.float64)


def _relabel(comm: np.ndarray):
    _, first, inv = np.unique(comm, return_index=True, return_inverse=True)
    # number communities by first appearance for stable labels
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[inv].astype(np.int64), len(order)


def louvain(g: DynamicGraph, seed: int = 0, weighted: bool = False, resolution: float = 1.0) -> Dendrogram:
    """Multi-level Louvain; each level groups the previous level's super-nodes."""
    if g.edge_count == 0:
        raise LouvainError("louvain needs at least one edge")
    nodes, indptr, indices, weights = g.to_csr()
    if not weighted:
        weights = np.ones_like(weights)
    rng = np.random.default_rng(seed)
    dendro = Dendrogram(nodes)
    q_prev = -np.inf
    while True:
        n = len(indptr) - 1
        comm = np.arange(n, dtype=np.int64)
        order = rng.permutation(n).astype(np.int64)
        moves = kernels.louvain_move(indptr, indices, weights, order, comm, resolution)
        if moves == 0:
            break
        comm, n_comm = _relabel(comm)
        q = float(kernels.modularity_csr(indptr, indices, weights, comm, n_comm))
        if q <= q_prev:
            break
        dendro.levels.append(comm)
        dendro.modularities.append(q)
        q_prev = q
        indptr, indices, weights = _aggregate(indptr, indices, weights, comm, n_comm)
    if not dendro.levels:
        # no move helped: the singleton partition is the only level
        comm = np.arange(len(nodes), dtype=np.int64)
        dendro.levels.append(comm)
        dendro.modularities.append(float(kernels.modularity_csr(indptr, indices, weights, comm, len(nodes))))
    return dendro


def flatten(d: Dendrogram, level: int = -1) -> Dict[int, int]:
    """Map original nodes to their community at ``level`` (negative counts from the top)."""
    if not d.levels:
        raise LouvainError("empty dendrogram")
    if not -len(d.levels) <= level < len(d.levels):
        raise LouvainError(f"level {level} out of range for {len(d.levels)} levels")
    level %= len(d.levels)
    labels = d.levels[0]
    for lvl in d.levels[1 : level + 1]:
        labels = lvl[labels]
    return {u: int(c) for u, c in zip(d.nodes, labels)}
