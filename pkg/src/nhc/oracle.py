"""From-scratch nearest-hub state, used to check the incremental engine."""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from . import kernels
from .engine import INF, dist_eq
from .graph import DynamicGraph

Snapshot = Dict[int, Tuple[float, Dict[Tuple[int, Optional[int]], float]]]


def batch_recompute(g: DynamicGraph, hubs: Iterable[int]) -> Snapshot:
    """Multi-source shortest paths from ``hubs`` plus the alpha recursion.

    A node's parents are its neighbors lying on some shortest path to a
    nearest hub. Each parent ``p`` contributes one tuple per hub in its
    normalized share vector; a hub's share vector is ``{hub: 1}``.
    """
    nodes, indptr, indices, weights = g.to_csr()
    index = {u: i for i, u in enumerate(nodes)}
    hubs = sorted(set(hubs))
    dist_arr = kernels.multi_source_dijkstra(indptr, indices, weights, [index[h] for h in hubs])
    dist = {u: float(dist_arr[i]) for i, u in enumerate(nodes)}
    hub_set = set(hubs)

    out: Snapshot = {}
    share: Dict[int, Dict[int, float]] = {}
    for u in sorted(nodes, key=lambda x: (dist[x], x)):
        du = dist[u]
        if u in hub_set:
            out[u] = (0.0, {(u, None): 1.0})
            share[u] = {u: 1.0}
            continue
        if du == INF:
            out[u] = (INF, {})
            continue
        tuples = {}
        acc: Dict[int, float] = {}
        for p, w in g.adj(u).items():
            if dist[p] < du and dist_eq(dist[p] + w, du):
                for h, a in share[p].items():
                    tuples[(h, p)] = a
                    acc[h] = acc.get(h, 0.0) + a
        total = sum(acc.values())
        share[u] = {h: a / total for h, a in acc.items()}
        out[u] = (du, tuples)
    return out


def diff_states(engine_state: Snapshot, oracle_state: Snapshot, alpha_tol: float = 1e-9) -> list:
    """Human-readable differences; empty when the states agree."""
    problems = []
    if set(engine_state) != set(oracle_state):
        problems.append(f"node sets differ: {sorted(set(engine_state) ^ set(oracle_state))[:10]}")
    for u in sorted(set(engine_state) & set(oracle_state)):
        d1, t1 = engine_state[u]
        d2, t2 = oracle_state[u]
        if not dist_eq(d1, d2):
            problems.append(f"node {u}: dist {d1} != {d2}")
            continue
        if set(t1) != set(t2):
            problems.append(f"node {u}: tuples {sorted(t1, key=str)} != {sorted(t2, key=str)}")
            continue
        for key, a in t1.items():
            if abs(a - t2[key]) > alpha_tol:
                problems.append(f"node {u}: alpha{key} {a} != {t2[key]}")
    return problems


def distances(g: DynamicGraph, sources: Iterable[int]) -> Dict[int, float]:
    nodes, indptr, indices, weights = g.to_csr()
    index = {u: i for i, u in enumerate(nodes)}
    d = kernels.multi_source_dijkstra(indptr, indices, weights, [index[s] for s in sources])
    return {u: float(x) for u, x in zip(nodes, np.asarray(d))}
