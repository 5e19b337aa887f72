"""Partition quality: modularity, V-measure, NMI, intra density, inter sparseness."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from typing import Dict, Hashable, Iterable, List, Mapping, Tuple

import numpy as np

from . import kernels
from .graph import DynamicGraph

Partition = Mapping[int, Hashable]


class MetricError(ValueError):
    pass


def _dense_labels(labels: Iterable[Hashable]) -> Tuple[np.ndarray, int]:
    ids: Dict[Hashable, int] = {}
    out = [ids.setdefault(x, len(ids)) for x in labels]
    return np.asarray(out, dtype=np.int64), len(ids)


def modularity(g: DynamicGraph, partition: Partition, weighted: bool = False) -> float:
    """Newman-Girvan modularity ``sum_c (e_cc - a_c^2)``.

    Unweighted by default: every edge counts once regardless of weight.
    """
    if g.edge_count == 0:
        raise MetricError("modularity is undefined on an edgeless graph")
    missing = [u for u in g if u not in partition]
    if missing:
        raise MetricError(f"partition misses {len(missing)} nodes, e.g. {missing[:5]}")
    nodes, indptr, indices, weights = g.to_csr()
    if not weighted:
        weights = np.ones_like(weights)
    labels, n_labels = _dense_labels(partition[u] for u in nodes)
    return float(kernels.modularity_csr(indptr, indices, weights, labels, n_labels))


def _check_same_nodes(pred: Partition, truth: Partition) -> List[int]:
    if set(pred) != set(truth):
        raise MetricError(
            f"node sets differ: {len(pred)} predicted, {len(truth)} truth, "
            f"{len(set(pred) & set(truth))} shared"
        )
    if not pred:
        raise MetricError("empty node set")
    return sorted(pred)


def _entropies(pred: Partition, truth: Partition):
    """``(H(truth), H(pred), I(truth; pred))`` in nats."""
    nodes = _check_same_nodes(pred, truth)
    n = len(nodes)
    joint = Counter((truth[u], pred[u]) for u in nodes)
    ct = Counter(truth[u] for u in nodes)
    cp = Counter(pred[u] for u in nodes)

    def h(counts):
        return -sum(c / n * math.log(c / n) for c in counts.values())

    mi = 0.0
    for (t, p), c in joint.items():
        mi += c / n * math.log(c * n / (ct[t] * cp[p]))
    return h(ct), h(cp), max(mi, 0.0)


def homogeneity_completeness_v(pred: Partition, truth: Partition, beta: float = 1.0):
    h_truth, h_pred, mi = _entropies(pred, truth)
    # H(truth | pred) = H(truth) - I; homogeneity is 1 when H(truth) = 0
    homogeneity = 1.0 if h_truth == 0 else mi / h_truth
    completeness = 1.0 if h_pred == 0 else mi / h_pred
    if homogeneity + completeness == 0:
        return homogeneity, completeness, 0.0
    v = (1 + beta) * homogeneity * completeness / (beta * homogeneity + completeness)
    return homogeneity, completeness, v


def v_measure(pred: Partition, truth: Partition) -> float:
    return homogeneity_completeness_v(pred, truth)[2]


def nmi(pred: Partition, truth: Partition) -> float:
    """Mutual information over the arithmetic mean of the two entropies."""
    h_truth, h_pred, mi = _entropies(pred, truth)
    if h_truth == 0 and h_pred == 0:
        return 1.0
    return mi / ((h_truth + h_pred) / 2)


def _pair_counts(g: DynamicGraph, partition: Partition):
    sizes = Counter(partition[u] for u in g)
    intra_pairs = sum(s * (s - 1) // 2 for s in sizes.values())
    n = len(g)
    all_pairs = n * (n - 1) // 2
    intra_edges = sum(1 for u, v, _ in g.edges() if partition[u] == partition[v])
    return intra_edges, g.edge_count - intra_edges, intra_pairs, all_pairs - intra_pairs


def intra_density(g: DynamicGraph, partition: Partition) -> float:
    """Existing over possible edges inside clusters."""
    intra_edges, _, intra_pairs, _ = _pair_counts(g, partition)
    if intra_pairs == 0:
        warnings.warn("no intra-cluster pairs; intra density defined as 0", stacklevel=2)
        return 0.0
    return intra_edges / intra_pairs


def inter_sparseness(g: DynamicGraph, partition: Partition) -> float:
    """Existing over possible edges between clusters."""
    _, inter_edges, _, inter_pairs = _pair_counts(g, partition)
    if inter_pairs == 0:
        warnings.warn("no inter-cluster pairs; inter sparseness defined as 0", stacklevel=2)
        return 0.0
    return inter_edges / inter_pairs


def flatten_cover(communities: List[List[int]]) -> Dict[int, int]:
    """Each node takes the index of the first community listing it."""
    labels: Dict[int, int] = {}
    for i, members in enumerate(communities):
        for u in members:
            labels.setdefault(u, i)
    return labels
