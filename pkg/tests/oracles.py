"""Naive reference computations, deliberately independent of the package code."""

import math
from collections import deque
from itertools import combinations


def modularity_double_loop(edges, nodes, labels):
    """Q = 1/(2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j)."""
    adj = {u: set() for u in nodes}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    m = len(edges)
    q = 0.0
    for i in nodes:
        for j in nodes:
            if labels[i] != labels[j]:
                continue
            a = 1.0 if j in adj[i] else 0.0
            q += a - len(adj[i]) * len(adj[j]) / (2 * m)
    return q / (2 * m)


def _entropy(labels, nodes):
    n = len(nodes)
    h = 0.0
    for c in set(labels[u] for u in nodes):
        p = sum(1 for u in nodes if labels[u] == c) / n
        h -= p * math.log(p)
    return h


def _cond_entropy(a, b, nodes):
    """H(a | b) by explicit enumeration of label pairs."""
    n = len(nodes)
    h = 0.0
    for cb in set(b[u] for u in nodes):
        nb = sum(1 for u in nodes if b[u] == cb)
        for ca in set(a[u] for u in nodes):
            nab = sum(1 for u in nodes if a[u] == ca and b[u] == cb)
            if nab:
                h -= nab / n * math.log(nab / nb)
    return h


def v_measure_naive(pred, truth):
    nodes = sorted(pred)
    h_c = _entropy(truth, nodes)
    h_k = _entropy(pred, nodes)
    hom = 1.0 if h_c == 0 else 1 - _cond_entropy(truth, pred, nodes) / h_c
    com = 1.0 if h_k == 0 else 1 - _cond_entropy(pred, truth, nodes) / h_k
    return 0.0 if hom + com == 0 else 2 * hom * com / (hom + com)


def nmi_naive(pred, truth):
    nodes = sorted(pred)
    h_c = _entropy(truth, nodes)
    h_k = _entropy(pred, nodes)
    if h_c == 0 and h_k == 0:
        return 1.0
    mi = h_c - _cond_entropy(truth, pred, nodes)
    return mi / ((h_c + h_k) / 2)


def density_sparseness_naive(edges, nodes, labels):
    es = {frozenset(e) for e in edges}
    in_e = in_p = out_e = out_p = 0
    for u, v in combinations(nodes, 2):
        linked = frozenset((u, v)) in es
        if labels[u] == labels[v]:
            in_p += 1
            in_e += linked
        else:
            out_p += 1
            out_e += linked
    return (in_e / in_p if in_p else 0.0), (out_e / out_p if out_p else 0.0)


def bfs_distances(adj, sources):
    """Unit-weight multi-source BFS."""
    dist = {u: math.inf for u in adj}
    q = deque()
    for s in sources:
        dist[s] = 0
        q.append(s)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] == math.inf:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def floyd_warshall(nodes, wedges):
    d = {u: {v: (0.0 if u == v else math.inf) for v in nodes} for u in nodes}
    for u, v, w in wedges:
        d[u][v] = min(d[u][v], w)
        d[v][u] = min(d[v][u], w)
    for k in nodes:
        for i in nodes:
            for j in nodes:
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d
