"""Pure-Python versions of the array kernels in ``_speedups.pyx``.

Signatures and results match the compiled module exactly, including
floating-point summation order, so either backend can be selected.
"""

import heapq

import numpy as np


def multi_source_dijkstra(indptr, indices, weights, sources):
    n = len(indptr) - 1
    dist = np.full(n, np.inf)
    heap = []
    for s in sources:
        dist[s] = 0.0
        heap.append((0.0, int(s)))
    heapq.heapify(heap)
    done = np.zeros(n, dtype=bool)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            nd = d + weights[k]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, int(v)))
    return dist


def louvain_move(indptr, indices, weights, order, comm, resolution=1.0):
    """One Louvain local-moving phase, in place on ``comm``.

    Returns the number of node moves made. Self-loop entries (``j == i``)
    are carried with the node and never count as links to a community.
    """
    n = len(indptr) - 1
    k = np.zeros(n)
    two_m = 0.0
    for i in range(n):
        s = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            s += weights[p]
        k[i] = s
        two_m += s
    if two_m == 0.0:
        return 0
    tot = np.zeros(n)
    for i in range(n):
        tot[comm[i]] += k[i]
    link = np.zeros(n)
    touched = np.empty(n, dtype=np.int64)
    moves = 0
    improved = True
    while improved:
        improved = False
        for i in order:
            ci = comm[i]
            nt = 0
            for p in range(indptr[i], indptr[i + 1]):
                j = indices[p]
                if j == i:
                    continue
                cj = comm[j]
                if link[cj] == 0.0:
                    touched[nt] = cj
                    nt += 1
                link[cj] += weights[p]
            tot[ci] -= k[i]
            best = ci
            best_gain = link[ci] - resolution * tot[ci] * k[i] / two_m
            for t in range(nt):
                c = touched[t]
                gain = link[c] - resolution * tot[c] * k[i] / two_m
                if gain > best_gain:
                    best_gain = gain
                    best = c
            tot[best] += k[i]
            for t in range(nt):
                link[touched[t]] = 0.0
            if best != ci:
                comm[i] = best
                moves += 1
                improved = True
    return moves


def modularity_csr(indptr, indices, weights, labels, n_labels):
    """Newman-Girvan modularity; self-loop entries count toward their community."""
    n = len(indptr) - 1
    inside = np.zeros(n_labels)
    deg = np.zeros(n_labels)
    two_m = 0.0
    for i in range(n):
        li = labels[i]
        for p in range(indptr[i], indptr[i + 1]):
            w = weights[p]
            two_m += w
            deg[li] += w
            if labels[indices[p]] == li:
                inside[li] += w
    q = 0.0
    for c in range(n_labels):
        f = deg[c] / two_m
        q += inside[c] / two_m - f * f
    return q
