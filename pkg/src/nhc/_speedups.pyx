# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled array kernels; see ``_purepy`` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline void _sift_down(double* hk, i64* hv, i64 start, i64 pos):
    cdef double nk = hk[pos]
    cdef i64 nv = hv[pos]
    cdef i64 parent
    while pos > start:
        parent = (pos - 1) >> 1
        if nk < hk[parent] or (nk == hk[parent] and nv < hv[parent]):
            hk[pos] = hk[parent]
            hv[pos] = hv[parent]
            pos = parent
            continue
        break
    hk[pos] = nk
    hv[pos] = nv


cdef inline void _sift_up(double* hk, i64* hv, i64 size, i64 pos):
    cdef i64 start = pos
    cdef double nk = hk[pos]
    cdef i64 nv = hv[pos]
    cdef i64 child = 2 * pos + 1
    cdef i64 right
    while child < size:
        right = child + 1
        if right < size and not (hk[child] < hk[right] or (hk[child] == hk[right] and hv[child] < hv[right])):
            child = right
        hk[pos] = hk[child]
        hv[pos] = hv[child]
        pos = child
        child = 2 * pos + 1
    hk[pos] = nk
    hv[pos] = nv
    _sift_down(hk, hv, start, pos)


def multi_source_dijkstra(const i64[:] indptr, const i64[:] indices, const double[:] weights, sources):
    cdef i64 n = indptr.shape[0] - 1
    cdef cnp.ndarray[double] dist_arr = np.full(n, np.inf)
    cdef double[:] dist = dist_arr
    cdef cnp.ndarray[char] done_arr = np.zeros(n, dtype=np.int8)
    cdef char[:] done = done_arr
    cap = indices.shape[0] + len(sources) + 1
    cdef cnp.ndarray[double] hk_arr = np.empty(cap)
    cdef cnp.ndarray[i64] hv_arr = np.empty(cap, dtype=np.int64)
    cdef double* hk = <double*> hk_arr.data
    cdef i64* hv = <i64*> hv_arr.data
    cdef i64 size = 0
    cdef i64 u, v, p
    cdef double d, nd
    for s in sources:
        dist[s] = 0.0
        hk[size] = 0.0
        hv[size] = s
        size += 1
        _sift_down(hk, hv, 0, size - 1)
    while size > 0:
        d = hk[0]
        u = hv[0]
        size -= 1
        if size > 0:
            hk[0] = hk[size]
            hv[0] = hv[size]
            _sift_up(hk, hv, size, 0)
        if done[u]:
            continue
        done[u] = 1
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            nd = d + weights[p]
            if nd < dist[v]:
                dist[v] = nd
                hk[size] = nd
                hv[size] = v
                size += 1
                _sift_down(hk, hv, 0, size - 1)
    return dist_arr


def louvain_move(const i64[:] indptr, const i64[:] indices, const double[:] weights,
                 const i64[:] order, i64[:] comm, double resolution=1.0):
    cdef i64 n = indptr.shape[0] - 1
    cdef cnp.ndarray[double] k_arr = np.zeros(n)
    cdef cnp.ndarray[double] tot_arr = np.zeros(n)
    cdef cnp.ndarray[double] link_arr = np.zeros(n)
    cdef cnp.ndarray[i64] touched_arr = np.empty(n, dtype=np.int64)
    cdef double[:] k = k_arr
    cdef double[:] tot = tot_arr
    cdef double[:] link = link_arr
    cdef i64[:] touched = touched_arr
    cdef double two_m = 0.0, s, gain, best_gain
    cdef i64 i, j, p, t, c, ci, cj, best, nt, oi
    cdef i64 moves = 0
    cdef bint improved = True
    for i in range(n):
        s = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            s += weights[p]
        k[i] = s
        two_m += s
    if two_m == 0.0:
        return 0
    for i in range(n):
        tot[comm[i]] += k[i]
    while improved:
        improved = False
        for oi in range(order.shape[0]):
            i = order[oi]
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


def modularity_csr(const i64[:] indptr, const i64[:] indices, const double[:] weights,
                   const i64[:] labels, i64 n_labels):
    cdef i64 n = indptr.shape[0] - 1
    cdef cnp.ndarray[double] inside_arr = np.zeros(n_labels)
    cdef cnp.ndarray[double] deg_arr = np.zeros(n_labels)
    cdef double[:] inside = inside_arr
    cdef double[:] deg = deg_arr
    cdef double two_m = 0.0, w, q = 0.0, f
    cdef i64 i, p, li, c
    for i in range(n):
        li = labels[i]
        for p in range(indptr[i], indptr[i + 1]):
            w = weights[p]
            two_m += w
            deg[li] += w
            if labels[indices[p]] == li:
                inside[li] += w
    for c in range(n_labels):
        f = deg[c] / two_m
        q += inside[c] / two_m - f * f
    return q
