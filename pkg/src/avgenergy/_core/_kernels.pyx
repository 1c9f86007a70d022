# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Mirrors ``_pykernels`` exactly; callers guard int64 range."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef int64_t UNSET = 4611686018427387904  # 2**62


def value_iteration(const int64_t[:] offsets, const int64_t[:] targets,
                    const int64_t[:] weights, minimize, long horizon):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef cnp.uint8_t[:] mins = np.ascontiguousarray(minimize, dtype=np.uint8)
    cdef int64_t[:] level = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] new = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] tmp
    cdef Py_ssize_t i, e, lo, hi
    cdef long it
    cdef int64_t best, c
    with nogil:
        for it in range(horizon):
            for i in range(n):
                lo = offsets[i]
                hi = offsets[i + 1]
                best = weights[lo] + level[targets[lo]]
                if mins[i]:
                    for e in range(lo + 1, hi):
                        c = weights[e] + level[targets[e]]
                        if c < best:
                            best = c
                else:
                    for e in range(lo + 1, hi):
                        c = weights[e] + level[targets[e]]
                        if c > best:
                            best = c
                new[i] = best
            tmp = level
            level = new
            new = tmp
    return [int(x) for x in level]


def bellman_ford(const int64_t[:] offsets, const int64_t[:] targets,
                 const int64_t[:] weights, Py_ssize_t source):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef int64_t[:] dist = np.full(n, UNSET, dtype=np.int64)
    cdef int64_t[:] pred = np.full(n, -1, dtype=np.int64)
    cdef Py_ssize_t rnd, u, e, v, x, neg = -1
    cdef bint changed = True
    cdef int64_t nd, du
    dist[source] = 0
    with nogil:
        for rnd in range(n):
            changed = False
            for u in range(n):
                du = dist[u]
                if du == UNSET:
                    continue
                for e in range(offsets[u], offsets[u + 1]):
                    v = targets[e]
                    nd = du + weights[e]
                    if dist[v] == UNSET or nd < dist[v]:
                        dist[v] = nd
                        pred[v] = u
                        changed = True
            if not changed:
                break
        if changed:
            for u in range(n):
                if dist[u] == UNSET or neg != -1:
                    continue
                for e in range(offsets[u], offsets[u + 1]):
                    v = targets[e]
                    if dist[u] + weights[e] < dist[v]:
                        pred[v] = u
                        x = v
                        for rnd in range(n):
                            x = pred[x]
                        neg = x
                        break
    return ([None if d == UNSET else int(d) for d in dist],
            [int(p) for p in pred], int(neg))


cdef void _karp_step(const int64_t[:] offsets, const int64_t[:] targets,
                     const int64_t[:] weights, int64_t[:] d, int64_t[:] nd,
                     Py_ssize_t n) nogil:
    cdef Py_ssize_t u, e, v
    cdef int64_t c
    for v in range(n):
        nd[v] = UNSET
    for u in range(n):
        if d[u] == UNSET:
            continue
        for e in range(offsets[u], offsets[u + 1]):
            v = targets[e]
            c = d[u] + weights[e]
            if nd[v] == UNSET or c < nd[v]:
                nd[v] = c


def karp_min_mean(const int64_t[:] offsets, const int64_t[:] targets,
                  const int64_t[:] weights):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef int64_t[:] d = np.full(n, UNSET, dtype=np.int64)
    cdef int64_t[:] nd = np.full(n, UNSET, dtype=np.int64)
    cdef int64_t[:] dn = np.full(n, UNSET, dtype=np.int64)
    cdef int64_t[:] bnum = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] bden = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] tmp
    cdef Py_ssize_t k, v
    cdef int64_t num, den
    with nogil:
        d[0] = 0
        for k in range(n):
            _karp_step(offsets, targets, weights, d, nd, n)
            tmp = d
            d = nd
            nd = tmp
        for v in range(n):
            dn[v] = d[v]
            d[v] = UNSET
        d[0] = 0
        for k in range(n):
            for v in range(n):
                if dn[v] == UNSET or d[v] == UNSET:
                    continue
                num = dn[v] - d[v]
                den = n - k
                if bden[v] == 0 or num * bden[v] > bnum[v] * den:
                    bnum[v] = num
                    bden[v] = den
            _karp_step(offsets, targets, weights, d, nd, n)
            tmp = d
            d = nd
            nd = tmp
    result = None
    for v in range(n):
        if bden[v] == 0:
            continue
        if result is None or bnum[v] * result[1] < result[0] * bden[v]:
            result = (int(bnum[v]), int(bden[v]))
    return result


def zero_cycle_forward(const int64_t[:] offsets, const int64_t[:] targets,
                       const int64_t[:] weights, Py_ssize_t s, Py_ssize_t kmax,
                       int64_t bound):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef int64_t r = (kmax // 2) * bound
    cdef Py_ssize_t width = 2 * r + 1
    cdef int64_t[:, :] cur = np.full((n, width), UNSET, dtype=np.int64)
    cdef int64_t[:, :] nxt = np.full((n, width), UNSET, dtype=np.int64)
    cdef int64_t[:, :] tmp
    cdef int64_t[:] best = np.full(kmax + 1, UNSET, dtype=np.int64)
    cdef Py_ssize_t j, u, x, ei, v
    cdef int64_t lim, plim, e, ne, val, acc
    with nogil:
        cur[s, r] = 0
        for j in range(1, kmax + 1):
            lim = j if j < kmax - j else kmax - j
            lim = lim * bound
            plim = j - 1 if j - 1 < kmax - j + 1 else kmax - j + 1
            plim = plim * bound
            for u in range(n):
                for ei in range(r - lim, r + lim + 1):
                    nxt[u, ei] = UNSET
            for u in range(n):
                for ei in range(r - plim, r + plim + 1):
                    acc = cur[u, ei]
                    if acc == UNSET:
                        continue
                    e = ei - r
                    for x in range(offsets[u], offsets[u + 1]):
                        ne = e + weights[x]
                        if ne > lim or ne < -lim:
                            continue
                        v = targets[x]
                        val = acc + ne
                        if nxt[v, ne + r] == UNSET or val < nxt[v, ne + r]:
                            nxt[v, ne + r] = val
            best[j] = nxt[s, r]
            # clear the previous layer before swapping it in as scratch
            for u in range(n):
                for ei in range(r - plim, r + plim + 1):
                    cur[u, ei] = UNSET
            tmp = cur
            cur = nxt
            nxt = tmp
    return [None] + [None if best[j] == UNSET else int(best[j]) for j in range(1, kmax + 1)]


def zero_cycle_path(const int64_t[:] offsets, const int64_t[:] targets,
                    const int64_t[:] weights, Py_ssize_t s, Py_ssize_t k,
                    int64_t bound):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef int64_t r = (k // 2) * bound
    cdef Py_ssize_t width = 2 * r + 1
    cdef int64_t[:, :, :] table = np.full((k + 1, n, width), UNSET, dtype=np.int64)
    cdef Py_ssize_t j, u, x, v, step
    cdef int64_t lim, e, ne, c, best, cost, remaining
    with nogil:
        table[k, s, r] = 0
        for j in range(k - 1, -1, -1):
            lim = j if j < k - j else k - j
            lim = lim * bound
            for u in range(n):
                for e in range(-lim, lim + 1):
                    best = UNSET
                    for x in range(offsets[u], offsets[u + 1]):
                        ne = e + weights[x]
                        if ne > r or ne < -r:
                            continue
                        c = table[j + 1, targets[x], ne + r]
                        if c == UNSET:
                            continue
                        c = c + ne
                        if best == UNSET or c < best:
                            best = c
                    table[j, u, e + r] = best
    cost = table[0, s, r]
    if cost == UNSET:
        return None
    path = [int(s)]
    u = s
    e = 0
    remaining = cost
    for step in range(k - 1):
        for x in range(offsets[u], offsets[u + 1]):
            ne = e + weights[x]
            if ne > r or ne < -r:
                continue
            c = table[step + 1, targets[x], ne + r]
            if c != UNSET and c + ne == remaining:
                u = targets[x]
                e = ne
                remaining = c
                path.append(int(u))
                break
    return int(cost), path
