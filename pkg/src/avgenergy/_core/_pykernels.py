"""Pure-Python kernels. Same signatures and results as ``_kernels.pyx``.

Graphs arrive in CSR form: ``offsets[i]:offsets[i+1]`` indexes the outgoing
edges of state ``i`` in ``targets`` / ``weights``.
"""
from __future__ import annotations


def _lists(offsets, targets, weights):
    return [int(x) for x in offsets], [int(x) for x in targets], [int(x) for x in weights]


def value_iteration(offsets, targets, weights, minimize, horizon):
    """Values of the finite-horizon game after ``horizon`` rounds, starting from zero.

    ``minimize[i]`` selects min (else max) at state ``i``.
    """
    off, tgt, wt = _lists(offsets, targets, weights)
    mins = [bool(x) for x in minimize]
    n = len(off) - 1
    level = [0] * n
    for _ in range(horizon):
        new = [0] * n
        for i in range(n):
            lo, hi = off[i], off[i + 1]
            best = wt[lo] + level[tgt[lo]]
            if mins[i]:
                for e in range(lo + 1, hi):
                    c = wt[e] + level[tgt[e]]
                    if c < best:
                        best = c
            else:
                for e in range(lo + 1, hi):
                    c = wt[e] + level[tgt[e]]
                    if c > best:
                        best = c
            new[i] = best
        level = new
    return level


def bellman_ford(offsets, targets, weights, source):
    """Single-source shortest paths.

    Returns ``(dist, pred, neg)``: ``dist[i]`` is ``None`` when unreachable,
    ``pred[i]`` the predecessor index (-1 for none) and ``neg`` a state on a
    reachable negative cycle, or -1.
    """
    off, tgt, wt = _lists(offsets, targets, weights)
    n = len(off) - 1
    dist = [None] * n
    pred = [-1] * n
    dist[source] = 0
    for _ in range(n):
        changed = False
        for u in range(n):
            du = dist[u]
            if du is None:
                continue
            for e in range(off[u], off[u + 1]):
                v = tgt[e]
                nd = du + wt[e]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    pred[v] = u
                    changed = True
        if not changed:
            return dist, pred, -1
    # witness round
    for u in range(n):
        du = dist[u]
        if du is None:
            continue
        for e in range(off[u], off[u + 1]):
            v = tgt[e]
            if du + wt[e] < dist[v]:
                pred[v] = u
                x = v
                for _ in range(n):
                    x = pred[x]
                return dist, pred, x
    return dist, pred, -1


def karp_min_mean(offsets, targets, weights):
    """Minimum cycle mean of a graph whose states are all reachable from 0.

    Returns ``(num, den)`` (not reduced) or ``None`` when acyclic. Uses two
    passes over the walk-length table so memory stays linear.
    """
    off, tgt, wt = _lists(offsets, targets, weights)
    n = len(off) - 1

    def step(d):
        nd = [None] * n
        for u in range(n):
            du = d[u]
            if du is None:
                continue
            for e in range(off[u], off[u + 1]):
                v = tgt[e]
                c = du + wt[e]
                if nd[v] is None or c < nd[v]:
                    nd[v] = c
        return nd

    d = [None] * n
    d[0] = 0
    for _ in range(n):
        d = step(d)
    dn = d
    best_num = [None] * n
    best_den = [1] * n
    d = [None] * n
    d[0] = 0
    for k in range(n):
        for v in range(n):
            if dn[v] is None or d[v] is None:
                continue
            num, den = dn[v] - d[v], n - k
            if best_num[v] is None or num * best_den[v] > best_num[v] * den:
                best_num[v], best_den[v] = num, den
        d = step(d)
    result = None
    for v in range(n):
        if best_num[v] is None:
            continue
        if result is None or best_num[v] * result[1] < result[0] * best_den[v]:
            result = (best_num[v], best_den[v])
    return result


def zero_cycle_forward(offsets, targets, weights, s, kmax, bound):
    """Best level-sum of zero cycles on ``s`` for each length ``1..kmax``.

    Entry ``k`` of the result is the minimum, over closed walks of length ``k``
    from ``s`` with total weight 0, of the sum of the running energy levels;
    ``None`` when no such walk exists. ``bound`` is the max absolute weight.
    """
    off, tgt, wt = _lists(offsets, targets, weights)
    layer = {(s, 0): 0}
    best = [None] * (kmax + 1)
    for j in range(1, kmax + 1):
        # the walk must still be able to return to energy 0
        lim = min(j, kmax - j) * bound
        nxt: dict = {}
        for (u, e), acc in layer.items():
            for x in range(off[u], off[u + 1]):
                ne = e + wt[x]
                if ne > lim or ne < -lim:
                    continue
                key = (tgt[x], ne)
                val = acc + ne
                old = nxt.get(key)
                if old is None or val < old:
                    nxt[key] = val
        best[j] = nxt.get((s, 0))
        layer = nxt
    return best


def zero_cycle_path(offsets, targets, weights, s, k, bound):
    """Optimal zero cycle of exact length ``k`` on ``s``.

    Returns ``(cost, path)`` where ``path`` lists the ``k`` states visited
    before returning to ``s`` (starting with ``s``) and is the smallest such
    sequence by state index among the optimal ones; ``None`` if none exists.
    Successors must be sorted by target index in the CSR arrays.
    """
    off, tgt, wt = _lists(offsets, targets, weights)
    # forward sweep: the (state, energy) pairs that can start position j
    layers = [{(s, 0)}]
    for j in range(1, k + 1):
        lim = min(j, k - j) * bound
        layers.append({
            (tgt[x], e + wt[x])
            for u, e in layers[-1]
            for x in range(off[u], off[u + 1])
            if -lim <= e + wt[x] <= lim
        })
    # table[j][(v, e)]: least sum of the levels still to come
    table = [dict() for _ in range(k + 1)]
    if (s, 0) in layers[k]:
        table[k][(s, 0)] = 0
    for j in range(k - 1, -1, -1):
        nxt = table[j + 1]
        cur = table[j]
        for u, e in layers[j]:
            best = None
            for x in range(off[u], off[u + 1]):
                ne = e + wt[x]
                c = nxt.get((tgt[x], ne))
                if c is None:
                    continue
                c += ne
                if best is None or c < best:
                    best = c
            if best is not None:
                cur[(u, e)] = best
    cost = table[0].get((s, 0))
    if cost is None:
        return None
    path = [s]
    u, e, remaining = s, 0, cost
    for j in range(k - 1):
        for x in range(off[u], off[u + 1]):
            ne = e + wt[x]
            c = table[j + 1].get((tgt[x], ne))
            if c is not None and c + ne == remaining:
                u, e, remaining = tgt[x], ne, c
                path.append(u)
                break
    return cost, path
