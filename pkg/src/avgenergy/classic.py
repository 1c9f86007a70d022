"""Negative cycles, minimal energy reachability, mean-payoff and energy games."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

import networkx as nx
import numpy as np

from . import _core
from .game import (
    GameGraph,
    InvalidInput,
    Lasso,
    MemorylessStrategy,
    Player,
    SolveResult,
    ensure_valid,
    outcome_lasso,
    require_state,
    winner_for,
)
from .rational import INF
from .reductions import SINK, expand_lu, lift_strategy


@dataclass(frozen=True)
class MpConfig:
    """``method="auto"`` uses Karp's algorithm on one-player games and
    finite-horizon value iteration otherwise."""

    p1_role: Literal["minimizer", "maximizer"] = "minimizer"
    horizon: Optional[int] = None
    method: Literal["auto", "iteration", "karp"] = "auto"


MINIMIZER = MpConfig()


def _cycle_from_pred(game: GameGraph, pred: list[int], x: int) -> tuple[str, ...]:
    cyc = [x]
    y = pred[x]
    while y != x:
        cyc.append(y)
        y = pred[y]
    cyc.reverse()
    return tuple(game.states[i] for i in cyc)


def has_reachable_negative_cycle(game: GameGraph, start: str) -> Optional[tuple[str, ...]]:
    """A cycle of negative total weight reachable from ``start``, if any."""
    ensure_valid(game)
    require_state(game, start)
    off, tgt, wt = game.csr
    _, pred, neg = _core.bellman_ford(off, tgt, wt, game.index[start])
    if neg < 0:
        return None
    return _cycle_from_pred(game, pred, neg)


def min_energy_reach(game: GameGraph, start: str) -> dict[str, Optional[int]]:
    """Least energy level with which each state is reachable (``None``: unreachable)."""
    ensure_valid(game)
    require_state(game, start)
    off, tgt, wt = game.csr
    dist, _, neg = _core.bellman_ford(off, tgt, wt, game.index[start])
    if neg >= 0:
        raise InvalidInput("a negative cycle is reachable; energy levels are unbounded below")
    return dict(zip(game.states, dist))


def shortest_path(game: GameGraph, start: str, target: str) -> list[str]:
    """A minimum-energy path ``start .. target`` (no reachable negative cycle assumed)."""
    off, tgt, wt = game.csr
    _, pred, _ = _core.bellman_ford(off, tgt, wt, game.index[start])
    path = [game.index[target]]
    while path[-1] != game.index[start]:
        path.append(pred[path[-1]])
    return [game.states[i] for i in reversed(path)]


# ---------------------------------------------------------------- mean-payoff


def _minimizing_states(game: GameGraph, cfg: MpConfig) -> np.ndarray:
    p1_min = cfg.p1_role == "minimizer"
    return np.array([(o == Player.P1) == p1_min for o in game.owners], dtype=np.uint8)


def default_horizon(game: GameGraph) -> int:
    return 4 * game.n**3 * game.max_abs_weight


def _mp_iteration(game: GameGraph, cfg: MpConfig) -> dict[str, Fraction]:
    k = cfg.horizon or default_horizon(game)
    off, tgt, wt = game.csr
    nu = _core.value_iteration(off, tgt, wt, _minimizing_states(game, cfg), k)
    n = game.n
    return {s: Fraction(v, k).limit_denominator(n) for s, v in zip(game.states, nu)}


def _cycle_mean_by_scc(game: GameGraph, minimize: bool) -> dict[str, Fraction]:
    """Best reachable cycle mean from every state of a one-player game."""
    sign = 1 if minimize else -1
    g = nx.DiGraph()
    g.add_nodes_from(range(game.n))
    off, tgt, wt = game.csr
    for u in range(game.n):
        for e in range(off[u], off[u + 1]):
            g.add_edge(u, int(tgt[e]), w=sign * int(wt[e]))
    cond = nx.condensation(g)
    best: dict[int, Optional[Fraction]] = {}
    for c in reversed(list(nx.topological_sort(cond))):
        members = sorted(cond.nodes[c]["members"])
        own = None
        if len(members) > 1 or g.has_edge(members[0], members[0]):
            local = {v: i for i, v in enumerate(members)}
            offs, tg, ws = [0], [], []
            for v in members:
                for _, x, d in g.out_edges(v, data=True):
                    if x in local:
                        tg.append(local[x])
                        ws.append(d["w"])
                offs.append(len(tg))
            num, den = _core.karp_min_mean(
                np.asarray(offs, dtype=np.int64), np.asarray(tg, dtype=np.int64), _core.weight_array(ws)
            )
            own = Fraction(num, den)
        cands = [own] + [best[d] for d in cond.successors(c)]
        cands = [x for x in cands if x is not None]
        best[c] = min(cands) if cands else None
    mapping = cond.graph["mapping"]
    return {s: sign * best[mapping[i]] for i, s in enumerate(game.states)}


def mp_values(game: GameGraph, cfg: MpConfig = MINIMIZER) -> dict[str, Fraction]:
    """Exact mean-payoff value of every state (P1 optimizing per ``cfg.p1_role``)."""
    ensure_valid(game)
    if game.max_abs_weight == 0:
        return {s: Fraction(0) for s in game.states}
    method = cfg.method
    if method == "auto":
        method = "karp" if game.is_one_player else "iteration"
    if method == "karp":
        if not game.is_one_player:
            raise InvalidInput("Karp's algorithm needs a one-player game")
        p1_min = cfg.p1_role == "minimizer"
        owner_minimizes = (game.single_owner == Player.P1) == p1_min
        return _cycle_mean_by_scc(game, owner_minimizes)
    return _mp_iteration(game, cfg)


def optimal_cycle_strategy(game: GameGraph, start: str, value: Fraction,
                           minimize: bool = True) -> tuple[MemorylessStrategy, Lasso]:
    """Memoryless strategy of the single owner reaching a cycle of mean ``value``.

    Every reachable cycle has mean >= ``value`` (for a minimizer), so with
    weights ``q*w - p`` there is no negative cycle and an optimal cycle is
    made of tight edges of the shortest-path potential.
    """
    sub = game.reachable_subgame(start)
    p, q = value.numerator, value.denominator
    sign = 1 if minimize else -1
    scaled = sub.with_weights(lambda u, v, w: sign * (q * w - p))
    off, tgt, wt = scaled.csr
    dist, _, neg = _core.bellman_ford(off, tgt, wt, scaled.index[start])
    if neg >= 0:
        raise InvalidInput(f"{value} is not the optimal cycle mean from {start!r}")
    tight = {s: [v for v, w in scaled.succ[s] if dist[scaled.index[s]] + w == dist[scaled.index[v]]]
             for s in scaled.states}
    cycle = _find_cycle(scaled.states, tight)
    if cycle is None:
        raise InvalidInput(f"{value} is not attained from {start!r}")
    on_cycle = set(cycle)
    parent = {start: None}
    queue = deque([start])
    hit = start if start in on_cycle else None
    while hit is None:
        u = queue.popleft()
        for v, _ in scaled.succ[u]:
            if v not in parent:
                parent[v] = u
                if v in on_cycle:
                    hit = v
                    break
                queue.append(v)
    path = [hit]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    i = cycle.index(hit)
    cycle = cycle[i:] + cycle[:i]
    choice = {s: succ[0][0] for s, succ in game.succ.items()}
    for a, b in zip(path, path[1:]):
        choice[a] = b
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        choice[a] = b
    owner = game.single_owner or Player.P1
    strat = MemorylessStrategy(owner, {s: v for s, v in choice.items() if game.owner_of[s] == owner})
    return strat, Lasso(tuple(path[:-1]), tuple(cycle))


def _find_cycle(states, succ) -> Optional[list[str]]:
    color = {s: 0 for s in states}
    for root in states:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        trail = [root]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if color[v] == 1:
                    return trail[trail.index(v):]
                if color[v] == 0:
                    color[v] = 1
                    stack.append((v, iter(succ[v])))
                    trail.append(v)
                    break
            else:
                color[u] = 2
                stack.pop()
                trail.pop()
    return None


def edge_fixing_strategy(game: GameGraph, owner: Player, cfg: MpConfig = MINIMIZER) -> MemorylessStrategy:
    """Fix ``owner``'s edges one state at a time, keeping an edge iff no value changes."""
    values = mp_values(game, cfg)
    current = game
    for s in game.states_of(owner):
        succ = current.succ[s]
        if len(succ) == 1:
            continue
        for v, _ in succ:
            trial = GameGraph(current.states, current.owners,
                              tuple(e for e in current.edges if e[0] != s or e[1] == v), current.init)
            if mp_values(trial, cfg) == values:
                current = trial
                break
        else:
            raise AssertionError(f"no value-preserving edge at {s!r}")
    return MemorylessStrategy(owner, {s: current.succ[s][0][0] for s in game.states_of(owner)})


def mp_decide(game: GameGraph, start: str, threshold, cfg: MpConfig = MINIMIZER) -> SolveResult:
    """Mean-payoff threshold problem from ``start`` with memoryless witnesses."""
    ensure_valid(game)
    require_state(game, start)
    threshold = Fraction(threshold)
    sub = game.reachable_subgame(start)
    values = mp_values(sub, cfg)
    value = values[start]
    winner = winner_for(value, threshold)
    if cfg.p1_role == "maximizer":
        winner = Player.P1 if value >= threshold else Player.P2
    if sub.is_one_player:
        p1_min = cfg.p1_role == "minimizer"
        owner = sub.single_owner
        strat, lasso = optimal_cycle_strategy(sub, start, value, minimize=(owner == Player.P1) == p1_min)
        w1, w2 = (strat, None) if owner == Player.P1 else (None, strat)
    else:
        w1 = edge_fixing_strategy(sub, Player.P1, cfg)
        w2 = edge_fixing_strategy(sub, Player.P2, cfg)
        lasso = outcome_lasso(sub, w1, w2, start)
    return SolveResult(value, winner, w1, w2, lasso)


# -------------------------------------------------------------------- energy


def attractor(game: GameGraph, target: set, player: Player) -> dict[str, int]:
    """States from which ``player`` forces a visit to ``target``, with their rank."""
    rank = {s: 0 for s in target if s in game.index}
    preds: dict = {s: [] for s in game.states}
    for u, v, _ in game.edges:
        preds[v].append(u)
    remaining = {s: len(game.succ[s]) for s in game.states}
    queue = deque(rank)
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if u in rank:
                continue
            if game.owner_of[u] == player:
                rank[u] = rank[v] + 1
                queue.append(u)
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    rank[u] = rank[v] + 1
                    queue.append(u)
    return rank


def eglu_solve(game: GameGraph, upper: int) -> SolveResult:
    """Keep the energy within ``[0, upper]`` from credit 0; witnesses are Moore machines."""
    ensure_valid(game)
    expanded = expand_lu(game, upper)
    attr = attractor(expanded, {SINK}, Player.P2)
    init = expanded.init
    p1_choice, p2_choice = {}, {}
    for s in expanded.states:
        succ = [v for v, _ in expanded.succ[s]]
        if expanded.owner_of[s] == Player.P1:
            safe = [v for v in succ if v not in attr]
            p1_choice[s] = safe[0] if safe and s not in attr else succ[0]
        else:
            if s in attr:
                p2_choice[s] = min(succ, key=lambda v: attr.get(v, float("inf")))
            else:
                p2_choice[s] = succ[0]
    if init in attr:
        p2 = MemorylessStrategy(Player.P2, p2_choice)
        p1 = MemorylessStrategy(Player.P1, p1_choice)
        return SolveResult(
            INF, Player.P2,
            witness_p1=lift_strategy(p1, game, upper, allow_breach=True),
            witness_p2=lift_strategy(p2, game, upper, allow_breach=True),
            info={"expanded": expanded},
        )
    p1 = MemorylessStrategy(Player.P1, p1_choice)
    p2 = MemorylessStrategy(Player.P2, p2_choice)
    return SolveResult(
        Fraction(0), Player.P1,
        witness_p1=lift_strategy(p1, game, upper),
        witness_p2=lift_strategy(p2, game, upper, allow_breach=True),
        info={"expanded": expanded},
    )


def egl_min_credit(game: GameGraph) -> dict[str, float]:
    """Least initial credit keeping the energy nonnegative forever (``inf`` if none).

    Progress-measure lifting with ceiling ``n * W``.
    """
    ensure_valid(game)
    top = game.n * game.max_abs_weight
    f = {s: 0 for s in game.states}
    preds: dict = {s: [] for s in game.states}
    for u, v, _ in game.edges:
        preds[v].append(u)

    def lifted(s):
        vals = []
        for v, w in game.succ[s]:
            x = f[v]
            vals.append(INF if x == INF or x - w > top else max(0, x - w))
        return min(vals) if game.owner_of[s] == Player.P1 else max(vals)

    work = deque(game.states)
    queued = set(game.states)
    while work:
        s = work.popleft()
        queued.discard(s)
        new = lifted(s)
        if new > f[s]:
            f[s] = new
            for u in preds[s]:
                if u not in queued:
                    queued.add(u)
                    work.append(u)
    return f
