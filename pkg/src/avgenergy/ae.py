"""Average-energy values: one-player via best zero cycles, two-player via minimax."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _core
from .classic import has_reachable_negative_cycle, min_energy_reach, shortest_path
from .game import (
    BudgetExceeded,
    GameGraph,
    InvalidInput,
    Lasso,
    MemorylessStrategy,
    MooreStrategy,
    Player,
    SolveResult,
    ensure_valid,
    memoryless_strategies,
    outcome_lasso,
    require_state,
    restrict,
    strategy_count,
    winner_for,
)
from .rational import INF, NEG_INF

DEFAULT_CAP = 1 << 16


@dataclass(frozen=True)
class ZeroCycleResult:
    state: str
    cycle: tuple[str, ...]  # closed walk from ``state``; the return to ``state`` is implicit
    ae: Fraction
    length: int
    level_sum: int


def _require_one_player(game: GameGraph) -> Player:
    if not game.is_one_player:
        raise InvalidInput("expected a one-player game")
    return game.single_owner or Player.P1


def best_zero_cycle(game: GameGraph, s: str) -> Optional[ZeroCycleResult]:
    """Zero-weight closed walk of length at most ``|S|`` on ``s`` with least average-energy.

    Ties go to the lexicographically smallest state sequence (declaration order).
    """
    ensure_valid(game)
    _require_one_player(game)
    require_state(game, s)
    off, tgt, wt = game.csr
    src = game.index[s]
    bound = game.max_abs_weight
    best = _core.zero_cycle_forward(off, tgt, wt, src, game.n, bound)
    candidates = [(Fraction(c, k), k) for k, c in enumerate(best) if c is not None]
    if not candidates:
        return None
    ae = min(a for a, _ in candidates)
    chosen = None
    for a, k in candidates:
        if a != ae:
            continue
        cost, path = _core.zero_cycle_path(off, tgt, wt, src, k, bound)
        if chosen is None or path < chosen[1]:
            chosen = (cost, path)
    cost, path = chosen
    return ZeroCycleResult(s, tuple(game.states[i] for i in path), ae, len(path), cost)


def lasso_strategy(game: GameGraph, lasso: Lasso, owner: Player):
    """A strategy of ``owner`` producing ``lasso`` in a game it fully controls.

    Memoryless when no state repeats along the lasso, otherwise a Moore
    machine whose memory is the position on the lasso.
    """
    seq = list(lasso.prefix) + list(lasso.cycle)
    nxt = [i + 1 for i in range(len(seq) - 1)] + [len(lasso.prefix)]
    if len(set(seq)) == len(seq):
        choice = {s: succ[0][0] for s, succ in game.succ.items() if game.owner_of[s] == owner}
        for i, s in enumerate(seq):
            choice[s] = seq[nxt[i]]
        return MemorylessStrategy(owner, choice)
    update, output = {}, {}
    for i, s in enumerate(seq):
        output[(i, s)] = seq[nxt[i]]
        update[(i, s, seq[nxt[i]])] = nxt[i]
    return MooreStrategy(owner, 0, update, output)


def _path_to(game: GameGraph, start: str, targets: set) -> list[str]:
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for v, _ in game.succ[u]:
            if v not in parent:
                parent[v] = u
                queue.append(v)
    raise InvalidInput(f"no target reachable from {start!r}")


def _ae_min_1p(game: GameGraph, start: str) -> tuple:
    """(value, witness lasso) for the minimizing single owner."""
    cyc = has_reachable_negative_cycle(game, start)
    if cyc is not None:
        path = _path_to(game, start, set(cyc))
        i = cyc.index(path[-1])
        return NEG_INF, Lasso(tuple(path[:-1]), cyc[i:] + cyc[:i])
    dist = min_energy_reach(game, start)
    best = None
    for s in game.states:
        if dist[s] is None:
            continue
        zc = best_zero_cycle(game, s)
        if zc is None:
            continue
        val = dist[s] + zc.ae
        if best is None or val < best[0]:
            best = (val, s, zc)
    if best is None:
        return INF, None
    val, s, zc = best
    path = shortest_path(game, start, s)
    return val, Lasso(tuple(path[:-1]), zc.cycle)


def ae_value_1p(game: GameGraph, start: Optional[str] = None) -> SolveResult:
    """Average-energy value of a one-player game.

    A P2-only game is solved as the minimizing problem on negated weights.
    """
    ensure_valid(game)
    owner = _require_one_player(game)
    start = require_state(game, game.init if start is None else start)
    sub = game.reachable_subgame(start)
    if owner == Player.P1:
        value, lasso = _ae_min_1p(sub, start)
    else:
        value, lasso = _ae_min_1p(sub.negated().reowned(Player.P1), start)
        value = -value
    if lasso is None:
        # every reachable cycle is positive for the owner's purpose, so any play is optimal
        witness = MemorylessStrategy(owner, {s: succ[0][0] for s, succ in game.succ.items()})
        lasso = outcome_lasso(game, witness, witness, start)
    else:
        witness = lasso_strategy(game, lasso, owner)
    res = SolveResult(value, witness_play=lasso)
    if owner == Player.P1:
        res.witness_p1 = witness
    else:
        res.witness_p2 = witness
    return res


def _extend(game: GameGraph, strat: MemorylessStrategy) -> MemorylessStrategy:
    choice = {s: game.succ[s][0][0] for s in game.states_of(strat.owner)}
    choice.update(strat.choice)
    return MemorylessStrategy(strat.owner, choice)


def _optimize_over(sub: GameGraph, start: str, outer: Player, cap: int):
    count = strategy_count(sub, outer)
    if count > cap:
        degrees = " * ".join(str(len(sub.succ[s])) for s in sub.states_of(outer))
        raise BudgetExceeded(f"{outer} has {degrees} = {count} memoryless strategies, above the cap of {cap}")
    pick = max if outer == Player.P2 else min
    best = None
    for strat in memoryless_strategies(sub, outer):
        val = ae_value_1p(restrict(sub, strat), start).value
        if best is None or pick(val, best[0]) != best[0]:
            best = (val, strat)
    return best


def ae_decide_2p(game: GameGraph, start: Optional[str] = None, threshold=0,
                 cap: int = DEFAULT_CAP, p1_witness: bool = True) -> SolveResult:
    """Two-player average-energy value by enumerating P2's memoryless strategies.

    With ``p1_witness`` the dual enumeration over P1 strategies supplies an
    optimal memoryless strategy for P1 as well.
    """
    ensure_valid(game)
    start = require_state(game, game.init if start is None else start)
    threshold = Fraction(threshold)
    if game.is_one_player:
        res = ae_value_1p(game, start)
        res.winner = winner_for(res.value, threshold)
        # the absent player has nothing to decide
        if res.witness_p1 is None:
            res.witness_p1 = MemorylessStrategy(Player.P1, {})
        else:
            res.witness_p2 = MemorylessStrategy(Player.P2, {})
        return res
    sub = game.reachable_subgame(start)
    value, p2_strat = _optimize_over(sub, start, Player.P2, cap)
    res = SolveResult(value, winner_for(value, threshold), witness_p2=_extend(game, p2_strat))
    if p1_witness:
        dual, p1_strat = _optimize_over(sub, start, Player.P1, cap)
        if dual != value:
            raise AssertionError(f"minimax mismatch: {value} vs {dual}")
        res.witness_p1 = _extend(game, p1_strat)
        res.witness_play = outcome_lasso(game, res.witness_p1, res.witness_p2, start)
    return res
