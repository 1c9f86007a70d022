"""Brute-force ground truth for small games.

Everything here enumerates: simple lassos for one-player games and
memoryless strategies of one player for two-player games. It is meant for
cross-checking the solvers, not for production use.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .game import (
    BudgetExceeded,
    GameGraph,
    InvalidInput,
    Lasso,
    Player,
    SolveResult,
    ensure_valid,
    memoryless_strategies,
    require_state,
    restrict,
    strategy_count,
)
from .payoff import EnergyConstraint, PayoffKind, energy_bounds_ok, lasso_value_from_weights
from .rational import INF


@dataclass(frozen=True)
class OracleBudget:
    max_prefix_len: Optional[int] = None  # default |S| - 1
    max_cycle_len: Optional[int] = None  # default |S|
    max_strategy_count: int = 100_000

    def __post_init__(self):
        for name in ("max_prefix_len", "max_cycle_len"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise InvalidInput(f"{name} must be nonnegative")
        if self.max_strategy_count < 1:
            raise InvalidInput("max_strategy_count must be positive")

    def limits(self, game: GameGraph) -> tuple[int, int]:
        pre = game.n - 1 if self.max_prefix_len is None else self.max_prefix_len
        cyc = game.n if self.max_cycle_len is None else self.max_cycle_len
        return pre, cyc


DEFAULT_BUDGET = OracleBudget()


def enumerate_simple_lassos(game: GameGraph, start: str,
                            budget: OracleBudget = DEFAULT_BUDGET) -> Iterator[Lasso]:
    """Every lasso whose prefix and cycle together visit pairwise distinct states.

    A lasso is determined by its underlying simple path and the back edge
    closing it, so a DFS over simple paths yields each one exactly once.
    """
    ensure_valid(game)
    require_state(game, start)
    max_pre, max_cyc = budget.limits(game)
    path = [start]
    pos = {start: 0}

    def dfs():
        u = path[-1]
        for v, _ in game.succ[u]:
            if v in pos:
                i = pos[v]
                if i <= max_pre and len(path) - i <= max_cyc:
                    yield Lasso(tuple(path[:i]), tuple(path[i:]))
            elif len(path) < max_pre + max_cyc:
                pos[v] = len(path)
                path.append(v)
                yield from dfs()
                path.pop()
                del pos[v]

    yield from dfs()


def _constrained_value(game: GameGraph, lasso: Lasso, kind: PayoffKind, c: Optional[EnergyConstraint]):
    pre, cyc = lasso.weights(game)
    if c is not None and not energy_bounds_ok(pre, cyc, c):
        return INF  # the energy objective is lost, so P1 loses regardless of the threshold
    return lasso_value_from_weights(pre, cyc, kind)


def best_lasso_value(game: GameGraph, start: str, kind: PayoffKind,
                     c: Optional[EnergyConstraint] = None,
                     budget: OracleBudget = DEFAULT_BUDGET) -> tuple:
    """Optimal simple-lasso value in a one-player game, with a witness lasso.

    The single owner minimizes when it is P1 and maximizes when it is P2.
    Bound violations count as ``+inf``.
    """
    ensure_valid(game)
    if not game.is_one_player:
        raise InvalidInput("best_lasso_value needs a one-player game")
    maximize = game.single_owner == Player.P2
    best, witness = None, None
    for lasso in enumerate_simple_lassos(game, start, budget):
        val = _constrained_value(game, lasso, kind, c)
        if best is None or (val > best if maximize else val < best):
            best, witness = val, lasso
            if best == (INF if maximize else -INF):
                break
    if best is None or (best == INF and not maximize):
        return INF, None
    return best, witness


def minimax_value(game: GameGraph, start: str, kind: PayoffKind,
                  c: Optional[EnergyConstraint] = None,
                  budget: OracleBudget = DEFAULT_BUDGET,
                  outer: Player = Player.P2) -> SolveResult:
    """Game value by enumerating ``outer``'s memoryless strategies.

    Each strategy is fixed and the remaining one-player game is solved by
    :func:`best_lasso_value`. Enumerating P1 instead of P2 gives the dual
    min-max, equal to the max-min by memoryless determinacy.
    """
    ensure_valid(game)
    require_state(game, start)
    sub = game.reachable_subgame(start)
    if sub.is_one_player:
        val, lasso = best_lasso_value(sub, start, kind, c, budget)
        return SolveResult(val, witness_play=lasso)
    count = strategy_count(sub, outer)
    if count > budget.max_strategy_count:
        raise BudgetExceeded(f"{count} memoryless strategies for {outer} exceed {budget.max_strategy_count}")
    pick_better = (lambda a, b: a > b) if outer == Player.P2 else (lambda a, b: a < b)
    best = None
    for strat in memoryless_strategies(sub, outer):
        val, lasso = best_lasso_value(restrict(sub, strat), start, kind, c, budget)
        if best is None or pick_better(val, best[0]):
            best = (val, strat, lasso)
    val, strat, lasso = best
    res = SolveResult(val, witness_play=lasso)
    if outer == Player.P2:
        res.witness_p2 = strat
    else:
        res.witness_p1 = strat
    return res
