"""Bounded-energy average-energy games: AELU by reduction, AEL one-player and incremental."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Union

from .ae import ae_value_1p
from .classic import MINIMIZER, attractor, egl_min_credit, eglu_solve, mp_decide, mp_values
from .game import (
    GameGraph,
    InvalidInput,
    MemorylessStrategy,
    MooreStrategy,
    Player,
    SolveResult,
    ensure_valid,
    outcome_lasso,
    require_state,
    restrict,
    winner_for,
)
from .rational import INF
from .reductions import SINK, ae_to_mp_reweight, ael1p_upper_bound, expand_lu, lift_strategy


def _expanded(game: GameGraph, upper: int) -> GameGraph:
    expanded = expand_lu(game, upper)
    return expanded.reachable_subgame(expanded.init)


def _full_choice(game: GameGraph, strat: MemorylessStrategy) -> MemorylessStrategy:
    choice = {s: game.succ[s][0][0] for s in game.states_of(strat.owner)}
    choice.update(strat.choice)
    return MemorylessStrategy(strat.owner, choice)


def aelu_value(game: GameGraph, upper: int) -> Union[Fraction, float]:
    """Least average-energy P1 can guarantee while keeping the energy within ``[0, upper]``."""
    ensure_valid(game)
    arena = _expanded(game, upper)
    if arena.init in attractor(arena, {SINK}, Player.P2):
        return INF
    # any safe play averages charges <= upper, so penalty upper+1 keeps the sink unattractive
    return mp_values(ae_to_mp_reweight(arena, upper), MINIMIZER)[arena.init]


def aelu_decide(game: GameGraph, upper: int, threshold) -> SolveResult:
    """AELU threshold problem with Moore witnesses whose memory is the energy level."""
    ensure_valid(game)
    threshold = Fraction(threshold)
    arena = _expanded(game, upper)
    if arena.init in attractor(arena, {SINK}, Player.P2):
        res = eglu_solve(game, upper)
        res.value = INF
        res.winner = Player.P2
        res.witness_play = outcome_lasso(game, res.witness_p1, res.witness_p2)
        return res
    reweighted = ae_to_mp_reweight(arena, upper)
    mp = mp_decide(reweighted, arena.init, threshold, MINIMIZER)
    full = expand_lu(game, upper)
    res = SolveResult(mp.value, winner_for(mp.value, threshold), info={"upper": upper})
    # a missing witness means that player never moves on the reachable part
    p1_strat = _full_choice(full, mp.witness_p1 or MemorylessStrategy(Player.P1, {}))
    res.info["expanded_p1"] = p1_strat
    res.witness_p1 = lift_strategy(p1_strat, game, upper)
    if game.states_of(Player.P2):
        p2_strat = mp.witness_p2 or MemorylessStrategy(Player.P2, {})
        res.witness_p2 = lift_strategy(_full_choice(full, p2_strat), game, upper, allow_breach=True)
    res.witness_play = outcome_lasso(game, res.witness_p1, res.witness_p2)
    return res


def ael_decide_1p(game: GameGraph, start: Optional[str] = None, threshold=0) -> SolveResult:
    """One-player AEL: reduce to AELU with a bound large enough to lose nothing."""
    ensure_valid(game)
    start = require_state(game, game.init if start is None else start)
    threshold = Fraction(threshold)
    if not game.is_one_player:
        raise InvalidInput("ael_decide_1p needs a one-player game; use ael_incremental_2p")
    g = game.with_init(start)
    if game.single_owner == Player.P2:
        # P2 picks one play: it either breaks the lower bound or maximizes AE
        if egl_min_credit(g)[start] != 0:
            return SolveResult(INF, Player.P2, info={"violates": "energy"})
        res = ae_value_1p(g, start)
        res.winner = winner_for(res.value, threshold)
        return res
    upper = ael1p_upper_bound(g, threshold)
    res = aelu_decide(g, upper, threshold)
    res.info["upper"] = upper
    return res


@dataclass(frozen=True)
class FoundWin:
    upper: int
    strategy: MooreStrategy
    value: Union[Fraction, float]
    result: SolveResult = field(repr=False, compare=False, default=None)


@dataclass(frozen=True)
class Unknown:
    cap: int
    note: str


def schedule_bounds(cap: int, schedule: Literal["linear", "doubling"] = "linear") -> list[int]:
    if cap < 0:
        raise InvalidInput("cap must be nonnegative")
    if schedule == "linear":
        return list(range(cap + 1))
    if schedule != "doubling":
        raise InvalidInput(f"unknown schedule {schedule!r}")
    out, u = [0], 1
    while u < cap:
        out.append(u)
        u *= 2
    if cap > 0:
        out.append(cap)
    return out


def verify_aelu_win(game: GameGraph, upper: int, p1_choice: MemorylessStrategy, threshold) -> bool:
    """Check a memoryless P1 strategy of the expanded arena against every P2 response."""
    arena = expand_lu(game, upper)
    fixed = restrict(arena, p1_choice)
    return ae_value_1p(fixed, arena.init).value <= threshold


def ael_incremental_2p(game: GameGraph, start: Optional[str] = None, threshold=0, cap: int = 16,
                       schedule: Literal["linear", "doubling"] = "linear") -> Union[FoundWin, Unknown]:
    """Semi-decision for two-player AEL: try AELU for growing bounds up to ``cap``.

    A win is sound for AEL; failing up to ``cap`` proves nothing beyond the cap.
    """
    ensure_valid(game)
    start = require_state(game, game.init if start is None else start)
    threshold = Fraction(threshold)
    g = game.with_init(start)
    for upper in schedule_bounds(cap, schedule):
        res = aelu_decide(g, upper, threshold)
        if res.winner != Player.P1:
            continue
        p1_strat = res.info["expanded_p1"]
        if not verify_aelu_win(g, upper, p1_strat, threshold):
            raise AssertionError(f"AELU witness at U={upper} fails verification")
        return FoundWin(upper, res.witness_p1, res.value, res)
    return Unknown(cap, f"no strategy of P1 can simultaneously win the AEL objective and "
                        f"keep the energy at most {cap}")
