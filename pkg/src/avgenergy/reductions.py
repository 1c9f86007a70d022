"""Graph-to-graph constructions between the objectives.

Expanded arenas name their states ``"(s,c)"`` for base state ``s`` at energy
level ``c``, plus a single absorbing :data:`SINK` reached on any breach of
the energy bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .game import (
    GameGraph,
    InvalidInput,
    MemorylessStrategy,
    MooreStrategy,
    Player,
    ensure_valid,
)

SINK = "sink"
BREACH = "breach"  # memory value of a lifted strategy after a bound violation


def expanded_id(s: str, c: int) -> str:
    return f"({s},{c})"


def parse_expanded_id(sid: str) -> Optional[tuple[str, int]]:
    """``(base, charge)`` for an expanded state, ``None`` for the sink."""
    if sid == SINK:
        return None
    if not (sid.startswith("(") and sid.endswith(")")) or "," not in sid:
        raise InvalidInput(f"{sid!r} is not an expanded state id")
    base, _, charge = sid[1:-1].rpartition(",")
    try:
        return base, int(charge)
    except ValueError:
        raise InvalidInput(f"{sid!r} is not an expanded state id") from None


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "+"
    taken.add(name)
    return name


def mp_to_ae(game: GameGraph) -> tuple[GameGraph, dict]:
    """Split every edge ``(u, v, w)`` into ``u -2w-> m -(-2w)-> v``.

    Each split pair has energy 0 and average-energy ``w``, so mean-payoff
    thresholds carry over unchanged. The returned map sends every image state
    to its origin: a state id, or the ``(u, v)`` edge a midpoint replaces.
    """
    ensure_valid(game)
    taken = set(game.states)
    states = list(zip(game.states, game.owners))
    edges = []
    origin: dict = {s: s for s in game.states}
    for u, v, w in sorted(game.edges, key=lambda e: (game.index[e[0]], game.index[e[1]])):
        m = _fresh(f"({u},{v})", taken)
        states.append((m, game.owner_of[u]))
        edges.append((u, m, 2 * w))
        edges.append((m, v, -2 * w))
        origin[m] = (u, v)
    return GameGraph.build(states, edges, game.init), origin


def expand_lu(game: GameGraph, upper: int) -> GameGraph:
    """Encode the energy interval ``[0, upper]`` into the states.

    Moves leaving the interval are merged into one weight-1 edge to the sink,
    which carries a weight-1 self-loop.
    """
    ensure_valid(game)
    if upper < 0:
        raise InvalidInput("upper bound must be nonnegative")
    states, edges = [], []
    for s, owner in zip(game.states, game.owners):
        for c in range(upper + 1):
            sid = expanded_id(s, c)
            states.append((sid, owner))
            breach = False
            for v, w in game.succ[s]:
                if 0 <= c + w <= upper:
                    edges.append((sid, expanded_id(v, c + w), w))
                else:
                    breach = True
            if breach:
                edges.append((sid, SINK, 1))
    states.append((SINK, Player.P1))
    edges.append((SINK, SINK, 1))
    return GameGraph.build(states, edges, expanded_id(game.init, 0))


def ae_to_mp_reweight(expanded: GameGraph, threshold) -> GameGraph:
    """Weight every move by the energy level of its source; the sink loop by ``ceil(t)+1``."""
    penalty = math.ceil(Fraction(threshold)) + 1
    charge = {}
    for s in expanded.states:
        parsed = parse_expanded_id(s)
        charge[s] = penalty if parsed is None else parsed[1]
    return expanded.with_weights(lambda u, v, w: charge[u])


def ael1p_upper_bound(game: GameGraph, threshold) -> int:
    n_bound = game.max_abs_weight * (game.n + 2)
    return max(0, math.ceil(Fraction(threshold))) + n_bound**2 + n_bound**3


@dataclass(frozen=True)
class CountdownGame:
    states: tuple[str, ...]
    edges: tuple[tuple[str, int, str], ...]
    init: str
    c0: int

    def __post_init__(self):
        if self.init not in self.states:
            raise InvalidInput(f"countdown init {self.init!r} is not a state")
        if self.c0 <= 0:
            raise InvalidInput("countdown initial counter must be positive")
        for v, d, v2 in self.edges:
            if d <= 0:
                raise InvalidInput(f"duration {d} on ({v},{v2}) must be positive")
            if v not in self.states or v2 not in self.states:
                raise InvalidInput(f"countdown edge ({v},{d},{v2}) uses an unknown state")


def countdown_to_ael(cd: CountdownGame) -> tuple[GameGraph, Fraction]:
    """Countdown game -> two-player lower-bounded average-energy game at threshold 0."""
    taken = set(cd.states)
    start = _fresh("start", taken)
    stop = _fresh("stop", taken)
    states = [(start, Player.P1)] + [(v, Player.P1) for v in cd.states]
    edges = [(start, cd.init, cd.c0)]
    durations: dict = {}
    for v, d, v2 in cd.edges:
        durations.setdefault((v, d), []).append(v2)
    for v in cd.states:
        edges.append((v, stop, 0))
    for (v, d), succs in durations.items():
        node = _fresh(f"({v},{d})", taken)
        states.append((node, Player.P2))
        edges.append((v, node, -d))
        for v2 in dict.fromkeys(succs):
            edges.append((node, v2, 0))
    states.append((stop, Player.P1))
    edges.append((stop, stop, 0))
    return GameGraph.build(states, edges, start), Fraction(0)


def lift_strategy(memless: MemorylessStrategy, game: GameGraph, upper: int,
                  allow_breach: bool = False) -> MooreStrategy:
    """Turn a memoryless strategy of ``expand_lu(game, upper)`` into a Moore machine on ``game``.

    Memory is the current energy level. With ``allow_breach`` (for the
    opponent of the energy objective) a move into the sink is projected onto
    the first breaching move and memory becomes :data:`BREACH`.
    """
    owner = memless.owner
    update: dict = {}
    output: dict = {}
    frontier = [(0, game.init)]
    seen = set(frontier)
    breached = False

    def push(c, v):
        if (c, v) not in seen:
            seen.add((c, v))
            frontier.append((c, v))

    while frontier:
        c, s = frontier.pop()
        moves = game.succ[s]
        if game.owner_of[s] == owner:
            target = memless.choice.get(expanded_id(s, c))
            if target is None:
                raise InvalidInput(f"strategy has no decision at {expanded_id(s, c)}")
            if target == SINK:
                if not allow_breach:
                    raise InvalidInput(f"strategy moves into the sink from {expanded_id(s, c)}")
                v = next(v for v, w in moves if not 0 <= c + w <= upper)
            else:
                v = parse_expanded_id(target)[0]
            output[(c, s)] = v
            moves = [(v, game.weight[(s, v)])]
        for v, w in moves:
            if 0 <= c + w <= upper:
                update[(c, s, v)] = c + w
                push(c + w, v)
            else:
                update[(c, s, v)] = BREACH
                breached = True
    if breached:
        for s in game.states:
            for v, _ in game.succ[s]:
                update[(BREACH, s, v)] = BREACH
            if game.owner_of[s] == owner:
                output[(BREACH, s)] = game.succ[s][0][0]
    return MooreStrategy(owner, 0, update, output)
