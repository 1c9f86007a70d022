"""Text formats: games, lassos, strategies and CSV energy traces.

Game files are line oriented::

    # comment
    state a 1
    edge a b -3
    init a

Strategy files hold an owner, an initial memory and one ``at`` line per
memory update; at owned states the listed successor is also the choice::

    owner 1
    memory-init 0
    at 0 a -> c 1
"""
from __future__ import annotations

import csv
import io
import re
from typing import Optional, Union

from .game import (
    GameGraph,
    InvalidInput,
    Lasso,
    MemorylessStrategy,
    MooreStrategy,
    Player,
    check_lasso,
    outcome,
    validate,
)

IDENT = re.compile(r"[A-Za-z0-9_()+,\-]+")
Strategy = Union[MemorylessStrategy, MooreStrategy]


def _fail(lineno: int, msg: str):
    raise InvalidInput(f"line {lineno}: {msg}")


def _ident(tok: str, lineno: int) -> str:
    if not IDENT.fullmatch(tok):
        _fail(lineno, f"bad identifier {tok!r}")
    return tok


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        _fail(lineno, f"expected an integer, got {tok!r}")


def parse_game(text: str) -> GameGraph:
    states, edges, init = [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        head = parts[0]
        if head == "state" and len(parts) == 3:
            owner = _int(parts[2], lineno)
            if owner not in (1, 2):
                _fail(lineno, f"owner must be 1 or 2, got {owner}")
            states.append((_ident(parts[1], lineno), owner))
        elif head == "edge" and len(parts) == 4:
            edges.append((_ident(parts[1], lineno), _ident(parts[2], lineno), _int(parts[3], lineno)))
        elif head == "init" and len(parts) == 2:
            if init is not None:
                _fail(lineno, "duplicate init")
            init = _ident(parts[1], lineno)
        else:
            _fail(lineno, f"cannot parse {line!r}")
    if init is None:
        raise InvalidInput("missing init")
    game = GameGraph.build(states, edges, init)
    problems = validate(game)
    if problems:
        raise InvalidInput("; ".join(problems))
    return game


def serialize_game(game: GameGraph) -> str:
    lines = [f"state {s} {int(o)}" for s, o in sorted(zip(game.states, game.owners))]
    lines += [f"edge {u} {v} {w}" for u, v, w in sorted(game.edges)]
    lines.append(f"init {game.init}")
    return "\n".join(lines) + "\n"


def canonical(game: GameGraph) -> tuple:
    """Order-insensitive form, for comparing games up to declaration order."""
    return (frozenset(zip(game.states, game.owners)), frozenset(game.edges), game.init)


def parse_lasso(text: str, game: Optional[GameGraph] = None) -> Lasso:
    """``s0 s1 ( c0 c1 )``; the parentheses must be separate tokens."""
    toks = text.split()
    if toks.count("(") != 1 or toks.count(")") != 1:
        raise InvalidInput("lasso needs exactly one '(' and one ')' token")
    i, j = toks.index("("), toks.index(")")
    if j != len(toks) - 1 or j < i:
        raise InvalidInput("the cycle must close the lasso: 'prefix ( cycle )'")
    lasso = Lasso(tuple(toks[:i]), tuple(toks[i + 1:j]))
    if game is not None:
        check_lasso(game, lasso)
    return lasso


def serialize_lasso(lasso: Lasso) -> str:
    return " ".join(list(lasso.prefix) + ["("] + list(lasso.cycle) + [")"])


def _mem(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def serialize_strategy(strat: Strategy, game: GameGraph) -> str:
    if isinstance(strat, MemorylessStrategy):
        strat = strat.to_moore(game)
        lines = [f"at 0 {s} -> {v} 0" for (_, s), v in sorted(strat.output.items())]
        return f"owner {int(strat.owner)}\nmemory-init 0\n" + "\n".join(lines) + "\n"
    lines = [f"owner {int(strat.owner)}", f"memory-init {strat.memory_init}"]
    entries = sorted(strat.update_map.items(), key=lambda kv: tuple(map(str, kv[0])))
    for (m, s, v), nxt in entries:
        if game.owner_of[s] == strat.owner and strat.output.get((m, s)) != v:
            continue  # update of a move the owner never makes
        lines.append(f"at {m} {s} -> {v} {nxt}")
    return "\n".join(lines) + "\n"


def parse_strategy(text: str, game: GameGraph) -> Strategy:
    owner, init = Player.P1, None
    update, output = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "owner" and len(parts) == 2:
            if parts[1] not in ("1", "2"):
                _fail(lineno, "owner must be 1 or 2")
            owner = Player(int(parts[1]))
        elif parts[0] == "memory-init" and len(parts) == 2:
            init = _mem(parts[1])
        elif parts[0] == "at" and len(parts) == 6 and parts[3] == "->":
            m, s, v, nxt = _mem(parts[1]), parts[2], parts[4], _mem(parts[5])
            if (s, v) not in game.weight:
                _fail(lineno, f"no edge ({s},{v}) in the game")
            update[(m, s, v)] = nxt
            if game.owner_of[s] == owner:
                if output.setdefault((m, s), v) != v:
                    _fail(lineno, f"two choices at memory {m} in state {s}")
        else:
            _fail(lineno, f"cannot parse {line!r}")
    if init is None:
        raise InvalidInput("missing memory-init")
    memories = {init} | {m for m, _, _ in update} | set(update.values())
    if len(memories) == 1:
        return MemorylessStrategy(owner, {s: v for (_, s), v in output.items()})
    return MooreStrategy(owner, init, update, output)


def emit_trace_csv(game: GameGraph, strat1: Optional[Strategy], strat2: Optional[Strategy], steps: int) -> str:
    play = outcome(game, strat1, strat2, steps)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "state", "energy"])
    level = 0
    for n, s in enumerate(play):
        if n:
            level += game.weight[(play[n - 1], s)]
        writer.writerow([n, s, level])
    return buf.getvalue()
