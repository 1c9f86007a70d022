"""Arena model, strategies, plays and the shared result type."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .rational import ExtendedRational


class InvalidInput(ValueError):
    """Raised when a game, lasso or strategy violates its contract."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""


class Player(IntEnum):
    P1 = 1
    P2 = 2

    @property
    def opponent(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=True)
class GameGraph:
    """A finite weighted arena.

    ``edges`` is kept as a tuple (not a set) so that :func:`validate` can
    report duplicates; every solver calls :func:`ensure_valid` first.
    """

    states: tuple[str, ...]
    owners: tuple[Player, ...]
    edges: tuple[tuple[str, str, int], ...]
    init: str

    @classmethod
    def build(
        cls,
        states: Union[Mapping[str, int], Iterable[tuple[str, int]]],
        edges: Iterable[tuple[str, str, int]],
        init: str,
    ) -> "GameGraph":
        items = list(states.items()) if isinstance(states, Mapping) else list(states)
        return cls(
            states=tuple(s for s, _ in items),
            owners=tuple(Player(int(o)) for _, o in items),
            edges=tuple((u, v, int(w)) for u, v, w in edges),
            init=init,
        )

    @cached_property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def owner_of(self) -> dict[str, Player]:
        return dict(zip(self.states, self.owners))

    @cached_property
    def weight(self) -> dict[tuple[str, str], int]:
        return {(u, v): w for u, v, w in self.edges}

    @cached_property
    def succ(self) -> dict[str, tuple[tuple[str, int], ...]]:
        """Successors with weights, ordered by successor declaration index."""
        out: dict[str, list[tuple[str, int]]] = {s: [] for s in self.states}
        for (u, v), w in self.weight.items():
            if u in out:
                out[u].append((v, w))
        idx = self.index
        return {s: tuple(sorted(lst, key=lambda e: idx.get(e[0], -1))) for s, lst in out.items()}

    @cached_property
    def max_abs_weight(self) -> int:
        return max((abs(w) for _, _, w in self.edges), default=0)

    @property
    def n(self) -> int:
        return len(self.states)

    def states_of(self, player: Player) -> list[str]:
        return [s for s, o in zip(self.states, self.owners) if o == player]

    @cached_property
    def single_owner(self) -> Optional[Player]:
        """The unique owner when the game is one-player, else ``None``."""
        owners = set(self.owners)
        if len(owners) == 1:
            return next(iter(owners))
        return None

    @property
    def is_one_player(self) -> bool:
        return self.single_owner is not None

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(offsets, targets, weights)`` in state-index order.

        Weights are int64 unless some weight needs more bits, in which case
        they are kept as Python ints and the kernels run in pure Python.
        """
        idx = self.index
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        targets, weights = [], []
        for i, s in enumerate(self.states):
            for v, w in self.succ[s]:
                targets.append(idx[v])
                weights.append(w)
            offsets[i + 1] = len(targets)
        from ._core import weight_array

        return offsets, np.asarray(targets, dtype=np.int64), weight_array(weights)

    def reachable(self, start: Optional[str] = None) -> list[str]:
        """States reachable from ``start`` (default: init), in BFS order."""
        start = self.init if start is None else start
        seen = {start}
        order = [start]
        i = 0
        while i < len(order):
            for v, _ in self.succ[order[i]]:
                if v not in seen:
                    seen.add(v)
                    order.append(v)
            i += 1
        return order

    def subgame(self, keep: Iterable[str], init: Optional[str] = None) -> "GameGraph":
        """Induced subgame on ``keep`` (declaration order preserved)."""
        keep = set(keep)
        return GameGraph(
            states=tuple(s for s in self.states if s in keep),
            owners=tuple(o for s, o in zip(self.states, self.owners) if s in keep),
            edges=tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
            init=self.init if init is None else init,
        )

    def reachable_subgame(self, start: Optional[str] = None) -> "GameGraph":
        start = self.init if start is None else start
        return self.subgame(self.reachable(start), init=start)

    def with_init(self, init: str) -> "GameGraph":
        return GameGraph(self.states, self.owners, self.edges, init)

    def with_weights(self, fn) -> "GameGraph":
        """Copy with every edge ``(u, v, w)`` reweighted to ``fn(u, v, w)``."""
        return GameGraph(
            self.states, self.owners, tuple((u, v, int(fn(u, v, w))) for u, v, w in self.edges), self.init
        )

    def negated(self) -> "GameGraph":
        return self.with_weights(lambda u, v, w: -w)

    def reowned(self, owner: Player) -> "GameGraph":
        return GameGraph(self.states, (owner,) * self.n, self.edges, self.init)


def validate(game: GameGraph) -> list[str]:
    """Return one message per violated arena invariant (empty when valid)."""
    problems = []
    declared = set()
    for s in game.states:
        if s in declared:
            problems.append(f"duplicate state {s!r}")
        declared.add(s)
    if len(game.owners) != len(game.states):
        problems.append("owner list does not match state list")
    if game.init not in declared:
        problems.append(f"init {game.init!r} is not a declared state")
    seen_pairs = set()
    for u, v, _ in game.edges:
        for end in (u, v):
            if end not in declared:
                problems.append(f"edge ({u!r},{v!r}) uses undeclared state {end!r}")
        if (u, v) in seen_pairs:
            problems.append(f"duplicate edge ({u!r},{v!r})")
        seen_pairs.add((u, v))
    sources = {u for u, _, _ in game.edges}
    for s in game.states:
        if s not in sources:
            problems.append(f"blocking state {s!r} has no outgoing edge")
    return problems


def ensure_valid(game: GameGraph) -> GameGraph:
    problems = validate(game)
    if problems:
        raise InvalidInput("invalid game: " + "; ".join(problems))
    return game


def require_state(game: GameGraph, s: str) -> str:
    if s not in game.index:
        raise InvalidInput(f"unknown state {s!r}")
    return s


# --------------------------------------------------------------------- plays


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic play ``prefix · cycle^ω``.

    The cycle wraps from its last state back to its first one; the edge from
    the last prefix state enters ``cycle[0]``.
    """

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise InvalidInput("lasso cycle must be nonempty")

    @property
    def start(self) -> str:
        return self.prefix[0] if self.prefix else self.cycle[0]

    def weights(self, game: GameGraph) -> tuple[list[int], list[int]]:
        """Edge weights of the prefix (including the junction edge) and of the cycle."""
        w = game.weight
        path = list(self.prefix) + [self.cycle[0]]
        cyc = list(self.cycle) + [self.cycle[0]]
        try:
            pre = [w[(a, b)] for a, b in zip(path, path[1:])]
            cw = [w[(a, b)] for a, b in zip(cyc, cyc[1:])]
        except KeyError as exc:
            raise InvalidInput(f"lasso uses missing edge {exc.args[0]}") from None
        return pre, cw

    def unroll(self, steps: int) -> list[str]:
        """The first ``steps + 1`` states of the play."""
        out = list(self.prefix[: steps + 1])
        i = 0
        while len(out) < steps + 1:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return out


def check_lasso(game: GameGraph, lasso: Lasso, start: Optional[str] = None) -> None:
    for s in lasso.prefix + lasso.cycle:
        require_state(game, s)
    lasso.weights(game)
    if start is not None and lasso.start != start:
        raise InvalidInput(f"lasso starts at {lasso.start!r}, expected {start!r}")


# ---------------------------------------------------------------- strategies


@dataclass(frozen=True)
class MemorylessStrategy:
    owner: Player
    choice: Mapping[str, str]

    def initial_memory(self):
        return None

    def choose(self, memory, state: str) -> str:
        try:
            return self.choice[state]
        except KeyError:
            raise InvalidInput(f"{self.owner} strategy has no decision at {state!r}") from None

    def update(self, memory, src: str, dst: str):
        return None

    def to_moore(self, game: GameGraph, memory_symbol: str = "0") -> "MooreStrategy":
        upd = {(memory_symbol, u, v): memory_symbol for u, v, _ in game.edges}
        out = {(memory_symbol, s): t for s, t in self.choice.items()}
        return MooreStrategy(self.owner, memory_symbol, upd, out)


def check_memoryless(game: GameGraph, strat: MemorylessStrategy) -> None:
    for s in game.states_of(strat.owner):
        if s not in strat.choice:
            raise InvalidInput(f"{strat.owner} strategy misses owned state {s!r}")
        if (s, strat.choice[s]) not in game.weight:
            raise InvalidInput(f"strategy picks missing edge ({s!r},{strat.choice[s]!r})")


@dataclass(frozen=True)
class MooreStrategy:
    """Finite-memory strategy.

    ``update[(m, u, v)]`` is the memory after the move ``u -> v`` (for moves of
    either player); ``output[(m, s)]`` is the successor chosen at an owned
    state ``s`` under memory ``m``.
    """

    owner: Player
    memory_init: Any
    update_map: Mapping[tuple, Any]
    output: Mapping[tuple, str]

    def initial_memory(self):
        return self.memory_init

    def choose(self, memory, state: str) -> str:
        try:
            return self.output[(memory, state)]
        except KeyError:
            raise InvalidInput(
                f"{self.owner} strategy has no decision at {state!r} with memory {memory!r}"
            ) from None

    def update(self, memory, src: str, dst: str):
        try:
            return self.update_map[(memory, src, dst)]
        except KeyError:
            raise InvalidInput(f"no memory update for {memory!r} on move {src!r}->{dst!r}") from None

    def reachable_memory(self, game: GameGraph, start: Optional[str] = None) -> set:
        """Memory values met on some play consistent with this strategy."""
        start = game.init if start is None else start
        frontier = [(self.memory_init, start)]
        seen = set(frontier)
        while frontier:
            m, s = frontier.pop()
            if game.owner_of[s] == self.owner:
                moves = [self.choose(m, s)]
            else:
                moves = [v for v, _ in game.succ[s]]
            for v in moves:
                nxt = (self.update(m, s, v), v)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return {m for m, _ in seen}


Strategy = Union[MemorylessStrategy, MooreStrategy]


def restrict(game: GameGraph, strat: MemorylessStrategy) -> GameGraph:
    """Fix ``strat`` in ``game``; the result is owned entirely by the opponent."""
    ensure_valid(game)
    check_memoryless(game, strat)
    owner = strat.owner
    edges = tuple(
        (u, v, w)
        for u, v, w in game.edges
        if game.owner_of[u] != owner or strat.choice[u] == v
    )
    return GameGraph(game.states, (owner.opponent,) * game.n, edges, game.init)


def _mover(game: GameGraph, s: str, strat1, strat2):
    strat = strat1 if game.owner_of[s] == Player.P1 else strat2
    if strat is None:
        raise InvalidInput(f"no strategy supplied for {game.owner_of[s]} at {s!r}")
    return strat


def outcome(game: GameGraph, strat1: Optional[Strategy], strat2: Optional[Strategy], steps: int,
            start: Optional[str] = None) -> list[str]:
    """The unique consistent play prefix with ``steps`` edges."""
    if steps < 0:
        raise InvalidInput("steps must be nonnegative")
    s = game.init if start is None else start
    mems = [strat1.initial_memory() if strat1 else None, strat2.initial_memory() if strat2 else None]
    strats = [strat1, strat2]
    play = [s]
    for _ in range(steps):
        mover = _mover(game, s, strat1, strat2)
        k = 0 if game.owner_of[s] == Player.P1 else 1
        nxt = mover.choose(mems[k], s)
        if (s, nxt) not in game.weight:
            raise InvalidInput(f"strategy moves along missing edge ({s!r},{nxt!r})")
        for j in (0, 1):
            if strats[j] is not None:
                mems[j] = strats[j].update(mems[j], s, nxt)
        s = nxt
        play.append(s)
    return play


def outcome_lasso(game: GameGraph, strat1: Optional[Strategy], strat2: Optional[Strategy],
                  start: Optional[str] = None) -> Lasso:
    """The outcome of two finite-memory strategies, folded into a lasso."""
    s = game.init if start is None else start
    strats = [strat1, strat2]
    mems = [st.initial_memory() if st else None for st in strats]
    seen: dict = {}
    play: list[str] = []
    while True:
        key = (s, _freeze(mems[0]), _freeze(mems[1]))
        if key in seen:
            i = seen[key]
            return Lasso(tuple(play[:i]), tuple(play[i:]))
        seen[key] = len(play)
        play.append(s)
        mover = _mover(game, s, strat1, strat2)
        k = 0 if game.owner_of[s] == Player.P1 else 1
        nxt = mover.choose(mems[k], s)
        if (s, nxt) not in game.weight:
            raise InvalidInput(f"strategy moves along missing edge ({s!r},{nxt!r})")
        for j in (0, 1):
            if strats[j] is not None:
                mems[j] = strats[j].update(mems[j], s, nxt)
        s = nxt


def _freeze(m):
    try:
        hash(m)
        return m
    except TypeError:
        return repr(m)


# ------------------------------------------------------------------- results


@dataclass
class SolveResult:
    value: Optional[ExtendedRational]
    winner: Optional[Player] = None
    witness_p1: Optional[Strategy] = None
    witness_p2: Optional[Strategy] = None
    witness_play: Optional[Lasso] = None
    info: dict = field(default_factory=dict)


def winner_for(value: ExtendedRational, threshold) -> Player:
    """Minimizer convention: P1 wins iff the value is at most the threshold."""
    return Player.P1 if value <= threshold else Player.P2


def memoryless_strategies(game: GameGraph, owner: Player, states: Optional[Sequence[str]] = None):
    """Yield every memoryless strategy of ``owner``.

    Only ``states`` branch (default: all owned states); the other owned states
    are pinned to their first successor.
    """
    owned = game.states_of(owner)
    branch = owned if states is None else [s for s in owned if s in set(states)]
    fixed = {s: game.succ[s][0][0] for s in owned if s not in set(branch)}
    choices = [[v for v, _ in game.succ[s]] for s in branch]
    for combo in itertools.product(*choices):
        choice = dict(fixed)
        choice.update(zip(branch, combo))
        yield MemorylessStrategy(owner, choice)


def strategy_count(game: GameGraph, owner: Player, states: Optional[Sequence[str]] = None) -> int:
    owned = game.states_of(owner)
    branch = owned if states is None else [s for s in owned if s in set(states)]
    total = 1
    for s in branch:
        total *= len(game.succ[s])
    return total
