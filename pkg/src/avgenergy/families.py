"""Fixture games and instance generators."""
from __future__ import annotations

import random

from .game import GameGraph, InvalidInput, Lasso
from .reductions import CountdownGame

P1, P2 = 1, 2


def fig2a() -> GameGraph:
    # levels (1, 3, 5, 3)^omega
    return GameGraph.build(
        {"s0": P1, "s1": P1, "s2": P1, "s3": P1, "s4": P1},
        [("s0", "s1", 1), ("s1", "s2", 2), ("s2", "s3", 2), ("s3", "s4", -2), ("s4", "s1", -2)],
        "s0",
    )


def fig2b() -> GameGraph:
    # levels (1, 3, 5, 5, 5, 3)^omega
    return GameGraph.build(
        {f"s{i}": P1 for i in range(7)},
        [("s0", "s1", 1), ("s1", "s2", 2), ("s2", "s3", 2), ("s3", "s4", 0),
         ("s4", "s5", 0), ("s5", "s6", -2), ("s6", "s1", -2)],
        "s0",
    )


FIG2A_PLAY = Lasso(("s0",), ("s1", "s2", "s3", "s4"))
FIG2B_PLAY = Lasso(("s0",), ("s1", "s2", "s3", "s4", "s5", "s6"))


def fig3() -> GameGraph:
    """``s`` with two 2-cycles: through ``s1`` (weights -1, 1) and ``s2`` (1, -1)."""
    return GameGraph.build(
        {"s": P1, "s1": P1, "s2": P1},
        [("s", "s1", -1), ("s1", "s", 1), ("s", "s2", 1), ("s2", "s", -1)],
        "s",
    )


def fig4() -> GameGraph:
    return GameGraph.build(
        {"a": P1, "b": P1, "c": P1},
        [("a", "a", 2), ("a", "c", 1), ("c", "a", 0), ("a", "b", -3), ("b", "a", 0)],
        "a",
    )


# the three plays that keep the energy within [0, 3] on fig4
FIG4_PLAYS = {
    "pi1": Lasso((), tuple("acacacab")),
    "pi2": Lasso((), tuple("aacab")),
    "pi3": Lasso((), tuple("acaab")),
}
# rotations of the lower-bounded plays that stay nonnegative
FIG4_AEL_PLAYS = {
    "pi4": Lasso((), tuple("aaabaab")),
    "pi5": Lasso((), tuple("aaaabab")),
}


def mem_p1(upper: int) -> GameGraph:
    """P1 must climb to ``upper`` through ``sp`` before each ``-upper`` self-loop."""
    if upper < 1:
        raise InvalidInput("memP1 needs U >= 1")
    return GameGraph.build(
        {"s": P1, "sp": P1},
        [("s", "s", -upper), ("s", "sp", 1), ("sp", "s", 0)],
        "s",
    )


def mem_p2(upper: int) -> GameGraph:
    """P2 pumps the energy to ``upper`` via ``c`` and then drops it via ``b``."""
    if upper < 1:
        raise InvalidInput("memP2 needs U >= 1")
    return GameGraph.build(
        {"s": P1, "a": P2, "b": P1, "c": P1, "d": P1, "e": P1, "f": P1, "g": P1},
        [("s", "a", 1), ("a", "b", -1), ("a", "c", 1), ("b", "g", 0), ("c", "g", 0),
         ("g", "d", -upper), ("g", "e", 0), ("g", "f", 1),
         ("d", "a", 0), ("e", "a", 0), ("f", "a", 0)],
        "s",
    )


def random_game(seed: int, n: int, max_weight: int, p2ratio: float = 0.0, max_out: int = 2) -> GameGraph:
    """Seeded random arena: every state reachable from ``s0``, out-degree in ``1..max_out``."""
    if n < 1 or max_weight < 0 or not 0 <= p2ratio <= 1 or max_out < 1:
        raise InvalidInput("random family needs n >= 1, W >= 0, 0 <= p2ratio <= 1, max_out >= 1")
    rng = random.Random(seed)
    names = [f"s{i}" for i in range(n)]
    p2 = set(rng.sample(range(n), round(p2ratio * n)))
    succ = [set() for _ in range(n)]
    for i in range(1, n):
        succ[rng.randrange(i)].add(i)
    for i in range(n):
        want = rng.randint(1, min(max_out, n))
        while len(succ[i]) < want:
            succ[i].add(rng.randrange(n))
    edges = [(names[i], names[j], rng.randint(-max_weight, max_weight))
             for i in range(n) for j in sorted(succ[i])]
    owners = [(names[i], P2 if i in p2 else P1) for i in range(n)]
    return GameGraph.build(owners, edges, names[0])


def countdown(durations=(1, 2), c0: int = 3) -> CountdownGame:
    """Single-state countdown game offering the given durations."""
    return CountdownGame(("v",), tuple(("v", d, "v") for d in durations), "v", c0)


FAMILIES = ("fig2a", "fig2b", "fig3", "fig4", "memP1", "memP2", "random", "countdown")


def generate(family: str, **params):
    if family == "fig2a":
        return fig2a()
    if family == "fig2b":
        return fig2b()
    if family == "fig3":
        return fig3()
    if family == "fig4":
        return fig4()
    if family == "memP1":
        return mem_p1(params.get("upper", 1))
    if family == "memP2":
        return mem_p2(params.get("upper", 1))
    if family == "random":
        return random_game(params.get("seed", 0), params.get("n", 4), params.get("max_weight", 3),
                           params.get("p2ratio", 0.5), params.get("max_out", 2))
    if family == "countdown":
        return countdown(params.get("durations", (1, 2)), params.get("c0", 3))
    raise InvalidInput(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
