from fractions import Fraction

import pytest
from hypothesis import given, settings

from avgenergy.ae import ae_decide_2p, ae_value_1p, best_zero_cycle, lasso_strategy
from avgenergy.families import fig3, fig4, random_game
from avgenergy.game import (
    BudgetExceeded,
    GameGraph,
    InvalidInput,
    Lasso,
    Player,
    memoryless_strategies,
    outcome_lasso,
    restrict,
)
from avgenergy.oracle import best_lasso_value, minimax_value
from avgenergy.payoff import AE, lasso_value, prefix_payoff
from avgenergy.rational import INF, NEG_INF
from avgenergy.reductions import mp_to_ae
from gamegen import arenas


def loop(w):
    return GameGraph.build({"s": 1}, [("s", "s", w)], "s")


def gadget_choice():
    """P2 at q picks between zero cycles with average-energy 1 and 2."""
    return GameGraph.build(
        {"q": 2, "x": 1, "y": 1},
        [("q", "x", 2), ("x", "q", -2), ("q", "y", 4), ("y", "q", -4)],
        "q",
    )


def test_fig3_best_zero_cycle():
    zc = best_zero_cycle(fig3(), "s")
    assert zc.cycle == ("s", "s1") and zc.ae == Fraction(-1, 2)
    assert zc.level_sum == zc.length * zc.ae


def test_zero_loop():
    zc = best_zero_cycle(loop(0), "s")
    assert zc.length == 1 and zc.ae == 0


def test_fig4_has_no_short_zero_cycle():
    assert best_zero_cycle(fig4(), "a") is None


def test_best_zero_cycle_rejects_two_player():
    with pytest.raises(InvalidInput):
        best_zero_cycle(random_game(2, 4, 2, 0.5), "s0")


def test_fig3_value():
    res = ae_value_1p(fig3(), "s")
    assert res.value == Fraction(-1, 2)
    assert lasso_value(fig3(), res.witness_play, AE) == res.value


def test_negative_loop_value():
    assert ae_value_1p(loop(-1)).value == NEG_INF


def test_fig4_unconstrained_value_is_minus_infinity():
    # the a-b round trip loses 3 energy per lap
    res = ae_value_1p(fig4(), "a")
    assert res.value == NEG_INF
    assert lasso_value(fig4(), res.witness_play, AE) == NEG_INF


def test_positive_loop_value():
    assert ae_value_1p(loop(1)).value == INF


def test_p2_only_game_maximizes():
    g = gadget_choice()
    g = GameGraph(g.states, (Player.P2,) * 3, g.edges, g.init)
    assert ae_value_1p(g).value == 2


def test_ae_2p_gadget():
    res = ae_decide_2p(gadget_choice(), threshold=Fraction(3, 2))
    assert res.value == 2 and res.winner == Player.P2
    assert res.witness_p2.choice["q"] == "y"


def test_ae_2p_one_player_equals_1p():
    assert ae_decide_2p(fig3()).value == ae_value_1p(fig3()).value


def test_mp_to_ae_two_player_value():
    g = GameGraph.build({"q": 2, "r": 1}, [("q", "q", 1), ("q", "r", 2), ("r", "q", 2)], "q")
    image, _ = mp_to_ae(g)
    assert ae_decide_2p(image).value == 2


def test_budget_error_names_degrees():
    with pytest.raises(BudgetExceeded, match=r"= \d+"):
        ae_decide_2p(random_game(5, 6, 2, 0.5, max_out=3), cap=1)


def test_lasso_strategy_memoryless_and_moore():
    g = fig4()
    simple = lasso_strategy(g, Lasso((), ("a", "c")), Player.P1)
    assert outcome_lasso(g, simple, None) == Lasso((), ("a", "c"))
    repeated = lasso_strategy(g, Lasso((), tuple("acaab")), Player.P1)
    assert outcome_lasso(g, repeated, None) == Lasso((), tuple("acaab"))


@settings(max_examples=200)
@given(arenas(max_states=6, two_player=False))
def test_one_player_matches_oracle(game):
    res = ae_value_1p(game)
    assert res.value == best_lasso_value(game, game.init, AE)[0]
    if res.witness_play is not None:
        assert lasso_value(game, res.witness_play, AE) == res.value


def _all_lassos(game, max_prefix, max_cycle):
    """Every lasso, repeated states allowed, within the given lengths."""
    def walks(path):
        yield path
        if len(path) < max_prefix + max_cycle:
            for v, _ in game.succ[path[-1]]:
                yield from walks(path + [v])

    for path in walks([game.init]):
        for i in range(min(len(path), max_prefix + 1)):
            cyc = path[i:]
            if 0 < len(cyc) <= max_cycle and (cyc[-1], cyc[0]) in game.weight:
                yield Lasso(tuple(path[:i]), tuple(cyc))


@settings(max_examples=60)
@given(arenas(max_states=3, two_player=False, max_out=2))
def test_memoryless_sufficiency(game):
    value = ae_value_1p(game).value
    for lasso in _all_lassos(game, 2 * game.n, 2 * game.n):
        assert lasso_value(game, lasso, AE) >= value


@settings(max_examples=100)
@given(arenas(max_states=5, two_player=True))
def test_two_player_matches_oracle_and_witnesses(game):
    res = ae_decide_2p(game)
    assert res.value == minimax_value(game, game.init, AE).value
    fixed = restrict(game, res.witness_p2)
    assert ae_value_1p(fixed).value == res.value
    responses = [lasso_value(game, outcome_lasso(game, res.witness_p1, s2), AE)
                 for s2 in memoryless_strategies(game, Player.P2)]
    assert max(responses) == res.value
    assert lasso_value(game, res.witness_play, AE) == res.value


def test_zero_cycle_identity_on_random_games():
    for seed in range(200):
        g = random_game(seed, 1 + seed % 6, 3, 0.0)
        for s in g.states:
            zc = best_zero_cycle(g, s)
            if zc is None:
                continue
            ws = [g.weight[(a, b)] for a, b in zip(zc.cycle, zc.cycle[1:] + zc.cycle[:1])]
            assert sum(ws) == 0
            assert prefix_payoff(ws, "ae") == zc.ae
            assert zc.level_sum == zc.length * zc.ae
