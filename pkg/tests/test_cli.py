import io
from pathlib import Path

import pytest
from hypothesis import given, settings

from avgenergy.cli import run_command
from avgenergy.families import fig2a, fig4, random_game
from avgenergy.game import InvalidInput, Lasso, MemorylessStrategy, Player
from avgenergy.reductions import lift_strategy, expand_lu
from avgenergy.textio import (
    canonical,
    emit_trace_csv,
    parse_game,
    parse_lasso,
    parse_strategy,
    serialize_game,
    serialize_lasso,
    serialize_strategy,
)
from gamegen import arenas

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = run_command(list(argv), out)
    return code, out.getvalue()


def test_serialize_fig4_matches_golden():
    assert serialize_game(fig4()) == "".join(
        line + "\n" for line in (GOLDEN / "fig4.game").read_text().splitlines() if not line.startswith("#"))


def test_parse_reports_missing_init():
    with pytest.raises(InvalidInput, match="missing init"):
        parse_game("state a 1\nedge a a 0\n")


def test_parse_reports_line_number():
    with pytest.raises(InvalidInput, match="line 2"):
        parse_game("state a 1\nedge a a x\ninit a\n")


def test_parse_forwards_validation():
    with pytest.raises(InvalidInput, match="blocking"):
        parse_game("state a 1\nstate b 1\nedge a b 0\ninit a\n")


def test_parse_rejects_bad_ident():
    with pytest.raises(InvalidInput, match="identifier"):
        parse_game("state a' 1\ninit a'\n")


def test_round_trip_random():
    g = random_game(1, 5, 3, 0.5)
    assert canonical(parse_game(serialize_game(g))) == canonical(g)


@settings(max_examples=100)
@given(arenas(max_states=5))
def test_round_trip_property(game):
    assert canonical(parse_game(serialize_game(game))) == canonical(game)


def test_expanded_arena_round_trip():
    arena = expand_lu(fig4(), 2)
    assert canonical(parse_game(serialize_game(arena))) == canonical(arena)


def test_lasso_text():
    lasso = parse_lasso("s0 ( s1 s2 s3 s4 )", fig2a())
    assert lasso == Lasso(("s0",), ("s1", "s2", "s3", "s4"))
    assert serialize_lasso(lasso) == "s0 ( s1 s2 s3 s4 )"
    with pytest.raises(InvalidInput):
        parse_lasso("a c", fig4())
    with pytest.raises(InvalidInput):
        parse_lasso("( a b c )", fig4())


def test_strategy_round_trip_moore():
    strat = parse_strategy((GOLDEN / "fig4_pi3.strategy").read_text(), fig4())
    again = parse_strategy(serialize_strategy(strat, fig4()), fig4())
    assert again == strat


def test_strategy_round_trip_memoryless():
    strat = MemorylessStrategy(Player.P1, {"a": "c", "b": "a", "c": "a"})
    assert parse_strategy(serialize_strategy(strat, fig4()), fig4()) == strat


def test_lifted_strategy_with_breach_serializes():
    arena = expand_lu(fig4(), 1)
    strat = MemorylessStrategy(Player.P1, {s: succ[-1][0] for s, succ in arena.succ.items()})
    machine = lift_strategy(strat, fig4(), 1, allow_breach=True)
    assert parse_strategy(serialize_strategy(machine, fig4()), fig4()).output == machine.output


@pytest.mark.parametrize("game, strategy, steps, golden", [
    (fig4(), "fig4_pi3.strategy", 5, "fig4_pi3.csv"),
    (fig2a(), "fig2a.strategy", 4, "fig2a.csv"),
])
def test_trace_golden(game, strategy, steps, golden):
    strat = parse_strategy((GOLDEN / strategy).read_text(), game)
    assert emit_trace_csv(game, strat, None, steps) == (GOLDEN / golden).read_text()


def test_trace_zero_steps():
    assert emit_trace_csv(fig4(), None, None, 0) == "step,state,energy\n0,a,0\n"


def test_cli_solve_aelu():
    code, out = run("solve", "--game", "fig4", "--objective", "aelu", "--upper", "3", "--threshold", "1/1")
    assert code == 0 and "value: 1/1" in out and "winner: P1" in out


def test_cli_eval():
    code, out = run("eval", "--game", "fig4", "--lasso", "( a c a a b )", "--payoff", "ae")
    assert code == 0 and out == "value: 1/1\n"
    _, out = run("eval", "--game", "fig4", "--lasso", "( a a a b a a b )", "--payoff", "ae", "--upper", "3")
    assert "feasible: false" in out
    _, out = run("eval", "--game", "fig4", "--lasso", "( a a a b a a b )", "--payoff", "ae", "--lower")
    assert out == "value: 11/7\nfeasible: true\n"


def test_cli_unknown(tmp_path):
    game = tmp_path / "up.game"
    game.write_text("state s 1\nedge s s 1\ninit s\n")
    code, out = run("solve", "--game", str(game), "--objective", "ael", "--threshold", "5", "--cap", "10")
    assert code == 2 and "winner: unknown" in out


def test_cli_ael_one_player_reports_bound(tmp_path):
    code, out = run("solve", "--game", "fig4", "--objective", "ael", "--threshold", "1",
                    "--strategy-out", str(tmp_path / "s.txt"))
    assert code == 0 and "upper: 3601" in out
    strat = parse_strategy((tmp_path / "s.txt").read_text(), fig4())
    assert emit_trace_csv(fig4(), strat, None, 5) == (GOLDEN / "fig4_pi3.csv").read_text()


def test_cli_ael_two_player_needs_cap(tmp_path):
    game = tmp_path / "g.game"
    run("gen", "--family", "random", "--seed", "3", "--states", "4", "--out", str(game))
    assert run("solve", "--game", str(game), "--objective", "ael")[0] == 3


@pytest.mark.parametrize("argv", [
    ["solve", "--game", "fig4", "--objective", "bogus"],
    ["solve", "--game", "fig4", "--objective", "aelu"],
    ["solve", "--game", "missing.game", "--objective", "ae"],
    ["eval", "--game", "fig4", "--lasso", "( a b c )", "--payoff", "ae"],
    ["solve", "--game", "fig4", "--objective", "mp", "--threshold", "x/y"],
    ["frobnicate"],
])
def test_cli_input_errors(argv):
    assert run(*argv)[0] == 3


@pytest.mark.parametrize("objective, extra", [
    ("mp", []), ("ae", []), ("egl", []), ("eglu", ["--upper", "3"]), ("aelu", ["--upper", "3"]),
    ("mp", ["--role", "max"]),
])
def test_cli_exit_code_matches_verdict(objective, extra):
    for t in ("-1", "0", "1", "5/2"):
        code, out = run("solve", "--game", "fig4", "--objective", objective, "--threshold", t, *extra)
        assert (code == 0) == ("winner: P1" in out)
        assert code in (0, 1)


def test_cli_egl_and_eglu_values():
    assert run("solve", "--game", "fig4", "--objective", "egl")[1] == "value: 0/1\nwinner: P1\n"
    code, out = run("solve", "--game", "fig4", "--objective", "eglu", "--upper", "0")
    assert code == 1 and out == "value: inf\nwinner: P2\n"


def test_cli_reduce_and_gen(tmp_path):
    out_file = tmp_path / "e.game"
    code, out = run("reduce", "--game", "fig4", "--kind", "expand-lu", "--upper", "3", "--out", str(out_file))
    assert code == 0 and "states: 13" in out
    assert parse_game(out_file.read_text()).n == 13
    run("reduce", "--game", "fig4", "--kind", "ae2mp", "--upper", "3", "--threshold", "1", "--out", str(out_file))
    assert parse_game(out_file.read_text()).weight[("sink", "sink")] == 2
    run("reduce", "--game", "fig4", "--kind", "mp2ae", "--out", str(out_file))
    assert parse_game(out_file.read_text()).n == 8
    run("gen", "--family", "countdown", "--c0", "3", "--out", str(out_file))
    assert parse_game(out_file.read_text()).n == 5
    run("gen", "--family", "memP2", "--upper", "2", "--out", str(out_file))
    assert parse_game(out_file.read_text()).n == 8


def test_cli_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.game", tmp_path / "b.game"
    for path in (a, b):
        run("gen", "--family", "random", "--seed", "7", "--states", "5", "--maxw", "3", "--out", str(path))
    assert a.read_text() == b.read_text()


def test_cli_trace(tmp_path):
    csv_file = tmp_path / "t.csv"
    code, _ = run("trace", "--game", "fig4", "--strategy", str(GOLDEN / "fig4_pi3.strategy"),
                  "--steps", "5", "--csv", str(csv_file))
    assert code == 0 and csv_file.read_text() == (GOLDEN / "fig4_pi3.csv").read_text()


def test_cli_game_file(tmp_path):
    code, out = run("solve", "--game", str(GOLDEN / "fig4.game"), "--objective", "aelu", "--upper", "3",
                    "--threshold", "1")
    assert code == 0 and "value: 1/1" in out
