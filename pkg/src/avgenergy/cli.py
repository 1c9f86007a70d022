"""Command-line driver.

Exit codes: 0 when P1 wins, 1 when P2 wins, 2 when the answer is unknown,
3 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import families
from .ae import ae_decide_2p
from .classic import MpConfig, egl_min_credit, eglu_solve, mp_decide
from .composite import FoundWin, ael_decide_1p, ael_incremental_2p, aelu_decide
from .game import BudgetExceeded, GameGraph, InvalidInput, Player
from .payoff import EnergyConstraint, PayoffKind, check_energy_bounds, lasso_value
from .rational import INF, format_value, parse_rational
from .reductions import CountdownGame, ae_to_mp_reweight, countdown_to_ael, expand_lu, mp_to_ae
from .textio import emit_trace_csv, parse_game, parse_lasso, parse_strategy, serialize_game, serialize_strategy

EXIT_P1, EXIT_P2, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3
FIXTURES = ("fig2a", "fig2b", "fig3", "fig4")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def load_game(source: str) -> GameGraph:
    """A game file path, or the name of a built-in figure fixture."""
    path = Path(source)
    if path.exists():
        return parse_game(path.read_text(encoding="utf-8"))
    if source in FIXTURES:
        return families.generate(source)
    raise InvalidInput(f"no such game file {source!r}")


def _threshold(text: Optional[str]) -> Fraction:
    return Fraction(0) if text is None else parse_rational(text)


def _need(args, name: str, objective: str):
    if getattr(args, name) is None:
        raise InvalidInput(f"--{name} is required for {objective}")
    return getattr(args, name)


def _report(value, winner: Optional[Player], out, extra=()) -> int:
    print(f"value: {format_value(value)}", file=out)
    for line in extra:
        print(line, file=out)
    print(f"winner: {winner if winner is not None else 'unknown'}", file=out)
    return {Player.P1: EXIT_P1, Player.P2: EXIT_P2, None: EXIT_UNKNOWN}[winner]


def _save_strategy(args, strat, game):
    if args.strategy_out and strat is not None:
        Path(args.strategy_out).write_text(serialize_strategy(strat, game), encoding="utf-8")


def cmd_solve(args, out) -> int:
    game = load_game(args.game)
    t = _threshold(args.threshold)
    obj = args.objective
    if obj == "mp":
        role = "maximizer" if args.role == "max" else "minimizer"
        res = mp_decide(game, game.init, t, MpConfig(p1_role=role))
    elif obj == "ae":
        res = ae_decide_2p(game, game.init, t)
    elif obj == "egl":
        credit = egl_min_credit(game)[game.init]
        value = INF if credit == INF else Fraction(credit)
        return _report(value, Player.P1 if credit == 0 else Player.P2, out)
    elif obj == "eglu":
        res = eglu_solve(game, _need(args, "upper", obj))
    elif obj == "aelu":
        res = aelu_decide(game, _need(args, "upper", obj), t)
    else:
        return _solve_ael(args, game, t, out)
    _save_strategy(args, res.witness_p1, game)
    return _report(res.value, res.winner, out)


def _solve_ael(args, game: GameGraph, t: Fraction, out) -> int:
    if args.cap is None:
        if not game.is_one_player:
            raise InvalidInput("two-player ael needs --cap")
        res = ael_decide_1p(game, game.init, t)
        _save_strategy(args, res.witness_p1, game)
        extra = [f"upper: {res.info['upper']}"] if "upper" in res.info else []
        return _report(res.value, res.winner, out, extra)
    found = ael_incremental_2p(game, game.init, t, args.cap, args.schedule)
    if isinstance(found, FoundWin):
        _save_strategy(args, found.strategy, game)
        return _report(found.value, Player.P1, out, [f"upper: {found.upper}"])
    print(f"note: {found.note}", file=out)
    print("winner: unknown", file=out)
    return EXIT_UNKNOWN


def cmd_eval(args, out) -> int:
    game = load_game(args.game)
    lasso = parse_lasso(args.lasso, game)
    value = lasso_value(game, lasso, PayoffKind.of(args.payoff, args.variant))
    print(f"value: {format_value(value)}", file=out)
    if args.lower or args.upper is not None:
        ok = check_energy_bounds(game, lasso, EnergyConstraint(True, args.upper))
        print(f"feasible: {'true' if ok else 'false'}", file=out)
    return 0


def cmd_reduce(args, out) -> int:
    game = load_game(args.game)
    if args.kind == "mp2ae":
        image, _ = mp_to_ae(game)
    elif args.kind == "expand-lu":
        image = expand_lu(game, _need(args, "upper", args.kind))
    else:
        expanded = expand_lu(game, args.upper) if args.upper is not None else game
        image = ae_to_mp_reweight(expanded, _threshold(args.threshold))
    Path(args.out).write_text(serialize_game(image), encoding="utf-8")
    print(f"states: {image.n}", file=out)
    print(f"edges: {len(image.edges)}", file=out)
    return 0


def cmd_gen(args, out) -> int:
    params = {"seed": args.seed, "n": args.states, "max_weight": args.maxw, "p2ratio": args.p2ratio}
    if args.upper is not None:
        params["upper"] = args.upper
    if args.family == "countdown" and args.c0 is not None:
        params["c0"] = args.c0
    made = families.generate(args.family, **params)
    if isinstance(made, CountdownGame):
        made, _ = countdown_to_ael(made)
    Path(args.out).write_text(serialize_game(made), encoding="utf-8")
    if args.family == "random":
        print(f"seed: {args.seed}", file=out)
    print(f"states: {made.n}", file=out)
    return 0


def cmd_trace(args, out) -> int:
    game = load_game(args.game)
    strats = {Player.P1: None, Player.P2: None}
    for path in filter(None, (args.strategy, args.strategy2)):
        strat = parse_strategy(Path(path).read_text(encoding="utf-8"), game)
        strats[strat.owner] = strat
    text = emit_trace_csv(game, strats[Player.P1], strats[Player.P2], args.steps)
    if args.csv == "-":
        out.write(text)
    else:
        Path(args.csv).write_text(text, encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="avgenergy", description="Average-energy, mean-payoff and energy games on weighted graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve a game for one objective")
    s.add_argument("--game", required=True)
    s.add_argument("--objective", required=True, choices=["mp", "ae", "egl", "eglu", "aelu", "ael"])
    s.add_argument("--threshold")
    s.add_argument("--upper", type=int)
    s.add_argument("--cap", type=int)
    s.add_argument("--schedule", choices=["linear", "doubling"], default="linear")
    s.add_argument("--role", choices=["min", "max"], default="min")
    s.add_argument("--strategy-out")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("eval", help="evaluate a payoff on a lasso")
    e.add_argument("--game", required=True)
    e.add_argument("--lasso", required=True)
    e.add_argument("--payoff", required=True, choices=["el", "mp", "tp", "ae"])
    e.add_argument("--variant", choices=["sup", "inf"], default="sup")
    e.add_argument("--lower", action="store_true")
    e.add_argument("--upper", type=int)
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("reduce", help="write the image of a reduction")
    r.add_argument("--game", required=True)
    r.add_argument("--kind", required=True, choices=["mp2ae", "expand-lu", "ae2mp"])
    r.add_argument("--upper", type=int)
    r.add_argument("--threshold")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_reduce)

    g = sub.add_parser("gen", help="generate a fixture or random game")
    g.add_argument("--family", required=True, choices=list(families.FAMILIES))
    g.add_argument("--upper", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--states", type=int, default=4)
    g.add_argument("--maxw", type=int, default=3)
    g.add_argument("--p2ratio", type=float, default=0.5)
    g.add_argument("--c0", type=int)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("trace", help="write the energy trace of a strategy profile as CSV")
    t.add_argument("--game", required=True)
    t.add_argument("--strategy", required=True)
    t.add_argument("--strategy2")
    t.add_argument("--steps", type=int, required=True)
    t.add_argument("--csv", required=True)
    t.set_defaults(func=cmd_trace)
    return p


def run_command(argv: Sequence[str], out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (InvalidInput, BudgetExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
