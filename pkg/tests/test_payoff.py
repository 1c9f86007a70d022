from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avgenergy.families import FIG2A_PLAY, FIG2B_PLAY, FIG4_AEL_PLAYS, FIG4_PLAYS, fig2a, fig2b, fig4
from avgenergy.game import GameGraph, InvalidInput, Lasso
from avgenergy.payoff import (
    AE,
    MP,
    EnergyConstraint,
    Payoff,
    PayoffKind,
    check_energy_bounds,
    energy_level,
    lasso_value,
    lasso_value_from_weights,
    levels,
    prefix_payoff,
)
from avgenergy.rational import INF, NEG_INF

TP_SUP = PayoffKind.of("tp", "sup")
TP_INF = PayoffKind.of("tp", "inf")


def loop(w):
    return GameGraph.build({"s": 1}, [("s", "s", w)], "s")


@pytest.mark.parametrize("ws, expected", [([1, 2, 2], 5), ([], 0), ([1, -2], -1)])
def test_energy_level(ws, expected):
    assert energy_level(ws) == expected


@pytest.mark.parametrize("ws, expected", [
    ([1, -2], Fraction(0)),
    ([1, -2, 1, -2], Fraction(-1, 2)),
    ([-1, 1], Fraction(-1, 2)),
    ([1, -1], Fraction(1, 2)),
])
def test_prefix_average_energy(ws, expected):
    assert prefix_payoff(ws, Payoff.AE) == expected


def test_prefix_other_payoffs():
    assert prefix_payoff([1, 2, 3], Payoff.MP) == 2
    assert prefix_payoff([1, 2, 3], Payoff.TP) == 6
    assert prefix_payoff([], Payoff.EL) == 0


@pytest.mark.parametrize("kind", [Payoff.MP, Payoff.AE])
def test_empty_prefix_rejected(kind):
    with pytest.raises(InvalidInput):
        prefix_payoff([], kind)


def test_fig2a_lasso():
    g = fig2a()
    assert lasso_value(g, FIG2A_PLAY, AE) == 3
    assert lasso_value(g, FIG2A_PLAY, MP) == 0
    assert lasso_value(g, FIG2A_PLAY, TP_SUP) == 5
    assert lasso_value(g, FIG2A_PLAY, TP_INF) == 1


def test_fig2b_lasso():
    assert lasso_value(fig2b(), FIG2B_PLAY, AE) == Fraction(11, 3)


def test_positive_loop_diverges():
    g = loop(1)
    lasso = Lasso((), ("s",))
    assert lasso_value(g, lasso, AE) == INF
    assert lasso_value(g, lasso, MP) == 1
    assert lasso_value(g, lasso, TP_INF) == INF


def test_negative_loop():
    assert lasso_value(loop(-2), Lasso((), ("s",)), AE) == NEG_INF


def test_invalid_lasso_rejected():
    with pytest.raises(InvalidInput):
        lasso_value(fig4(), Lasso((), ("a", "b", "c")), AE)


def test_fig4_bounds():
    g = fig4()
    assert check_energy_bounds(g, FIG4_PLAYS["pi3"], EnergyConstraint(upper=3))
    pi4 = FIG4_AEL_PLAYS["pi4"]
    assert not check_energy_bounds(g, pi4, EnergyConstraint(upper=3))
    assert check_energy_bounds(g, pi4, EnergyConstraint())


def test_negative_loop_breaks_lower_bound():
    assert not check_energy_bounds(loop(-1), Lasso((), ("s",)), EnergyConstraint())


def test_upper_requires_lower():
    with pytest.raises(InvalidInput):
        EnergyConstraint(lower=False, upper=3)


def test_levels():
    assert levels([1, 2, -2], start=1) == [2, 4, 2]


small = st.integers(-3, 3)


def zero_cycle(draw_list):
    """Close a weight list into a zero cycle by appending the balancing edge."""
    return draw_list + [-sum(draw_list)]


@settings(max_examples=300)
@given(st.lists(small, max_size=6), st.lists(small, min_size=0, max_size=5), st.lists(small, max_size=4))
def test_prefix_shifts_by_its_sum(pi, cyc, extra_pre):
    cyc = zero_cycle(cyc)
    play_pre = extra_pre
    whole = lasso_value_from_weights(pi + play_pre, cyc, AE)
    assert whole == energy_level(pi) + lasso_value_from_weights(play_pre, cyc, AE)


@settings(max_examples=300)
@given(st.lists(small, max_size=6))
def test_zero_cycle_repetition(cyc):
    cyc = zero_cycle(cyc)
    assert lasso_value_from_weights([], cyc, AE) == prefix_payoff(cyc, AE)
    assert prefix_payoff(cyc * 3, AE) == prefix_payoff(cyc, AE)


@settings(max_examples=300)
@given(st.lists(st.lists(small, max_size=4), min_size=1, max_size=4))
def test_weighted_average_of_zero_cycles(parts):
    cycles = [zero_cycle(p) for p in parts]
    joined = [w for c in cycles for w in c]
    total = sum(len(c) for c in cycles)
    expected = sum(len(c) * prefix_payoff(c, AE) for c in cycles) / Fraction(total)
    assert prefix_payoff(joined, AE) == expected
    assert min(prefix_payoff(c, AE) for c in cycles) <= prefix_payoff(joined, AE)


@settings(max_examples=300)
@given(st.lists(small, max_size=5), st.lists(small, max_size=5))
def test_sandwich_and_variants(pre, cyc):
    cyc = zero_cycle(cyc)
    ae = lasso_value_from_weights(pre, cyc, AE)
    assert lasso_value_from_weights(pre, cyc, TP_INF) <= ae <= lasso_value_from_weights(pre, cyc, TP_SUP)
    for p in ("mp", "ae"):
        assert (lasso_value_from_weights(pre, cyc, PayoffKind.of(p, "sup"))
                == lasso_value_from_weights(pre, cyc, PayoffKind.of(p, "inf")))


def test_non_closure_regression():
    assert prefix_payoff([-1, 1], Payoff.AE) != prefix_payoff([1, -1], Payoff.AE)
    assert prefix_payoff([1, -2, 1, -2], Payoff.AE) < prefix_payoff([1, -2], Payoff.AE)
