"""Exact payoffs of finite prefixes and of lasso plays."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import accumulate
from typing import Optional, Sequence

from .game import GameGraph, InvalidInput, Lasso, check_lasso
from .rational import INF, NEG_INF, ExtendedRational


class Payoff(str, Enum):
    EL = "el"
    MP = "mp"
    TP = "tp"
    AE = "ae"


class Variant(str, Enum):
    SUP = "sup"
    INF = "inf"


@dataclass(frozen=True)
class PayoffKind:
    payoff: Payoff
    variant: Variant = Variant.SUP

    @classmethod
    def of(cls, payoff, variant="sup") -> "PayoffKind":
        return cls(Payoff(payoff), Variant(variant))


AE = PayoffKind(Payoff.AE)
MP = PayoffKind(Payoff.MP)


@dataclass(frozen=True)
class EnergyConstraint:
    """Energy must stay >= 0 (and <= ``upper`` when set); initial credit is 0."""

    lower: bool = True
    upper: Optional[int] = None

    def __post_init__(self):
        if self.upper is not None:
            if not self.lower:
                raise InvalidInput("an upper bound requires the lower bound")
            if self.upper < 0:
                raise InvalidInput("upper bound must be nonnegative")


def energy_level(weights: Sequence[int]) -> int:
    return sum(weights)


def levels(weights: Sequence[int], start: int = 0) -> list[int]:
    """Running energy levels after each edge."""
    return list(accumulate(weights, initial=start))[1:]


def prefix_payoff(weights: Sequence[int], kind) -> Fraction:
    payoff = kind.payoff if isinstance(kind, PayoffKind) else Payoff(kind)
    if payoff in (Payoff.EL, Payoff.TP):
        return Fraction(sum(weights))
    if not weights:
        raise InvalidInput(f"{payoff.value} of an empty prefix is undefined")
    if payoff is Payoff.MP:
        return Fraction(sum(weights), len(weights))
    return Fraction(sum(levels(weights)), len(weights))


def lasso_value(game: GameGraph, lasso: Lasso, kind: PayoffKind) -> ExtendedRational:
    check_lasso(game, lasso)
    pre, cyc = lasso.weights(game)
    return lasso_value_from_weights(pre, cyc, kind)


def lasso_value_from_weights(pre: Sequence[int], cyc: Sequence[int], kind: PayoffKind) -> ExtendedRational:
    d = sum(cyc)
    if kind.payoff is Payoff.MP:
        return Fraction(d, len(cyc))
    if kind.payoff is Payoff.EL:
        # the limit of the level itself; only defined when the cycle is zero
        if d != 0:
            return INF if d > 0 else NEG_INF
        return Fraction(sum(pre))
    if d > 0:
        return INF
    if d < 0:
        return NEG_INF
    base = sum(pre)
    if kind.payoff is Payoff.AE:
        return base + prefix_payoff(cyc, Payoff.AE)
    recurring = [base + x for x in levels(cyc)]
    return Fraction(max(recurring) if kind.variant is Variant.SUP else min(recurring))


def check_energy_bounds(game: GameGraph, lasso: Lasso, c: EnergyConstraint) -> bool:
    check_lasso(game, lasso)
    pre, cyc = lasso.weights(game)
    return energy_bounds_ok(pre, cyc, c)


def energy_bounds_ok(pre: Sequence[int], cyc: Sequence[int], c: EnergyConstraint) -> bool:
    seen = [0] + levels(list(pre) + list(cyc))
    d = sum(cyc)
    if c.lower and (min(seen) < 0 or d < 0):
        return False
    if c.upper is not None and (max(seen) > c.upper or d > 0):
        return False
    return True
