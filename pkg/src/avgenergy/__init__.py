"""Exact solvers for average-energy, mean-payoff and energy games on weighted graphs."""
from ._core import BACKEND
from .ae import ZeroCycleResult, ae_decide_2p, ae_value_1p, best_zero_cycle
from .classic import (
    MpConfig,
    attractor,
    egl_min_credit,
    eglu_solve,
    has_reachable_negative_cycle,
    min_energy_reach,
    mp_decide,
    mp_values,
)
from .composite import FoundWin, Unknown, ael_decide_1p, ael_incremental_2p, aelu_decide, aelu_value
from .game import (
    BudgetExceeded,
    GameGraph,
    InvalidInput,
    Lasso,
    MemorylessStrategy,
    MooreStrategy,
    Player,
    SolveResult,
    outcome,
    restrict,
    validate,
)
from .payoff import AE, MP, EnergyConstraint, Payoff, PayoffKind, Variant, lasso_value, prefix_payoff
from .rational import INF, NEG_INF

__all__ = [
    "AE", "BACKEND", "BudgetExceeded", "EnergyConstraint", "FoundWin", "GameGraph", "INF",
    "InvalidInput", "Lasso", "MP", "MemorylessStrategy", "MooreStrategy", "MpConfig", "NEG_INF",
    "Payoff", "PayoffKind", "Player", "SolveResult", "Unknown", "Variant", "ZeroCycleResult",
    "ae_decide_2p", "ae_value_1p", "ael_decide_1p", "ael_incremental_2p", "aelu_decide",
    "aelu_value", "attractor", "best_zero_cycle", "egl_min_credit", "eglu_solve",
    "has_reachable_negative_cycle", "lasso_value", "min_energy_reach", "mp_decide", "mp_values",
    "outcome", "prefix_payoff", "restrict", "validate",
]
