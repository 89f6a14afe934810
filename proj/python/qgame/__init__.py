"""Python bindings for the qgame C++ core."""

from ._core import (
    BudgetError,
    ConfigError,
    card_deck,
    catalog_description,
    catalog_names,
    classical_bound,
    find_pure_nash,
    is_density_matrix,
    kron,
    named_gate,
    operators,
    outcome_distribution,
    payoff,
    run_config,
    su2,
    symmetric_max,
    verify_claims,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "card_deck",
    "catalog_description",
    "catalog_names",
    "classical_bound",
    "find_pure_nash",
    "is_density_matrix",
    "kron",
    "named_gate",
    "operators",
    "outcome_distribution",
    "payoff",
    "run_config",
    "su2",
    "symmetric_max",
    "verify_claims",
]
