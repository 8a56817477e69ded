from .ackermann import ackermann, inverse_ackermann
from .forest import (
    ClusterForest,
    EdgeState,
    GrowthStats,
    Strategy,
    ValidationResult,
    find,
    grow_round,
    init_forest,
    union,
    validate,
)
from .naive import validate_equivalence_oracle, validate_naive

__all__ = [
    "ClusterForest",
    "EdgeState",
    "GrowthStats",
    "Strategy",
    "ValidationResult",
    "ackermann",
    "find",
    "grow_round",
    "init_forest",
    "inverse_ackermann",
    "union",
    "validate",
    "validate_equivalence_oracle",
    "validate_naive",
]
