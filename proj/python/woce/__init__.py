"""Weighted cluster ensembles with constraint projection."""

from ._woce import (
    InvalidInput,
    NumericalError,
    accuracy,
    consensus,
    constraint_projection,
    eac_matrix,
    generate,
    halfring,
    load_csv,
    map_independent,
    nmi,
    sample_constraints,
    score_partitions,
    set_log_level,
    uniformity,
    weac_matrix,
    weights,
    woce,
    zscore,
)

__all__ = [
    "InvalidInput",
    "NumericalError",
    "accuracy",
    "consensus",
    "constraint_projection",
    "eac_matrix",
    "generate",
    "halfring",
    "load_csv",
    "map_independent",
    "nmi",
    "sample_constraints",
    "score_partitions",
    "set_log_level",
    "uniformity",
    "weac_matrix",
    "weights",
    "woce",
    "zscore",
]
