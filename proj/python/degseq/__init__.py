"""Exact and asymptotic counting of graphs by degree sequence."""

from ._degseq import (
    CapacityError,
    DomainError,
    ParseError,
    SingularityError,
    UndefinedError,
    binom_model_prob,
    compare,
    conj_ratio,
    conjectured_count,
    count,
    edge_prob,
    edge_prob_formula,
    error_envelope,
    exact_vs_formula,
    fixpoint_chi,
    h_formula,
    is_graphical,
    koren_graphical,
    path_prob,
    pgr,
    pi,
    ratio,
    regular_count_formula,
    rgr,
    rho,
    sample,
    sigma_concentration,
    sparse_edge_prob,
    sparse_ratio,
    stats,
    switching_bound,
)

__all__ = [
    "CapacityError",
    "DomainError",
    "ParseError",
    "SingularityError",
    "UndefinedError",
    "binom_model_prob",
    "compare",
    "conj_ratio",
    "conjectured_count",
    "count",
    "edge_prob",
    "edge_prob_formula",
    "error_envelope",
    "exact_vs_formula",
    "fixpoint_chi",
    "h_formula",
    "is_graphical",
    "koren_graphical",
    "path_prob",
    "pgr",
    "pi",
    "ratio",
    "regular_count_formula",
    "rgr",
    "rho",
    "sample",
    "sigma_concentration",
    "sparse_edge_prob",
    "sparse_ratio",
    "stats",
    "switching_bound",
]

__version__ = "0.1.0"
