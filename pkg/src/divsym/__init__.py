"""Exact divided symmetrization over graphs, tree sign/count formulas,
path and cycle identities, and the coin-robbing process on a cycle."""

from divsym.errors import (
    CapExceeded,
    DivSymError,
    InputError,
    PreconditionError,
    VerificationError,
)
from divsym.poly import Polynomial, evaluate, permute_variables, prefix_sum_monomial
from divsym.graphs import Graph, components_after_removal, cycle_graph, path_graph, validate_tree
from divsym.engine import check_eq1, ds_constant, ds_via_complete, lemma1_vanishes

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DivSymError",
    "InputError",
    "PreconditionError",
    "VerificationError",
    "Polynomial",
    "evaluate",
    "permute_variables",
    "prefix_sum_monomial",
    "Graph",
    "components_after_removal",
    "cycle_graph",
    "path_graph",
    "validate_tree",
    "check_eq1",
    "ds_constant",
    "ds_via_complete",
    "lemma1_vanishes",
]
