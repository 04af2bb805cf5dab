"""Exact verification of nilpotent and solvable quotient bounds for permutation groups."""

from .bounds import BoundExpr, BoundKind, compare_index_to_bound, exact_bound_value
from .group import PermGroup, nilpotent_residual, solvable_residual
from .perm import Permutation, parse_cycles, print_cycles

__all__ = [
    "BoundExpr", "BoundKind", "PermGroup", "Permutation", "compare_index_to_bound",
    "exact_bound_value", "nilpotent_residual", "parse_cycles", "print_cycles", "solvable_residual",
]
