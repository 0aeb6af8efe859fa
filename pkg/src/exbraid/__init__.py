"""Exact fusion-category and braid-group computations for exceptional Lie types
at roots of unity."""
from .category import CategorySpec, alcove, fpdim, is_weakly_integral, rank
from .classify import classify_weakly_integral, totient_bound
from .cyclo import CycloNumber
from .finiteness import analyze, decide, projective_order
from .rootdata import build, parse_weight

__all__ = [
    "CategorySpec",
    "CycloNumber",
    "alcove",
    "analyze",
    "build",
    "classify_weakly_integral",
    "decide",
    "fpdim",
    "is_weakly_integral",
    "parse_weight",
    "projective_order",
    "rank",
    "totient_bound",
]
