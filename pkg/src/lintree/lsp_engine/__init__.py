"""Superposition of star and path lists for linear trees."""

from .corollaries import (
    AugmentationReport,
    TheoremViolation,
    augmentation_check,
    augmentations,
    degree_list,
    lists_plus,
    lists_plus_one,
    max_multiplicity,
    ones_bound,
    subdivide_list,
)
from .diminimal import DiminimalResult, diminimal_list, optimal_list
from .naive import naive_enumerate, naive_star_lists
from .search import DEFAULT_ENUM_CAP, TableSearch, decide_ordered, decide_unordered, enumerate_ordered
from .table import (
    Cell,
    LspTable,
    OrderedMultList,
    format_table,
    parse_ordered,
    parse_table,
    row_kinds,
    validate_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
