"""Superlinear 4-list-coloring of subcubic graphs in linear time.

A coloring is superlinear when it is proper, no vertex sees one color on all
three neighbours, no cycle uses only two colors, and the two neighbours of
every degree-2 vertex differ.
"""

from .coloring import (
    DEFAULT_UNIVERSE,
    ListAssignment,
    Violation,
    find_violation,
    is_linear,
    is_relaxed_superlinear,
    is_superlinear,
)
from .cyclecolor import CycleInstance, color_cycle_component, color_cycle_linear
from .driver import Certificate, ColorResult, RunReport, color_graph
from .errors import (
    BudgetExceeded,
    ContractError,
    ExtensionError,
    InfeasibleError,
    InvalidVertexError,
)
from .graph import Graph
from .oracle import SearchBudget, enumerate_all, solve_relaxed, solve_superlinear

__all__ = [
    "BudgetExceeded",
    "Certificate",
    "ColorResult",
    "ContractError",
    "CycleInstance",
    "DEFAULT_UNIVERSE",
    "ExtensionError",
    "Graph",
    "InfeasibleError",
    "InvalidVertexError",
    "ListAssignment",
    "RunReport",
    "SearchBudget",
    "Violation",
    "color_cycle_component",
    "color_cycle_linear",
    "color_graph",
    "enumerate_all",
    "find_violation",
    "is_linear",
    "is_relaxed_superlinear",
    "is_superlinear",
    "solve_relaxed",
    "solve_superlinear",
]
