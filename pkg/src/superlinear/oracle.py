"""Exhaustive backtracking search for superlinear list colorings of small graphs.

Vertices are assigned in increasing id order and colors in list order; a
partial assignment is pruned as soon as it contains an improper edge, a vertex
with three equally colored neighbours, a degree-2 vertex whose neighbours
agree, or a closed bicolored cycle.  Every such violation involves the most
recently assigned vertex, so checking only around it is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import ListAssignment, find_violation
from .errors import BudgetExceeded, ContractError
from .graph import Graph


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 12
    max_nodes: int = 5_000_000

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_nodes <= 0:
            raise ContractError("search budget must be positive")


DEFAULT_BUDGET = SearchBudget()


class _Search:
    def __init__(self, g: Graph, L: ListAssignment, anchor: Optional[int], budget: SearchBudget):
        order = g.vertices()
        if len(order) > budget.max_vertices:
            raise BudgetExceeded(
                f"{len(order)} vertices exceed the oracle budget of {budget.max_vertices}"
            )
        if anchor is not None:
            if anchor not in order:
                raise ContractError(f"anchor {anchor} is not a vertex of the graph")
            if g.deg[anchor] != 2:
                raise ContractError(f"anchor {anchor} must have degree 2")
        self.order = order
        index = {v: i for i, v in enumerate(order)}
        self.nb = [tuple(index[w] for w in g.neighbors(v)) for v in order]
        self.lists = [L[v] for v in order]
        # local ids of degree-2 vertices whose neighbours must differ
        self.deg2 = [len(self.nb[i]) == 2 and order[i] != anchor for i in range(len(order))]
        self.col: list[Optional[int]] = [None] * len(order)
        self.nodes = 0
        self.max_nodes = budget.max_nodes

    def _ok(self, i: int, c: int) -> bool:
        col, nbs = self.col, self.nb
        for w in nbs[i]:
            if col[w] == c:
                return False
        for w in nbs[i]:
            same = 0
            for x in nbs[w]:
                if x == i or col[x] == c:
                    same += 1
            if same >= 3:
                return False
            if self.deg2[w]:
                other = nbs[w][0] if nbs[w][1] == i else nbs[w][1]
                if col[other] == c:
                    return False
        # closed bicolored cycle through i
        col[i] = c
        try:
            for w in nbs[i]:
                if col[w] is None:
                    continue
                prev, cur = i, w
                while True:
                    want = col[prev]
                    nxt = None
                    for x in nbs[cur]:
                        if x != prev and col[x] == want:
                            nxt = x
                            break
                    if nxt is None:
                        break
                    if nxt == i:
                        return False
                    prev, cur = cur, nxt
        finally:
            col[i] = None
        return True

    def run(self, count_all: bool) -> tuple[Optional[list[int]], int]:
        n = len(self.order)
        col = self.col
        found: Optional[list[int]] = None
        count = 0

        def rec(i: int) -> bool:
            nonlocal found, count
            if i == n:
                count += 1
                if found is None:
                    found = list(col)
                return not count_all
            for c in self.lists[i]:
                self.nodes += 1
                if self.nodes > self.max_nodes:
                    raise BudgetExceeded(f"oracle expanded more than {self.max_nodes} nodes")
                if self._ok(i, c):
                    col[i] = c
                    if rec(i + 1):
                        col[i] = None
                        return True
                    col[i] = None
            return False

        rec(0)
        return found, count


def _lift(g: Graph, order: list[int], local: list[int]) -> list[Optional[int]]:
    f: list[Optional[int]] = [None] * g.n
    for v, c in zip(order, local):
        f[v] = c
    return f


def solve_superlinear(
    g: Graph, L: ListAssignment, budget: SearchBudget = DEFAULT_BUDGET
) -> Optional[list[Optional[int]]]:
    """A superlinear L-coloring of the alive vertices of ``g``, or ``None`` if none exists."""
    s = _Search(g, L, None, budget)
    local, _ = s.run(count_all=False)
    if local is None:
        return None
    f = _lift(g, s.order, local)
    assert find_violation(g, L, f) is None
    return f


def solve_relaxed(
    g: Graph, L: ListAssignment, anchor: int, budget: SearchBudget = DEFAULT_BUDGET
) -> Optional[list[Optional[int]]]:
    """Like :func:`solve_superlinear` but ``anchor``'s neighbours may share a color."""
    s = _Search(g, L, anchor, budget)
    local, _ = s.run(count_all=False)
    if local is None:
        return None
    f = _lift(g, s.order, local)
    assert find_violation(g, L, f, anchor=anchor) is None
    return f


def enumerate_all(g: Graph, L: ListAssignment, budget: SearchBudget = DEFAULT_BUDGET) -> int:
    """Exact number of superlinear L-colorings of ``g``."""
    s = _Search(g, L, None, budget)
    _, count = s.run(count_all=True)
    return count
