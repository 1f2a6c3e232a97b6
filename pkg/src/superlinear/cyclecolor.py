"""Coloring procedures specific to cycles.

Colorings produced here are local: a list aligned with ``C.vertices``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .coloring import ListAssignment
from .errors import ContractError, InfeasibleError
from .graph import Graph
from .oracle import solve_relaxed


@dataclass(frozen=True)
class CycleInstance:
    """Vertices ``v_0 ... v_{k-1}`` in cyclic order."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ContractError("a cycle needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise ContractError("cycle vertices repeat")

    @classmethod
    def in_graph(cls, g: Graph, vertices: Sequence[int]) -> "CycleInstance":
        c = cls(tuple(vertices))
        k = len(c)
        for i in range(k):
            a, b = c.vertices[i], c.vertices[(i + 1) % k]
            if not g.has_edge(a, b):
                raise ContractError(f"{a} and {b} are consecutive but not adjacent")
        return c

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise ContractError(f"vertex {v} is not on the cycle") from None

    def graph(self) -> Graph:
        """The cycle itself on local ids ``0..k-1``."""
        k = len(self)
        return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def square_proper(cols: Sequence[int]) -> bool:
    """Whether ``cols`` properly colors the square of the cycle."""
    k = len(cols)
    for i in range(k):
        if cols[i] == cols[(i + 1) % k] or cols[i] == cols[(i + 2) % k]:
            return False
    return True


def _square_dp(lists: Sequence[Sequence[int]]) -> Optional[list[int]]:
    k = len(lists)
    if k <= 4:
        # the square is complete
        for cols in itertools.product(*lists):
            if len(set(cols)) == k:
                return list(cols)
        return None
    for a in lists[0]:
        for b in lists[1]:
            if a == b:
                continue
            # layers[j] maps (f(v_{j}), f(v_{j+1})) to f(v_{j-1})
            layers: list[dict[tuple[int, int], int]] = [{(a, b): -1}]
            for i in range(2, k):
                nxt: dict[tuple[int, int], int] = {}
                for p, q in layers[-1]:
                    for c in lists[i]:
                        if c != p and c != q and (q, c) not in nxt:
                            nxt[(q, c)] = p
                if not nxt:
                    break
                layers.append(nxt)
            else:
                for p, q in layers[-1]:
                    if q != a and q != b and p != a:
                        return _trace_back(layers, (p, q))
    return None


def _trace_back(layers, last) -> list[int]:
    cols = [last[1], last[0]]
    key = last
    for layer in reversed(layers[1:]):
        before = layer[key]
        cols.append(before)
        key = (before, key[0])
    cols.reverse()
    return cols


def color_cycle_component(C: CycleInstance, L: ListAssignment) -> list[int]:
    """Superlinear coloring of a cycle that is a whole component.

    On a cycle this is the same as a proper coloring of its square.  A dynamic
    program over the last two colors runs once per choice of the first two.
    """
    vs = C.vertices
    if len(vs) == 5 and L.all_identical(vs):
        raise InfeasibleError("C5 with identical lists has no superlinear coloring")
    cols = _square_dp([L[v] for v in vs])
    if cols is None:
        raise InfeasibleError(f"cycle of length {len(vs)} has no superlinear coloring")
    assert square_proper(cols)
    return cols


def _rotation_for_linear(lists: Sequence[Sequence[int]]) -> Optional[int]:
    """Index to play the role of the last vertex, or ``None`` if none qualifies."""
    k = len(lists)
    for i in range(k):
        if len(lists[i]) >= 3:
            return i
    for i in range(k):
        if set(lists[i]) != set(lists[(i + 1) % k]):
            # v_k = i and v_1 = i + 1 carry different lists
            return i
    return None


def color_cycle_linear(C: CycleInstance, Lp: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """Linear coloring of a bare cycle from lists of size at least 2.

    ``Lp`` is aligned with ``C.vertices``.  Succeeds whenever some list has
    three colors or two lists differ; otherwise returns ``None``.
    """
    k = len(C)
    if len(Lp) != k:
        raise ContractError("one list per cycle vertex is required")
    if any(len(set(lst)) < 2 for lst in Lp):
        raise ContractError("every list must hold at least 2 colors")
    last = _rotation_for_linear(Lp)
    if last is None:
        return None
    # position j of the rotated cycle is v_{j+1}; v_k sits at index ``last``
    order = [(last + 1 + j) % k for j in range(k)]
    lists = [sorted(set(Lp[i])) for i in order]
    f = [0] * k
    first = [c for c in lists[0] if c not in lists[-1]]
    f[0] = first[0] if first else lists[0][0]
    for j in range(1, k - 1):
        f[j] = next(c for c in lists[j] if c != f[j - 1])
    f[k - 1] = next(c for c in lists[k - 1] if c != f[0] and c != f[k - 2])
    if len(set(f)) == 2:
        # a 2-colored even cycle: v_{k-1} and v_1 agree, so move v_k off both colors
        f[k - 1] = next(c for c in lists[k - 1] if c != f[0] and c != f[k - 3])
    out = [0] * k
    for j, i in enumerate(order):
        out[i] = f[j]
    return out


def color_c5_superlinear(C: CycleInstance, L: ListAssignment) -> Optional[list[int]]:
    """Superlinear coloring of a 5-cycle component by exhaustive search."""
    if len(C) != 5:
        raise ContractError("color_c5_superlinear needs a 5-cycle")
    for cols in itertools.product(*(L[v] for v in C.vertices)):
        if square_proper(cols):
            return list(cols)
    return None


def color_c5_relaxed(C: CycleInstance, L: ListAssignment, anchor: int) -> list[int]:
    """Coloring of a 5-cycle component in which only ``anchor``'s neighbours may agree.

    The two neighbours of the anchor share a color when their lists meet, and
    the other three vertices then take three further distinct colors.
    """
    if len(C) != 5:
        raise ContractError("color_c5_relaxed needs a 5-cycle")
    a = C.index(anchor)
    vs = C.vertices
    left, right = vs[(a - 1) % 5], vs[(a + 1) % 5]
    common = [c for c in L[left] if c in L[right]]
    if common:
        shared = common[0]
        cols = {left: shared, right: shared}
        used = {shared}
        for v in (anchor, vs[(a + 2) % 5], vs[(a + 3) % 5]):
            cols[v] = next(c for c in L[v] if c not in used)
            used.add(cols[v])
        return [cols[v] for v in vs]
    local = ListAssignment([L[v] for v in vs], L.universe)
    f = solve_relaxed(C.graph(), local, a)
    assert f is not None, "a 5-cycle always has a relaxed coloring"
    return list(f)

