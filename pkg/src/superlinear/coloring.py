"""Color lists, colorings, and the independent verifier.

A coloring is a plain list indexed by vertex holding a color id or ``None``.
Every check here runs in time linear in the number of alive vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ContractError
from .graph import Graph

Coloring = list  # list[Optional[int]]

DEFAULT_UNIVERSE = 8


class ListAssignment:
    """Per-vertex lists of exactly four distinct colors, stored sorted."""

    __slots__ = ("lists", "universe")

    def __init__(self, lists: Iterable[Iterable[int]], universe: int = DEFAULT_UNIVERSE):
        out = []
        for v, lst in enumerate(lists):
            t = tuple(sorted(lst))
            if len(t) != 4 or len(set(t)) != 4:
                raise ContractError(f"list of vertex {v} must hold 4 distinct colors: {t}")
            if t[0] < 0 or t[-1] >= universe:
                raise ContractError(f"list of vertex {v} leaves universe [0, {universe})")
            out.append(t)
        self.lists = out
        self.universe = universe

    @classmethod
    def identical(cls, n: int, colors=(1, 2, 3, 4), universe: int = DEFAULT_UNIVERSE):
        return cls([colors] * n, universe)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ListAssignment)
            and self.lists == other.lists
            and self.universe == other.universe
        )

    def all_identical(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.lists[v] == self.lists[vs[0]] for v in vs)

    def __repr__(self) -> str:
        return f"ListAssignment({self.lists!r}, universe={self.universe})"


def restricted(base: Sequence[int], remove: Iterable[Optional[int]]) -> tuple[int, ...]:
    """``base`` minus the given colors, keeping order; ``None`` entries are ignored."""
    drop = {c for c in remove if c is not None}
    return tuple(c for c in base if c not in drop)


@dataclass(frozen=True)
class Violation:
    """First failed condition found by :func:`find_violation`."""

    kind: str  # "uncolored" | "not-in-list" | "improper" | "three-same" | "deg2-clash" | "bicolored-cycle"
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}: {' '.join(map(str, self.witness))}"


def _require_total(g: Graph, f: Sequence[Optional[int]]) -> None:
    for v in g.vertices():
        if f[v] is None:
            raise ContractError(f"vertex {v} is uncolored")


def is_proper(g: Graph, L: ListAssignment, f: Sequence[Optional[int]]) -> bool:
    _require_total(g, f)
    for v in g.vertices():
        if f[v] not in L[v]:
            return False
    return all(f[u] != f[v] for u, v in g.edges())


def _three_same(g: Graph, f, vs) -> Optional[tuple[int, ...]]:
    for v in vs:
        nb = g.neighbors(v)
        if len(nb) == 3 and f[nb[0]] == f[nb[1]] == f[nb[2]]:
            return (v, *nb)
    return None


def _walk(g: Graph, f, prev: int, cur: int, stop: int, limit: int | None):
    """Follow the bicolored walk leaving ``cur`` away from ``prev``.

    Returns ``(status, visited)`` where status is ``"end"``, ``"closed"`` (the
    walk reached ``stop``) or ``"limit"``.
    """
    alive, adj = g.alive, g.adj
    visited = []
    steps = 0
    while True:
        want = f[prev]
        nxt = None
        for w in adj[cur]:
            if w != prev and alive[w] and f[w] == want:
                nxt = w
                break
        if nxt is None:
            return "end", visited
        if nxt == stop:
            return "closed", visited
        steps += 1
        if limit is not None and steps > limit:
            return "limit", visited
        visited.append(nxt)
        prev, cur = cur, nxt


def bicolored_path_through(
    g: Graph, f: Sequence[Optional[int]], u: int, v: int, limit: int | None = None
) -> tuple[list[int], bool]:
    """Maximal walk in colors ``{f(u), f(v)}`` through the edge ``uv``.

    Returns ``(path, closed)``; when ``closed`` the path lists the cycle's
    vertices once.  Assumes no vertex has three neighbours of one color, so
    the walk is unique.  With ``limit`` each direction stops after that many
    steps and the path is truncated.
    """
    if f[u] is None or f[v] is None or f[u] == f[v]:
        raise ContractError("edge endpoints must be colored differently")
    status, fwd = _walk(g, f, u, v, u, limit)
    if status == "closed":
        return [u, v] + fwd, True
    _, back = _walk(g, f, v, u, v, limit)
    return back[::-1] + [u, v] + fwd, False


def _bicolored_cycle(g: Graph, f) -> Optional[tuple[int, ...]]:
    """Some bicolored cycle, visiting every edge at most twice overall."""
    done = set()
    for u, v in g.edges():
        if (u, v) in done:
            continue
        path, closed = bicolored_path_through(g, f, u, v)
        for a, b in zip(path, path[1:]):
            done.add((a, b) if a < b else (b, a))
        if closed:
            return tuple(path)
    return None


def find_violation(
    g: Graph, L: ListAssignment, f: Sequence[Optional[int]], anchor: int | None = None
) -> Optional[Violation]:
    """First superlinear-coloring condition that fails, or ``None``.

    Conditions are checked in the order: totality, list membership, properness,
    three same-colored neighbours, bicolored cycle, degree-2 neighbour clash
    (waived at ``anchor``).
    """
    vs = g.vertices()
    for v in vs:
        if f[v] is None:
            return Violation("uncolored", (v,))
    for v in vs:
        if f[v] not in L[v]:
            return Violation("not-in-list", (v, f[v]))
    for u, v in g.edges():
        if f[u] == f[v]:
            return Violation("improper", (u, v))
    w = _three_same(g, f, vs)
    if w is not None:
        return Violation("three-same", w)
    cyc = _bicolored_cycle(g, f)
    if cyc is not None:
        return Violation("bicolored-cycle", cyc)
    for v in vs:
        if v == anchor:
            continue
        if g.deg[v] == 2:
            a, b = g.neighbors(v)
            if f[a] == f[b]:
                return Violation("deg2-clash", (a, v, b))
    return None


def is_linear(g: Graph, f: Sequence[Optional[int]]) -> bool:
    """Proper and every two color classes induce a disjoint union of paths."""
    _require_total(g, f)
    if any(f[u] == f[v] for u, v in g.edges()):
        return False
    if _three_same(g, f, g.vertices()) is not None:
        return False
    return _bicolored_cycle(g, f) is None


def is_superlinear(g: Graph, L: ListAssignment, f: Sequence[Optional[int]]) -> bool:
    _require_total(g, f)
    return find_violation(g, L, f) is None


def is_relaxed_superlinear(
    g: Graph, L: ListAssignment, f: Sequence[Optional[int]], anchor: int
) -> bool:
    """As :func:`is_superlinear` but the anchor's two neighbours may share a color."""
    g.check_vertex(anchor)
    if g.deg[anchor] != 2:
        raise ContractError(f"anchor {anchor} must have degree 2, has {g.deg[anchor]}")
    _require_total(g, f)
    return find_violation(g, L, f, anchor=anchor) is None


def local_violation(
    g: Graph,
    L: ListAssignment,
    f: Sequence[Optional[int]],
    q: Iterable[int],
    walk_limit: int = 64,
    anchors: Iterable[int] = (),
) -> Optional[Violation]:
    """Check the conditions that can be broken by newly colored vertices ``q``.

    Returns ``Violation("unknown", ...)`` when a bicolored walk from ``q`` runs
    past ``walk_limit`` in both directions without closing or ending.
    """
    q = list(q)
    qs = set(q)
    region = set(qs)
    for v in q:
        region.update(g.neighbors(v))
    anchors = set(anchors)
    for v in region:
        if f[v] is None:
            return Violation("uncolored", (v,))
    for v in q:
        if f[v] not in L[v]:
            return Violation("not-in-list", (v, f[v]))
        for w in g.neighbors(v):
            if f[w] == f[v]:
                return Violation("improper", (v, w))
    w3 = _three_same(g, f, region)
    if w3 is not None:
        return Violation("three-same", w3)
    for v in region:
        if g.deg[v] == 2 and v not in anchors:
            a, b = g.neighbors(v)
            if f[a] == f[b]:
                return Violation("deg2-clash", (a, v, b))
    for v in q:
        for w in g.neighbors(v):
            status, fwd = _walk(g, f, v, w, v, walk_limit)
            if status == "closed":
                return Violation("bicolored-cycle", (v, w, *fwd))
            if status == "limit":
                status, _ = _walk(g, f, w, v, w, walk_limit)
                if status == "limit":
                    return Violation("unknown", (v, w))
    return None
