"""Subcubic graphs with an alive-mask deletion view.

Vertices are dense ids ``0..n-1``.  Deleting a vertex only clears its alive
flag and decrements the cached degrees of its neighbours, so a deletion can be
undone in time proportional to the deleted set.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ContractError, InvalidVertexError

__all__ = [
    "Graph",
    "VertexSet",
    "neighborhood_k",
    "components",
    "delete",
    "induced",
    "is_component_c5",
    "is_component_k33",
    "find_triangle_or_k23",
    "find_good_cycle",
]


class VertexSet(tuple):
    """Ordered vertex ids with constant-time membership."""

    def __new__(cls, items: Iterable[int] = ()):
        self = super().__new__(cls, items)
        self._members = frozenset(self)
        if len(self._members) != len(self):
            raise ContractError("duplicate vertex in VertexSet")
        return self

    def __contains__(self, v) -> bool:
        return v in self._members

    def __repr__(self) -> str:
        return f"VertexSet({list(self)})"


class Graph:
    """Simple undirected graph of maximum degree three.

    ``adj`` holds the original neighbour lists; ``alive`` masks deleted
    vertices and ``deg`` caches each vertex's number of alive neighbours.
    """

    __slots__ = ("n", "adj", "alive", "deg", "ops")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ContractError("negative vertex count")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ContractError(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ContractError(f"parallel edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        for v in range(n):
            if len(adj[v]) > 3:
                raise ContractError(f"vertex {v} has degree {len(adj[v])} > 3")
        self.n = n
        self.adj = [tuple(sorted(a)) for a in adj]
        self.alive = bytearray(b"\x01") * n
        self.deg = [len(a) for a in self.adj]
        # elementary-work counter, read by the benchmark harness
        self.ops = 0

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        edges = [(u, v) for u, nb in enumerate(adjacency) for v in nb if u < v]
        return cls(len(adjacency), edges)

    def copy(self) -> "Graph":
        """Independent view sharing adjacency but owning its own mask."""
        g = Graph.__new__(Graph)
        g.n = self.n
        g.adj = self.adj
        g.alive = bytearray(self.alive)
        g.deg = list(self.deg)
        g.ops = 0
        return g

    # -- queries ---------------------------------------------------------

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n) or not self.alive[v]:
            raise InvalidVertexError(f"vertex {v} is out of range or deleted")

    def neighbors(self, v: int) -> list[int]:
        alive = self.alive
        return [w for w in self.adj[v] if alive[w]]

    def degree(self, v: int) -> int:
        return self.deg[v]

    def has_edge(self, u: int, v: int) -> bool:
        return self.alive[u] and self.alive[v] and v in self.adj[u]

    def vertices(self) -> list[int]:
        alive = self.alive
        return [v for v in range(self.n) if alive[v]]

    def order(self) -> int:
        return sum(self.alive)

    @property
    def m(self) -> int:
        alive, deg = self.alive, self.deg
        return sum(deg[v] for v in range(self.n) if alive[v]) // 2

    def edges(self) -> list[tuple[int, int]]:
        alive = self.alive
        return [
            (u, v)
            for u in range(self.n)
            if alive[u]
            for v in self.adj[u]
            if u < v and alive[v]
        ]

    def max_degree(self) -> int:
        return max((self.deg[v] for v in self.vertices()), default=0)

    def is_cubic(self, vs: Iterable[int] | None = None) -> bool:
        vs = self.vertices() if vs is None else vs
        return all(self.deg[v] == 3 for v in vs)

    # -- deletion view ---------------------------------------------------

    def remove(self, q: Iterable[int]) -> list[int]:
        """Delete ``q`` in place; return alive vertices that lost a neighbour."""
        alive, deg, adj = self.alive, self.deg, self.adj
        q = list(q)
        for v in q:
            if not alive[v]:
                raise InvalidVertexError(f"vertex {v} already deleted")
            alive[v] = 0
        boundary = []
        seen = set()
        for v in q:
            for w in adj[v]:
                if alive[w]:
                    deg[w] -= 1
                    if w not in seen:
                        seen.add(w)
                        boundary.append(w)
        self.ops += len(q)
        return boundary

    def revive(self, q: Iterable[int]) -> None:
        """Undo :meth:`remove` for ``q``."""
        alive, deg, adj = self.alive, self.deg, self.adj
        q = list(q)
        for v in q:
            alive[v] = 1
        for v in q:
            d = 0
            for w in adj[v]:
                if alive[w]:
                    d += 1
                    if w not in q:
                        deg[w] += 1
            deg[v] = d

    def same_adjacency(self, other: "Graph") -> bool:
        return {frozenset(e) for e in self.edges()} == {frozenset(e) for e in other.edges()}

    def bfs_limited(self, v: int, limit: int) -> list[int]:
        """Vertices of ``v``'s component, stopping once ``limit`` are found."""
        alive, adj = self.alive, self.adj
        seen = {v}
        out = [v]
        i = 0
        while i < len(out) and len(out) < limit:
            x = out[i]
            i += 1
            for w in adj[x]:
                if alive[w] and w not in seen:
                    seen.add(w)
                    out.append(w)
        self.ops += len(out)
        return out

    def distances_from(self, v: int, radius: int) -> dict[int, int]:
        """Breadth-first distances from ``v`` up to ``radius``."""
        alive, adj = self.alive, self.adj
        dist = {v: 0}
        frontier = [v]
        for d in range(1, radius + 1):
            nxt = []
            for x in frontier:
                for w in adj[x]:
                    if alive[w] and w not in dist:
                        dist[w] = d
                        nxt.append(w)
            if not nxt:
                break
            frontier = nxt
        self.ops += len(dist)
        return dist

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, alive={self.order()}, m={self.m})"


def neighborhood_k(g: Graph, v: int, k: int) -> VertexSet:
    """All alive ``u`` with ``0 < d(u, v) <= k``, in BFS order."""
    g.check_vertex(v)
    if k < 1:
        raise ContractError("k must be positive")
    dist = g.distances_from(v, k)
    return VertexSet(u for u in dist if u != v)


def components(g: Graph) -> list[VertexSet]:
    """Connected components of the alive vertices, ordered by smallest id."""
    alive, adj = g.alive, g.adj
    seen = bytearray(g.n)
    out = []
    for s in range(g.n):
        if not alive[s] or seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        i = 0
        while i < len(comp):
            x = comp[i]
            i += 1
            for w in adj[x]:
                if alive[w] and not seen[w]:
                    seen[w] = 1
                    comp.append(w)
        out.append(VertexSet(sorted(comp)))
    return out


def induced(g: Graph, vs: Iterable[int]) -> tuple[Graph, list[int]]:
    """The subgraph induced by ``vs`` on local ids, and the original id of each."""
    order = sorted(vs)
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[v], index[w]) for v in order for w in g.neighbors(v) if w in index and v < w]
    return Graph(len(order), edges), order


def delete(g: Graph, q: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Return the view ``g - q`` and the surviving vertices that lost a neighbour.

    ``g`` itself is left untouched.
    """
    view = g.copy()
    boundary = view.remove(q)
    return view, VertexSet(boundary)


def is_component_c5(g: Graph, comp: Sequence[int]) -> bool:
    if len(comp) != 5 or any(g.deg[v] != 2 for v in comp):
        return False
    return len(g.bfs_limited(comp[0], 6)) == 5


def is_component_k33(g: Graph, comp: Sequence[int]) -> bool:
    if len(comp) != 6 or any(g.deg[v] != 3 for v in comp):
        return False
    members = set(comp)
    a = comp[0]
    side_b = set(g.neighbors(a))
    if not side_b <= members:
        return False
    side_a = members - side_b
    if len(side_a) != 3:
        return False
    return all(set(g.neighbors(x)) == side_b for x in side_a) and all(
        set(g.neighbors(y)) == side_a for y in side_b
    )


def _triangle_at(g: Graph, v: int):
    nb = g.neighbors(v)
    for i in range(len(nb)):
        for j in range(i + 1, len(nb)):
            if nb[j] in g.adj[nb[i]]:
                return VertexSet((v, nb[i], nb[j]))
    return None


def _k23_at(g: Graph, v: int):
    """A K_{2,3} in which ``v`` is one of the two degree-3 vertices."""
    nb = g.neighbors(v)
    if len(nb) < 3:
        return None
    common: dict[int, list[int]] = {}
    for x in nb:
        for w in g.neighbors(x):
            if w != v:
                common.setdefault(w, []).append(x)
    for w in sorted(common):
        if len(common[w]) >= 3:
            return VertexSet([v, w] + sorted(common[w])[:3])
    return None


def find_triangle_or_k23(g: Graph, within: Sequence[int] | None = None):
    """A triangle if one exists, else an induced K_{2,3}, else ``None``.

    ``within`` restricts the search to one component.
    """
    vs = g.vertices() if within is None else sorted(within)
    for v in vs:
        t = _triangle_at(g, v)
        if t is not None:
            g.ops += len(vs)
            return t
    for v in vs:
        h = _k23_at(g, v)
        if h is not None:
            g.ops += 2 * len(vs)
            return h
    g.ops += 2 * len(vs)
    return None


def _initial_cycle(g: Graph, start: int) -> list[int]:
    """A cycle found by a non-backtracking walk (every vertex has degree 3)."""
    path = [start]
    pos = {start: 0}
    prev = -1
    cur = start
    while True:
        nxt = next(w for w in g.neighbors(cur) if w != prev)
        if nxt in pos:
            return path[pos[nxt]:]
        pos[nxt] = len(path)
        path.append(nxt)
        prev, cur = cur, nxt


def _shrink_once(g: Graph, cyc: list[int]) -> list[int] | None:
    """Replace ``cyc`` by a strictly shorter cycle if some attachment is doubled."""
    k = len(cyc)
    pos = {v: i for i, v in enumerate(cyc)}
    for i, v in enumerate(cyc):
        prev_v, next_v = cyc[i - 1], cyc[(i + 1) % k]
        outside = [w for w in g.neighbors(v) if w != prev_v and w != next_v]
        g.ops += 1
        if not outside:
            continue
        u = outside[0]
        if u in pos:
            # chord v-u: keep the shorter side, ties toward the arc through v_{i+1}
            j = pos[u]
            fwd = (j - i) % k
            if fwd <= k - fwd:
                return [cyc[(i + s) % k] for s in range(fwd + 1)]
            return [cyc[(j + s) % k] for s in range(k - fwd + 1)]
        hits = sorted((pos[w] - i) % k for w in g.neighbors(u) if w in pos)
        if len(hits) < 2:
            continue
        # consecutive attachment points of u split the cycle into arcs
        best = None
        for a, b in zip(hits, hits[1:] + [hits[0] + k]):
            length = b - a
            # arcs are walked forward, so offset 0 is the arc containing v_{i+1}
            if best is None or length < best[0]:
                best = (length, a)
        length, a = best
        arc = [cyc[(i + a + s) % k] for s in range(length + 1)]
        return [u] + arc
    return None


def find_good_cycle(
    g: Graph, start: int | None = None, within: Sequence[int] | None = None
) -> VertexSet:
    """An induced cycle with no outside vertex adjacent to two of its vertices.

    The graph must be connected, cubic, of order at least 10, and free of
    triangles and K_{2,3}.  Each shrink at least roughly halves the cycle, so
    the total work is linear.
    """
    vs = g.vertices() if within is None else sorted(within)
    if len(vs) < 10 or not g.is_cubic(vs):
        raise ContractError("find_good_cycle needs a cubic graph of order >= 10")
    if len(g.bfs_limited(vs[0], len(vs) + 1)) != len(vs):
        raise ContractError("find_good_cycle needs a connected graph")
    if find_triangle_or_k23(g, vs) is not None:
        raise ContractError("find_good_cycle needs a triangle-free, K_{2,3}-free graph")
    cyc = _initial_cycle(g, vs[0] if start is None else start)
    while True:
        shorter = _shrink_once(g, cyc)
        if shorter is None:
            return VertexSet(cyc)
        if len(shorter) >= len(cyc):
            raise ContractError("cycle shrink did not decrease length")
        cyc = shorter
