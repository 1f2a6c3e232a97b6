"""Instance and coloring text formats, graph generators and list generators.

Instance file::

    p subcubic <n> <m> <universe>
    l <v> <c1> <c2> <c3> <c4>      (one per vertex)
    e <u> <v>                       (one per edge)

Coloring file: one ``c <v> <color>`` line per vertex.  Ids are 0-based and
``#`` starts a comment.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import networkx as nx

from .coloring import DEFAULT_UNIVERSE, ListAssignment
from .driver import color_graph
from .errors import ContractError
from .graph import Graph, components, find_triangle_or_k23


class ParseError(ContractError):
    """Malformed instance or coloring text."""


@dataclass
class Instance:
    graph: Graph
    lists: ListAssignment

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Instance)
            and self.graph.n == other.graph.n
            and self.graph.same_adjacency(other.graph)
            and self.lists == other.lists
        )


# ---------------------------------------------------------------------------
# text formats


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(no: int, fields: Sequence[str]) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(f"line {no}: expected integers, got {' '.join(fields)!r}") from None


def parse_instance(text: str) -> Instance:
    header = None
    lists: dict[int, list[int]] = {}
    edges: list[tuple[int, int]] = []
    for no, tok in _lines(text):
        kind = tok[0]
        if kind == "p":
            if header is not None:
                raise ParseError(f"line {no}: second header")
            if len(tok) != 5 or tok[1] != "subcubic":
                raise ParseError(f"line {no}: header must be 'p subcubic <n> <m> <universe>'")
            header = _ints(no, tok[2:])
            continue
        if header is None:
            raise ParseError(f"line {no}: data before the header")
        if kind == "l":
            vals = _ints(no, tok[1:])
            if len(vals) != 5:
                raise ParseError(f"line {no}: list lines hold a vertex and four colors")
            if vals[0] in lists:
                raise ParseError(f"line {no}: second list for vertex {vals[0]}")
            lists[vals[0]] = vals[1:]
        elif kind == "e":
            vals = _ints(no, tok[1:])
            if len(vals) != 2:
                raise ParseError(f"line {no}: edge lines hold two vertices")
            edges.append((vals[0], vals[1]))
        else:
            raise ParseError(f"line {no}: unknown record {kind!r}")
    if header is None:
        raise ParseError("missing header")
    n, m, universe = header
    if n < 0 or m < 0 or universe <= 0:
        raise ParseError("header values must be non-negative")
    if sorted(lists) != list(range(n)):
        raise ParseError(f"expected one list per vertex 0..{n - 1}")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    try:
        g = Graph(n, edges)
        L = ListAssignment([lists[v] for v in range(n)], universe)
    except ContractError as e:
        raise ParseError(str(e)) from None
    return Instance(g, L)


def format_instance(inst: Instance, comment: Optional[str] = None) -> str:
    g, L = inst.graph, inst.lists
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    es = g.edges()
    out.append(f"p subcubic {g.n} {len(es)} {L.universe}")
    out += [f"l {v} {' '.join(map(str, L[v]))}" for v in range(g.n)]
    out += [f"e {u} {v}" for u, v in es]
    return "\n".join(out) + "\n"


def parse_coloring(text: str, n: int, universe: int = DEFAULT_UNIVERSE) -> list[int]:
    f: list[Optional[int]] = [None] * n
    for no, tok in _lines(text):
        if tok[0] != "c" or len(tok) != 3:
            raise ParseError(f"line {no}: expected 'c <v> <color>'")
        v, c = _ints(no, tok[1:])
        if not 0 <= v < n:
            raise ParseError(f"line {no}: vertex {v} out of range")
        if not 0 <= c < universe:
            raise ParseError(f"line {no}: color {c} outside the universe")
        if f[v] is not None:
            raise ParseError(f"line {no}: vertex {v} colored twice")
        f[v] = c
    missing = [v for v in range(n) if f[v] is None]
    if missing:
        raise ParseError(f"vertex {missing[0]} has no color")
    return f


def format_coloring(f: Sequence[Optional[int]]) -> str:
    return "".join(f"c {v} {c}\n" for v, c in enumerate(f) if c is not None)


def read_text(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# lists


def identical_lists(n: int, colors: Sequence[int] = (1, 2, 3, 4), universe: int = DEFAULT_UNIVERSE):
    return ListAssignment.identical(n, colors, universe)


def random_lists(
    n: int, rng: random.Random, universe: int = DEFAULT_UNIVERSE, palette: Optional[int] = None
) -> ListAssignment:
    """Uniform 4-subsets of the first ``palette`` colors (all of the universe by default)."""
    palette = universe if palette is None else palette
    if not 4 <= palette <= universe:
        raise ContractError("palette must hold between 4 and universe colors")
    return ListAssignment([rng.sample(range(palette), 4) for _ in range(n)], universe)


# ---------------------------------------------------------------------------
# fixed families


def cycle(n: int) -> Graph:
    if n < 3:
        raise ContractError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def k33() -> Graph:
    return Graph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def k23() -> Graph:
    return Graph(5, [(a, b) for a in range(2) for b in range(2, 5)])


def prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def petersen() -> Graph:
    from .driver import petersen_graph

    return petersen_graph()[0]


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph(offset, edges)


# ---------------------------------------------------------------------------
# random graphs


def random_with_degrees(
    degrees: Sequence[int],
    rng: random.Random,
    *,
    max_tries: int = 1000,
    triangle_free: bool = False,
    connected: bool = False,
) -> Graph:
    """Uniform simple graph with the given degrees, by the pairing model with rejection."""
    if any(d < 0 or d > 3 for d in degrees) or sum(degrees) % 2:
        raise ContractError("degrees must lie in 0..3 and sum to an even number")
    n = len(degrees)
    points = [v for v in range(n) for _ in range(degrees[v])]
    for _ in range(max_tries):
        rng.shuffle(points)
        seen = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            key = (u, v) if u < v else (v, u)
            if u == v or key in seen:
                ok = False
                break
            seen.add(key)
        if not ok:
            continue
        g = Graph(n, seen)
        if connected and len(components(g)) > 1:
            continue
        if triangle_free and _has_triangle(g):
            continue
        return g
    raise ContractError(f"no simple graph found in {max_tries} tries")


def _has_triangle(g: Graph) -> bool:
    return any(
        g.has_edge(a, b)
        for v in g.vertices()
        for i, a in enumerate(g.neighbors(v))
        for b in g.neighbors(v)[i + 1:]
    )


def random_cubic(n: int, rng: random.Random, **kw) -> Graph:
    if n < 4 or n % 2:
        raise ContractError("a cubic graph needs an even order of at least 4")
    return random_with_degrees([3] * n, rng, **kw)


def random_subcubic(n: int, rng: random.Random, density: float = 0.9) -> Graph:
    """Random subcubic graph: pairing model on random degrees, dropping bad pairs."""
    if n < 1:
        raise ContractError("need at least one vertex")
    degrees = [3 if rng.random() < density else rng.randint(1, 2) for _ in range(n)]
    points = [v for v in range(n) for _ in range(degrees[v])]
    rng.shuffle(points)
    edges = set()
    for i in range(0, len(points) - 1, 2):
        u, v = points[i], points[i + 1]
        if u != v:
            edges.add((u, v) if u < v else (v, u))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# planted reducible configurations
#
# A gadget is a small graph on ids 0..k-1 with "ports": vertices that need one
# more neighbour.  The host is a random graph whose degrees are 3 except one
# deficient vertex of degree 2 per port; ports are matched to deficient vertices.


@dataclass(frozen=True)
class Gadget:
    size: int
    edges: tuple[tuple[int, int], ...]
    ports: tuple[int, ...]


GADGETS = {
    # v1 v2 v3 v4 with u1 ~ v1, v3 and u4 ~ v4, v2
    "eyeglass": Gadget(6, ((0, 1), (1, 2), (2, 3), (4, 0), (4, 2), (5, 3), (5, 1)), (4, 5)),
    # v1..v5 with w3 ~ v2, v4
    "c4-bridge": Gadget(6, ((0, 1), (1, 2), (2, 3), (3, 4), (5, 1), (5, 3)), (0, 2, 4, 5)),
    # K_{2,3} on v1, v2 | u1, u2, u3 plus v3 ~ u1, u2
    "k23-shared": Gadget(
        6, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (5, 2), (5, 3)), (4, 5)
    ),
    "k23": Gadget(5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)), (2, 3, 4)),
    # one subdivision vertex in a cubic graph
    "subdivided": Gadget(1, (), (0, 0)),
    "good-c4": Gadget(4, ((0, 1), (1, 2), (2, 3), (3, 0)), (0, 1, 2, 3)),
    "good-c6": Gadget(6, tuple((i, (i + 1) % 6) for i in range(6)), tuple(range(6))),
    # triangle with a pendant degree-2 vertex
    "triangle-tail": Gadget(4, ((0, 1), (1, 2), (0, 2), (0, 3)), (1, 2, 3)),
}


def planted(
    name: str,
    host_order: int,
    rng: random.Random,
    *,
    triangle_free: bool = True,
) -> tuple[Graph, list[int]]:
    """A gadget embedded in a random host; returns the graph and the port targets.

    ``port_targets[i]`` is the host vertex attached to ``gadget.ports[i]``.
    """
    gad = GADGETS[name]
    p = len(gad.ports)
    if host_order < p or (3 * host_order - p) % 2:
        raise ContractError(f"host order {host_order} cannot absorb {p} ports")
    degrees = [3] * host_order
    for i in range(p):
        degrees[i] = 2
    host = random_with_degrees(degrees, rng, triangle_free=triangle_free, connected=True)
    targets = [gad.size + i for i in range(p)]
    rng.shuffle(targets)
    host_edges = [(u + gad.size, v + gad.size) for u, v in host.edges()]
    edges = list(gad.edges) + host_edges + list(zip(gad.ports, targets))
    return Graph(gad.size + host_order, edges), targets


def host_order_for(name: str, lo: int, hi: int, rng: random.Random) -> int:
    p = len(GADGETS[name].ports)
    while True:
        m = rng.randint(lo, hi)
        if (3 * m - p) % 2 == 0:
            return m


def good_cycle_instance(
    rng: random.Random,
    target: str,
    host_order: int = 12,
    universe: int = DEFAULT_UNIVERSE,
    palette: Optional[int] = None,
) -> Optional[Instance]:
    """A cubic instance whose good 4-cycle is extended through branch ``target``.

    ``target`` is ``"minus"``, ``"recolor"`` or ``"explicit"``.  The cycle's
    lists are ``{p, q, f(u_i), f(u_{i+1})}``, so the first derived lists are
    all ``{p, q}`` and fail.  The host coloring does not depend on how the
    cycle attaches or on the cycle's lists, so every attachment order and
    every pair ``p, q`` is tried until a run takes the target branch.
    Returns ``None`` if this host admits none.
    """
    if target not in ("minus", "recolor", "explicit"):
        raise ContractError(f"unknown good-cycle branch {target!r}")
    g, _ = planted("good-c4", host_order, rng)
    if find_triangle_or_k23(g) is not None:
        return None
    lists = [list(lst) for lst in random_lists(g.n, rng, universe, palette).lists]
    f = color_graph(g, ListAssignment(lists, universe)).coloring
    kept = [e for e in g.edges() if (min(e) >= 4) == (max(e) >= 4)]
    deficient = list(range(4, 8))
    want = "good-cycle:" + target
    for perm in itertools.permutations(deficient):
        fu = [f[u] for u in perm]
        if any(fu[i] == fu[(i + 1) % 4] for i in range(4)):
            continue
        alternating = fu[0] == fu[2] and fu[1] == fu[3]
        if alternating == (target == "minus"):
            continue
        g2 = Graph(g.n, kept + [(i, perm[i]) for i in range(4)])
        free = [c for c in range(universe) if c not in fu]
        for p, q in itertools.combinations(free, 2):
            for i in range(4):
                lists[i] = [p, q, fu[i], fu[(i + 1) % 4]]
            inst = Instance(g2, ListAssignment(lists, universe))
            r = color_graph(inst.graph, inst.lists)
            if r.report.branches[want]:
                return inst
            if target == "minus":
                break
    return None


# ---------------------------------------------------------------------------
# exhaustive small graphs


def connected_subcubic_graphs(n: int) -> list[Graph]:
    """All connected subcubic graphs on ``n`` vertices up to isomorphism.

    Every connected graph has a vertex whose removal keeps it connected, so
    adding one vertex with 1 to 3 neighbours to every graph of order ``n - 1``
    reaches every graph of order ``n``; duplicates are removed by isomorphism
    tests inside Weisfeiler-Lehman hash buckets.
    """
    if n < 1:
        raise ContractError("order must be positive")
    level = [nx.empty_graph(1)]
    for k in range(1, n):
        buckets: dict[str, list[nx.Graph]] = {}
        for h in level:
            free = [v for v in h if h.degree(v) < 3]
            for size in (1, 2, 3):
                for sub in itertools.combinations(free, size):
                    h2 = h.copy()
                    h2.add_edges_from((k, v) for v in sub)
                    key = nx.weisfeiler_lehman_graph_hash(h2, iterations=3)
                    bucket = buckets.setdefault(key, [])
                    if not any(nx.is_isomorphic(h2, other) for other in bucket):
                        bucket.append(h2)
        level = [h for bucket in buckets.values() for h in bucket]
    return [Graph(n, h.edges()) for h in level]


# ---------------------------------------------------------------------------
# fuzz corpus

FUZZ_FAMILIES = (
    ("random-subcubic", 30),
    ("random-cubic", 14),
    ("eyeglass", 5),
    ("c4-bridge", 8),
    ("k23-shared", 6),
    ("k23", 6),
    ("subdivided", 10),
    ("triangle-tail", 4),
    ("good-c4", 3),
    ("good-c6", 3),
    ("with-small", 5),
    ("good-cycle-minus", 2),
    ("good-cycle-recolor", 2),
    ("good-cycle-explicit", 0.01),
)


def find_good_cycle_instance(
    rng: random.Random, target: str, attempts: int = 5000
) -> Optional[Instance]:
    """Draw hosts until :func:`good_cycle_instance` yields ``target``."""
    for _ in range(attempts):
        inst = good_cycle_instance(
            rng, target, rng.choice([8, 10, 12, 14, 16]), palette=rng.choice([5, 6, 8])
        )
        if inst is not None:
            return inst
    return None


def fuzz_instance(rng: random.Random, max_n: int = 200) -> tuple[str, Instance]:
    """One random instance of order at most ``max_n`` from a weighted family mix."""
    names = [name for name, _ in FUZZ_FAMILIES]
    weights = [w for _, w in FUZZ_FAMILIES]
    while True:
        family = rng.choices(names, weights)[0]
        inst = family_instance(family, rng, max_n)
        if inst is not None and inst.graph.n <= max_n:
            return family, inst


def _fuzz_lists(n: int, rng: random.Random) -> ListAssignment:
    return random_lists(n, rng, DEFAULT_UNIVERSE, rng.choice([4, 5, 5, 6, 6, 7, 8, 8]))


def family_instance(family: str, rng: random.Random, max_n: int = 200) -> Optional[Instance]:
    """One instance of a named fuzz family, or ``None`` if none fits ``max_n``."""
    if family == "random-subcubic":
        n = rng.randint(1, max_n)
        g = random_subcubic(n, rng, rng.choice([0.5, 0.8, 0.9, 0.95, 1.0]))
    elif family == "random-cubic":
        if max_n < 4:
            return None
        g = random_cubic(2 * rng.randint(2, max_n // 2), rng)
    elif family in GADGETS:
        size = GADGETS[family].size
        hi = min(60, max_n - size)
        if hi < 6:
            return None
        g, _ = planted(family, host_order_for(family, 6, hi, rng), rng)
    elif family == "with-small":
        small = rng.choice([cycle(5), k33(), cycle(rng.randint(3, 10)), petersen(), prism(), k23()])
        rest = random_subcubic(rng.randint(1, max(1, max_n - small.n)), rng)
        g = disjoint_union(small, rest)
        if rng.random() < 0.5:
            colors = sorted(rng.sample(range(DEFAULT_UNIVERSE), 4))
            lists = [colors] * small.n + list(_fuzz_lists(rest.n, rng).lists)
            return Instance(g, ListAssignment(lists, DEFAULT_UNIVERSE))
    elif family.startswith("good-cycle-"):
        target = family[len("good-cycle-"):]
        attempts = 5000 if target == "explicit" else 200
        return find_good_cycle_instance(rng, target, attempts)
    else:
        raise ContractError(f"unknown fuzz family {family!r}")
    return Instance(g, _fuzz_lists(g.n, rng))
