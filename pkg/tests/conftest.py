import itertools
import os

import networkx as nx
from hypothesis import strategies as st

from superlinear.coloring import ListAssignment
from superlinear.graph import Graph

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@st.composite
def subcubic_graphs(draw, min_n=0, max_n=12):
    """Subcubic graphs built by offering candidate edges in a drawn order."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    picks = draw(st.lists(st.sampled_from(pairs), max_size=3 * n, unique=True)) if pairs else []
    deg = [0] * n
    edges = []
    for u, v in picks:
        if deg[u] < 3 and deg[v] < 3:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def list_assignments(n, universe=8):
    one = st.lists(st.integers(0, universe - 1), min_size=4, max_size=4, unique=True)
    return st.lists(one, min_size=n, max_size=n).map(lambda ls: ListAssignment(ls, universe))


@st.composite
def instances(draw, min_n=0, max_n=12, universe=8):
    g = draw(subcubic_graphs(min_n, max_n))
    return g, draw(list_assignments(g.n, universe))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    return h


def brute_linear(g: Graph, f) -> bool:
    """Every two color classes induce a linear forest (degree and union-find test)."""
    edges = g.edges()
    if any(f[u] == f[v] for u, v in edges):
        return False
    colors = sorted({f[v] for v in g.vertices()})
    for a, b in itertools.combinations(colors, 2):
        parent = {}

        def root(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        deg = {}
        for u, v in edges:
            if {f[u], f[v]} != {a, b}:
                continue
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            if deg[u] > 2 or deg[v] > 2:
                return False
            ru, rv = root(u), root(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def brute_superlinear(g: Graph, L: ListAssignment, f, anchor=None) -> bool:
    if any(f[v] not in L[v] for v in g.vertices()):
        return False
    if not brute_linear(g, f):
        return False
    for v in g.vertices():
        if v != anchor and g.deg[v] == 2:
            a, b = g.neighbors(v)
            if f[a] == f[b]:
                return False
    return True


def brute_count(g: Graph, L: ListAssignment) -> int:
    vs = g.vertices()
    total = 0
    for cols in itertools.product(*(L[v] for v in vs)):
        f = [None] * g.n
        for v, c in zip(vs, cols):
            f[v] = c
        if brute_superlinear(g, L, f):
            total += 1
    return total


def petersen_paper():
    """The Petersen graph with labels u1..u5, v1..v5 and the published coloring."""
    from superlinear.driver import PETERSEN_COLORS, petersen_graph

    g, ids = petersen_graph()
    f = [None] * g.n
    for name, c in PETERSEN_COLORS.items():
        f[ids[name]] = c
    return g, ids, f
