"""Reducible configurations and the recipes that extend a coloring across them.

Each configuration is a small vertex set Q together with the labels its
recipe refers to.  ``locate_*`` functions label a configuration from a seed and
return ``None`` unless every structural assumption of the recipe holds, so a
bad dispatch fails loudly at location time instead of producing a bad coloring.

An ``extend_*`` function receives the graph with Q alive, a coloring ``f`` that
is defined exactly on the other vertices of Q's component, and colors Q.
Every choice takes the smallest admissible color unless the recipe says
otherwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .coloring import ListAssignment, local_violation, restricted
from .cyclecolor import CycleInstance, color_cycle_linear
from .errors import ExtensionError
from .graph import Graph

# Every textual branch of every recipe; the fuzzer reports coverage against this.
BRANCHES = (
    "pendant:leaf",
    "deg2-path:short",
    "deg2-path:long",
    "special-path:three",
    "special-path:distinct",
    "special-path:repeat",
    "special-path:pendant-x",
    "eyeglass",
    "c4-bridge:shared",
    "c4-bridge:split",
    "c4-bridge:split-mirror",
    "triangle:plain",
    "triangle:pendant-x",
    "c4-deg2",
    "c4-near-deg2",
    "c5-deg2",
    "cubic-tail:split",
    "cubic-tail:v1-u2",
    "cubic-tail:v2-u3",
    "cubic-tail:v2-not-u3",
    "k23:a-distinct",
    "k23:a-repeat",
    "k23:b-avoid",
    "k23:b-forced",
    "good-cycle:plus",
    "good-cycle:minus",
    "good-cycle:recolor",
    "good-cycle:explicit",
)


class Trace:
    """Branch counters plus, optionally, one line per greedy choice."""

    def __init__(self, record: bool = False):
        self.lines: Optional[list[str]] = [] if record else None
        self.branches: Counter = Counter()

    def hit(self, tag: str) -> None:
        self.branches[tag] += 1

    def chose(self, step: str, v: int, forbidden: Iterable[int], c: int) -> None:
        if self.lines is not None:
            forb = ",".join(str(x) for x in sorted(forbidden))
            self.lines.append(f"step={step} vertex={v} forbidden={{{forb}}} chose={c}")


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class Step:
    kind = "step"

    @property
    def q(self) -> tuple[int, ...]:
        raise NotImplementedError

    @property
    def anchors(self) -> tuple[int, ...]:
        """Vertices of G-Q whose 5-cycle component may be colored relaxed."""
        return ()


@dataclass(frozen=True)
class PendantStep(Step):
    kind = "pendant"
    v: int
    u: int

    @property
    def q(self):
        return (self.v,)

    @property
    def anchors(self):
        return (self.u,)


@dataclass(frozen=True)
class Deg2PathStep(Step):
    kind = "deg2-path"
    path: tuple[int, ...]
    u1: int
    uk: int

    @property
    def q(self):
        return self.path

    @property
    def anchors(self):
        return (self.u1,)


@dataclass(frozen=True)
class SpecialPathStep(Step):
    kind = "special-path"
    path: tuple[int, ...]
    xs: tuple[Optional[int], ...]  # aligned with path; None where undefined
    us: tuple[int, ...]  # aligned with path

    @property
    def q(self):
        return self.path + tuple(x for x in self.xs if x is not None)

    @property
    def anchors(self):
        return (self.us[0],)


@dataclass(frozen=True)
class EyeglassStep(Step):
    kind = "eyeglass"
    path: tuple[int, int, int, int]
    u1: int
    u4: int

    @property
    def q(self):
        return self.path


@dataclass(frozen=True)
class C4BridgeStep(Step):
    kind = "c4-bridge"
    path: tuple[int, int, int, int, int]
    u1: int
    u3: int
    u5: int
    w3: int
    x: int

    @property
    def q(self):
        return self.path + (self.w3,)

    @property
    def anchors(self):
        return (self.u1, self.u5)


@dataclass(frozen=True)
class TriangleStep(Step):
    kind = "triangle"
    vs: tuple[int, int, int]
    xs: tuple[Optional[int], ...]
    us: tuple[Optional[int], ...]

    @property
    def q(self):
        return self.vs + tuple(x for x in self.xs if x is not None)


@dataclass(frozen=True)
class C4Deg2Step(Step):
    kind = "c4-deg2"
    vs: tuple[int, int, int, int]  # vs[0] has degree 2
    us: tuple[Optional[int], int, int, int]

    @property
    def q(self):
        return self.vs


@dataclass(frozen=True)
class C4NearDeg2Step(Step):
    kind = "c4-near-deg2"
    vs: tuple[int, int, int, int]
    w: int  # degree-2 vertex adjacent to vs[0]
    us: tuple[int, int, int, int]

    @property
    def q(self):
        return self.vs + (self.w,)


@dataclass(frozen=True)
class C5Deg2Step(Step):
    kind = "c5-deg2"
    vs: tuple[int, int, int, int, int]  # vs[0] has degree 2
    us: tuple[Optional[int], int, int, int, int]

    @property
    def q(self):
        return self.vs


@dataclass(frozen=True)
class CubicTailStep(Step):
    kind = "cubic-tail"
    vs: tuple[int, int, int, int]  # vs[3] has degree 2
    us: tuple[int, int, int, int]
    w: int

    @property
    def q(self):
        return self.vs


@dataclass(frozen=True)
class K23Step(Step):
    """``v1, v2`` are the two vertices adjacent to all of ``u1, u2, u3``.

    Subcase "a": ``u1`` and ``u2`` have a further common neighbour ``v3``, ``x``
    is the outside neighbour of ``u3`` and ``y`` that of ``v3``.  Subcase "b":
    ``a, b, c`` are the outside neighbours of ``u1, u2, u3``.
    """

    kind = "k23"
    subcase: str
    v1: int
    v2: int
    u1: int
    u2: int
    u3: int
    v3: Optional[int] = None
    x: Optional[int] = None
    y: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None

    @property
    def q(self):
        base = (self.v1, self.v2, self.u1, self.u2, self.u3)
        return base + (self.v3,) if self.subcase == "a" else base


@dataclass(frozen=True)
class GoodCycleStep(Step):
    kind = "good-cycle"
    cycle: tuple[int, ...]
    us: tuple[int, ...]

    @property
    def q(self):
        return self.cycle


# ---------------------------------------------------------------------------
# structural helpers


def _others(g: Graph, v: int, exclude: Iterable[int]) -> list[int]:
    ex = set(exclude)
    return [w for w in g.neighbors(v) if w not in ex]


def _is_path(g: Graph, path: Sequence[int]) -> bool:
    if len(set(path)) != len(path):
        return False
    return all(g.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))


def _is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    if not _is_path(g, path):
        return False
    pos = {v: i for i, v in enumerate(path)}
    for i, v in enumerate(path):
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and abs(i - j) != 1:
                return False
    return True


def _is_induced_cycle(g: Graph, cyc: Sequence[int]) -> bool:
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k:
        return False
    pos = {v: i for i, v in enumerate(cyc)}
    for i, v in enumerate(cyc):
        if not g.has_edge(v, cyc[(i + 1) % k]):
            return False
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and (i - j) % k not in (1, k - 1):
                return False
    return True


def _single(xs: list[int]) -> Optional[int]:
    return xs[0] if len(xs) == 1 else None


def _pairwise_distinct(xs: Sequence) -> bool:
    return len(set(xs)) == len(xs)


def _hits_nonadjacent(g: Graph, u: int, qset: set, count: int) -> bool:
    """Whether ``u`` is adjacent to ``count`` pairwise nonadjacent vertices of Q."""
    nb = [w for w in g.neighbors(u) if w in qset]
    if len(nb) < count:
        return False
    if count == 2:
        return any(
            not g.has_edge(nb[i], nb[j]) for i in range(len(nb)) for j in range(i + 1, len(nb))
        )
    a, b, c = nb
    return not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c))


# ---------------------------------------------------------------------------
# locate: label a configuration and check the recipe's assumptions


def locate_pendant(g: Graph, v: int) -> Optional[PendantStep]:
    # an isolated vertex is a small component and never reaches a reduction
    nb = g.neighbors(v)
    if len(nb) != 1:
        return None
    return PendantStep(v, nb[0])


def locate_deg2_path(g: Graph, path: Sequence[int]) -> Optional[Deg2PathStep]:
    path = tuple(path)
    if len(path) < 2 or not _is_path(g, path):
        return None
    if any(g.deg[v] != 2 for v in path):
        return None
    u1 = _single(_others(g, path[0], (path[1],)))
    uk = _single(_others(g, path[-1], (path[-2],)))
    if u1 is None or uk is None or u1 in path or uk in path:
        return None
    if g.deg[u1] != 3 or g.deg[uk] != 3:
        return None
    return Deg2PathStep(path, u1, uk)


def locate_special_path(g: Graph, path: Sequence[int]) -> Optional[SpecialPathStep]:
    path = tuple(path)
    k = len(path)
    if k < 3 or not _is_induced_path(g, path):
        return None
    if g.deg[path[0]] != 2 or g.deg[path[-1]] != 2:
        return None
    if any(g.deg[v] != 3 for v in path[1:-1]):
        return None
    us: list[Optional[int]] = [None] * k
    xs: list[Optional[int]] = [None] * k
    us[0] = _single(_others(g, path[0], (path[1],)))
    us[-1] = _single(_others(g, path[-1], (path[-2],)))
    for i in range(1, k - 1):
        t = _single(_others(g, path[i], (path[i - 1], path[i + 1])))
        if t is None or t in path:
            return None
        if g.deg[t] == 3:
            us[i] = t
        elif g.deg[t] == 2:
            xs[i] = t
            us[i] = _single(_others(g, t, (path[i],)))
        else:
            return None
    step_xs = [x for x in xs if x is not None]
    if not _pairwise_distinct(step_xs):
        return None
    qset = set(path) | set(step_xs)
    if any(u is None or u in qset or g.deg[u] != 3 for u in us):
        return None
    u1 = us[0]
    if _hits_nonadjacent(g, u1, qset, 3):
        return None
    for u in us[1:]:
        if u != u1 and _hits_nonadjacent(g, u, qset, 2):
            return None
    return SpecialPathStep(path, tuple(xs), tuple(us))


def locate_eyeglass(g: Graph, path: Sequence[int]) -> Optional[EyeglassStep]:
    path = tuple(path)
    if len(path) != 4 or not _is_induced_path(g, path):
        return None
    v1, v2, v3, v4 = path
    if g.deg[v1] != 2 or g.deg[v4] != 2 or g.deg[v2] != 3 or g.deg[v3] != 3:
        return None
    u1 = _single(_others(g, v1, (v2,)))
    u4 = _single(_others(g, v4, (v3,)))
    if u1 is None or u4 is None or u1 == u4 or u1 in path or u4 in path:
        return None
    if not (g.has_edge(u1, v3) and g.has_edge(u4, v2)):
        return None
    if g.deg[u1] != 3 or g.deg[u4] != 3:
        return None
    return EyeglassStep(path, u1, u4)


def locate_c4_bridge(g: Graph, path: Sequence[int]) -> Optional[C4BridgeStep]:
    path = tuple(path)
    if len(path) != 5 or not _is_induced_path(g, path):
        return None
    v1, v2, v3, v4, v5 = path
    if g.deg[v1] != 2 or g.deg[v5] != 2 or any(g.deg[v] != 3 for v in (v2, v3, v4)):
        return None
    w3 = _single(_others(g, v2, (v1, v3)))
    if w3 is None or w3 in path or not g.has_edge(w3, v4) or g.deg[w3] != 3:
        return None
    x = _single(_others(g, w3, (v2, v4)))
    u1 = _single(_others(g, v1, (v2,)))
    u3 = _single(_others(g, v3, (v2, v4)))
    u5 = _single(_others(g, v5, (v4,)))
    q = set(path) | {w3}
    if any(z is None or z in q for z in (x, u1, u3, u5)):
        return None
    if g.deg[x] != 3 or g.deg[u3] != 3 or g.deg[u1] != 3 or g.deg[u5] != 3:
        return None
    return C4BridgeStep(path, u1, u3, u5, w3, x)


def locate_triangle(g: Graph, tri: Sequence[int]) -> Optional[TriangleStep]:
    if len(set(tri)) != 3:
        return None
    a, b, c = tri
    if not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        return None
    vs = tuple(sorted(tri, key=lambda v: (-g.deg[v], v)))
    if g.deg[vs[1]] != 3 or g.deg[vs[2]] < 2:
        return None
    xs: list[Optional[int]] = [None, None, None]
    us: list[Optional[int]] = [None, None, None]
    for i, v in enumerate(vs):
        if g.deg[v] != 3:
            continue
        t = _single(_others(g, v, vs))
        if t is None:
            return None
        if g.deg[t] == 2:
            xs[i] = t
            us[i] = _single(_others(g, t, (v,)))
        elif g.deg[t] == 3:
            us[i] = t
        else:
            return None
    defined_x = [x for x in xs if x is not None]
    defined_u = [u for u in us if u is not None]
    if not _pairwise_distinct(defined_x):
        return None
    for i in range(3):
        for j in range(i + 1, 3):
            # a shared attachment is harmless only when it sees both triangle
            # vertices directly; through a pendant x it could see three equal colors
            if us[i] is not None and us[i] == us[j] and (xs[i] is not None or xs[j] is not None):
                return None
    q = set(vs) | set(defined_x)
    if any(u in q or g.deg[u] != 3 for u in defined_u):
        return None
    if any(us[i] is None for i in range(3) if g.deg[vs[i]] == 3):
        return None
    return TriangleStep(vs, tuple(xs), tuple(us))


def locate_c4_with_deg2(g: Graph, cyc: Sequence[int]) -> Optional[C4Deg2Step]:
    cyc = tuple(cyc)
    if len(cyc) != 4 or not _is_induced_cycle(g, cyc):
        return None
    if g.deg[cyc[0]] != 2 or any(g.deg[v] != 3 for v in cyc[1:]):
        return None
    us = [None]
    for i in (1, 2, 3):
        u = _single(_others(g, cyc[i], (cyc[i - 1], cyc[(i + 1) % 4])))
        if u is None or u in cyc or g.deg[u] != 3:
            return None
        us.append(u)
    if us[2] in (us[1], us[3]):
        return None
    return C4Deg2Step(cyc, tuple(us))


def locate_c4_near_deg2(g: Graph, w: int, cyc: Sequence[int]) -> Optional[C4NearDeg2Step]:
    cyc = tuple(cyc)
    if len(cyc) != 4 or not _is_induced_cycle(g, cyc):
        return None
    if g.deg[w] != 2 or w in cyc or any(g.deg[v] != 3 for v in cyc):
        return None
    if _others(g, cyc[0], (cyc[1], cyc[3])) != [w]:
        return None
    u1 = _single(_others(g, w, (cyc[0],)))
    us = [u1]
    for i in (1, 2, 3):
        us.append(_single(_others(g, cyc[i], (cyc[i - 1], cyc[(i + 1) % 4]))))
    q = set(cyc) | {w}
    if any(u is None or u in q or g.deg[u] != 3 for u in us):
        return None
    if {us[0], us[2]} & {us[1], us[3]}:
        return None
    return C4NearDeg2Step(cyc, w, tuple(us))


def locate_c5_with_deg2(g: Graph, cyc: Sequence[int]) -> Optional[C5Deg2Step]:
    cyc = tuple(cyc)
    if len(cyc) != 5 or not _is_induced_cycle(g, cyc):
        return None
    if g.deg[cyc[0]] != 2 or any(g.deg[v] != 3 for v in cyc[1:]):
        return None
    us = [None]
    for i in range(1, 5):
        u = _single(_others(g, cyc[i], (cyc[i - 1], cyc[(i + 1) % 5])))
        if u is None or u in cyc or g.deg[u] != 3:
            return None
        us.append(u)
    if not _pairwise_distinct(us[1:]):
        return None
    return C5Deg2Step(cyc, tuple(us))


def locate_cubic_tail(g: Graph, path: Sequence[int]) -> Optional[CubicTailStep]:
    path = tuple(path)
    if len(path) != 4 or not _is_induced_path(g, path):
        return None
    v1, v2, v3, v4 = path
    if g.deg[v4] != 2 or any(g.deg[v] != 3 for v in (v1, v2, v3)):
        return None
    ends = _others(g, v1, (v2,))
    if len(ends) != 2:
        return None
    u1, w = ends
    u2 = _single(_others(g, v2, (v1, v3)))
    u3 = _single(_others(g, v3, (v2, v4)))
    u4 = _single(_others(g, v4, (v3,)))
    outs = (u1, w, u2, u3, u4)
    if any(z is None or z in path or g.deg[z] != 3 for z in outs):
        return None
    if not _pairwise_distinct(outs):
        return None
    return CubicTailStep(path, (u1, u2, u3, u4), w)


def locate_k23(g: Graph, h: Sequence[int]) -> Optional[K23Step]:
    """``h`` lists the two degree-3 sides first, then the three shared neighbours."""
    if len(h) != 5 or len(set(h)) != 5:
        return None
    v1, v2 = h[0], h[1]
    cs = list(h[2:])
    if set(g.neighbors(v1)) != set(cs) or set(g.neighbors(v2)) != set(cs):
        return None
    if any(g.deg[c] != 3 for c in cs):
        return None
    hset = set(h)
    third = {}
    for c in cs:
        t = _single(_others(g, c, (v1, v2)))
        if t is None or t in hset or g.deg[t] != 3:
            return None
        third[c] = t
    for i in range(3):
        for j in range(i + 1, 3):
            if third[cs[i]] == third[cs[j]]:
                u1, u2 = cs[i], cs[j]
                u3 = cs[3 - i - j]
                v3 = third[u1]
                x = third[u3]
                y = _single(_others(g, v3, (u1, u2)))
                if y is None or x == v3 or y in hset or g.deg[y] != 3:
                    return None
                return K23Step("a", v1, v2, u1, u2, u3, v3=v3, x=x, y=y)
    u1, u2, u3 = cs
    return K23Step("b", v1, v2, u1, u2, u3, a=third[u1], b=third[u2], c=third[u3])


def locate_good_cycle(g: Graph, cyc: Sequence[int]) -> Optional[GoodCycleStep]:
    cyc = tuple(cyc)
    if not _is_induced_cycle(g, cyc) or any(g.deg[v] != 3 for v in cyc):
        return None
    k = len(cyc)
    us = []
    for i, v in enumerate(cyc):
        u = _single(_others(g, v, (cyc[i - 1], cyc[(i + 1) % k])))
        if u is None or g.deg[u] != 3:
            return None
        us.append(u)
    if not _pairwise_distinct(us):
        return None
    return GoodCycleStep(cyc, tuple(us))


# ---------------------------------------------------------------------------
# extension


class _Ctx:
    def __init__(self, step: Step, g: Graph, L: ListAssignment, f: list, trace: Trace):
        self.step = step
        self.g = g
        self.L = L
        self.f = f
        self.trace = trace
        self.qset = set(step.q)
        for v in step.q:
            if f[v] is not None:
                raise ExtensionError(f"vertex {v} of Q is already colored", trace.lines)

    def col(self, v: Optional[int]) -> Optional[int]:
        return None if v is None else self.f[v]

    def cols(self, vs: Iterable[Optional[int]]) -> list[Optional[int]]:
        return [self.col(v) for v in vs]

    def nbr_colors(self, u: int, exclude: Iterable[int] = ()) -> list[int]:
        """Colors of the colored neighbours of ``u`` other than ``exclude``."""
        ex = set(exclude)
        f = self.f
        return [f[w] for w in self.g.neighbors(u) if w not in ex and f[w] is not None]

    def some_nbr(self, u: int, exclude: int) -> Optional[int]:
        """Color of one colored neighbour of ``u`` other than ``exclude``, preferring G-Q."""
        f = self.f
        inside = None
        for w in self.g.neighbors(u):
            if w == exclude or f[w] is None:
                continue
            if w not in self.qset:
                return f[w]
            if inside is None:
                inside = f[w]
        return inside

    def allowed(self, v: int, forbidden: Iterable[Optional[int]]) -> tuple[int, ...]:
        return restricted(self.L[v], forbidden)

    def set(self, v: int, c: int, forbidden: Iterable[Optional[int]] = ()) -> int:
        self.f[v] = c
        self.trace.chose(self.step.kind, v, {x for x in forbidden if x is not None}, c)
        return c

    def pick(self, v: int, forbidden: Iterable[Optional[int]]) -> int:
        forbidden = [x for x in forbidden if x is not None]
        options = restricted(self.L[v], forbidden)
        if not options:
            raise ExtensionError(
                f"{self.step.kind}: no color left for vertex {v}; "
                f"list={self.L[v]} forbidden={sorted(set(forbidden))}",
                self.trace.lines,
            )
        return self.set(v, options[0], forbidden)

    def pick_from(self, v: int, options: Sequence[int], extra: Iterable[Optional[int]] = ()) -> int:
        extra = [x for x in extra if x is not None]
        ok = [c for c in options if c not in extra]
        if not ok:
            raise ExtensionError(
                f"{self.step.kind}: no color left for vertex {v}; options={list(options)} "
                f"forbidden={sorted(set(extra))}",
                self.trace.lines,
            )
        return self.set(v, ok[0], extra)


def extend_pendant(step: PendantStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    trace.hit("pendant:leaf")
    cx.pick(step.v, [f[step.u]] + cx.nbr_colors(step.u, (step.v,)))
    return f


def extend_deg2_path(step: Deg2PathStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    p, u1, uk = step.path, step.u1, step.uk
    if len(p) == 2:
        # v2's neighbours are v1 and u_k, so v1 must also avoid f(u_k)
        trace.hit("deg2-path:short")
        cx.pick(p[0], (f[u1], f[uk], cx.some_nbr(u1, p[0])))
        cx.pick(p[1], (f[u1], f[p[0]], f[uk]))
        return f
    trace.hit("deg2-path:long")
    cx.pick(p[0], [f[u1]] + cx.nbr_colors(u1, (p[0],)))
    chain = [u1] + list(p)
    for i in range(2, len(chain)):
        cx.pick(chain[i], (f[chain[i - 2]], f[chain[i - 1]], f[uk]))
    return f


def extend_special_path(
    step: SpecialPathStep, g: Graph, L: ListAssignment, f: list, trace: Trace
) -> list:
    cx = _Ctx(step, g, L, f, trace)
    p, xs = step.path, step.xs
    k = len(p)
    fu = lambda i: f[step.us[i - 1]]  # noqa: E731  (1-based like v_i)
    v = lambda i: p[i - 1]  # noqa: E731
    if k == 3:
        # the middle vertex first: both ends have degree 2 and see it
        trace.hit("special-path:three")
        cx.pick(v(2), (fu(1), fu(2), fu(3)))
        cx.pick(v(1), (fu(1), f[v(2)], cx.some_nbr(step.us[0], v(1))))
        cx.pick(v(3), (fu(3), f[v(2)], f[v(1)]))
    else:
        cx.pick(v(1), [fu(1)] + cx.nbr_colors(step.us[0], (v(1),)))
        for i in range(2, k - 2):
            cx.pick(v(i), (f[v(i - 1)], fu(i - 1), fu(i)))
        m = k - 2
        options = cx.allowed(v(m), (f[v(m - 1)], fu(m - 1), fu(m)))
        if not options:
            raise ExtensionError(f"special-path: no color left for vertex {v(m)}", trace.lines)
        ahead = L[v(m + 1)]

        def room(c: int) -> int:
            return len(restricted(ahead, (c, fu(m), fu(m + 1), fu(k))))

        best = max(options, key=lambda c: (room(c), -c))
        cx.set(v(m), best, (f[v(m - 1)], fu(m - 1), fu(m)))
        trio = (best, fu(k - 1), fu(k))
        if _pairwise_distinct(trio):
            trace.hit("special-path:distinct")
            # Matching v_{k-3} would leave v_{k-2} with three equal neighbours.
            # With the room maximised that clash is impossible once no other
            # color is free, so the preference only matters when it is free.
            options = cx.allowed(v(k - 1), trio)
            preferred = [c for c in options if c != fu(k - 2)]
            if preferred:
                cx.set(v(k - 1), preferred[0], trio + (fu(k - 2),))
            else:
                cx.pick(v(k - 1), trio)
        else:
            trace.hit("special-path:repeat")
            cx.pick(v(k - 1), (best, fu(k - 2), fu(k - 1), fu(k)))
        cx.pick(v(k), (f[v(k - 2)], f[v(k - 1)], fu(k)))
    for i in range(2, k):
        x = xs[i - 1]
        if x is not None:
            trace.hit("special-path:pendant-x")
            cx.pick(x, (f[v(i - 1)], f[v(i)], fu(i)))
    return f


def extend_eyeglass(step: EyeglassStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3, v4 = step.path
    a, b = f[step.u1], f[step.u4]
    trace.hit("eyeglass")
    cx.pick(v2, (a, b))
    cx.pick(v3, (a, b, f[v2]))
    cx.pick(v1, (a, f[v2], f[v3]))
    cx.pick(v4, (b, f[v2], f[v3]))
    return f


def extend_c4_bridge(step: C4BridgeStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3, v4, v5 = step.path
    u1, u3, u5, w3, x = step.u1, step.u3, step.u5, step.w3, step.x
    A = cx.allowed(v2, (f[u1], f[u3]))
    B = cx.allowed(v4, (f[u5], f[x]))
    shared = [c for c in A if c in B]

    def end1():
        cx.pick(v1, (f[u1], f[v2], cx.some_nbr(u1, v1)))

    def end5():
        cx.pick(v5, (f[v4], f[u5], cx.some_nbr(u5, v5)))

    if shared:
        trace.hit("c4-bridge:shared")
        cx.set(v2, shared[0], (f[u1], f[u3]))
        cx.set(v4, shared[0], (f[u5], f[x]))
        end1()
        end5()
        cx.pick(v3, (f[v2], f[u3], cx.some_nbr(u3, v3)))
        cx.pick(w3, (f[v2], f[v3], f[x]))
        return f
    s = cx.pick(v3, (f[u3], cx.some_nbr(u3, v3)))
    if s not in B:
        trace.hit("c4-bridge:split")
        cx.pick_from(v2, A, (s,))
        end1()
        cx.pick(w3, (f[v2], s, f[x]))
        cx.pick_from(v4, B, (f[w3],))
        end5()
    else:
        # s lies in B, hence not in A: the same recipe read from the v5 end
        trace.hit("c4-bridge:split-mirror")
        cx.pick_from(v4, B, (s,))
        end5()
        cx.pick(w3, (f[v4], s, f[x]))
        cx.pick_from(v2, A, (f[w3],))
        end1()
    return f


def extend_triangle(step: TriangleStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3 = step.vs
    c1, c2, c3 = cx.cols(step.us)
    trace.hit("triangle:plain")
    cx.pick(v1, (c1, c2, c3))
    cx.pick(v2, (f[v1], c2, c3))
    cx.pick(v3, (f[v1], f[v2], c3))
    for v, x, u in zip(step.vs, step.xs, step.us):
        if x is not None:
            trace.hit("triangle:pendant-x")
            cx.pick(x, (f[v], f[u]))
    return f


def extend_c4_with_deg2(step: C4Deg2Step, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3, v4 = step.vs
    _, u2, u3, u4 = step.us
    trace.hit("c4-deg2")
    cx.pick(v3, (f[u2], f[u3], f[u4]))
    cx.pick(v2, (f[u2], f[v3], cx.some_nbr(u2, v2)))
    cx.pick(v4, (f[v2], f[v3], f[u4]))
    cx.pick(v1, (f[v2], f[v3], f[v4]))
    return f


def extend_c4_near_deg2(
    step: C4NearDeg2Step, g: Graph, L: ListAssignment, f: list, trace: Trace
) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3, v4 = step.vs
    u1, u2, u3, u4 = step.us
    w = step.w
    trace.hit("c4-near-deg2")
    cx.pick(v3, (f[u2], f[u3], f[u4]))
    cx.pick(v2, (f[u2], f[v3], cx.some_nbr(u2, v2)))
    cx.pick(v4, (f[v2], f[v3], f[u4]))
    cx.pick(v1, (f[u1], f[v2], f[v4]))
    cx.pick(w, (f[u1], f[v1], cx.some_nbr(u1, w)))
    return f


def extend_c5_with_deg2(step: C5Deg2Step, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3, v4, v5 = step.vs
    _, u2, u3, u4, u5 = step.us
    trace.hit("c5-deg2")
    cx.pick(v3, (f[u2], f[u3], f[u4]))
    cx.pick(v4, (f[v3], f[u4], f[u5]))
    cx.pick(v2, (f[u2], f[v3], f[v4]))
    cx.pick(v5, (f[v2], f[v4], f[u5]))
    cx.pick(v1, (f[v2], f[v5]))
    return f


def extend_cubic_tail(step: CubicTailStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, v3, v4 = step.vs
    c1, c2, c3, c4 = cx.cols(step.us)
    cw = f[step.w]
    if c1 != cw:
        trace.hit("cubic-tail:split")
        cx.pick(v1, (c1, cw, c2))
        cx.pick(v2, (f[v1], c2, c3))
        cx.pick(v3, (f[v2], c3, c4))
    else:
        cx.pick(v1, [cw] + cx.nbr_colors(step.w, (v1,)))
        if f[v1] == c2:
            trace.hit("cubic-tail:v1-u2")
            cx.pick(v3, (c2, c3, c4))
            cx.pick(v2, (c1, c2, f[v3]))
        else:
            cx.pick(v2, (c1, f[v1], c2))
            if f[v2] == c3:
                trace.hit("cubic-tail:v2-u3")
                cx.pick(v3, (c2, f[v2], c4))
            else:
                trace.hit("cubic-tail:v2-not-u3")
                cx.pick(v3, (f[v2], c3, c4))
    cx.pick(v4, (c3, f[v3], c4))
    return f


def extend_k23(step: K23Step, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    v1, v2, u1, u2, u3 = step.v1, step.v2, step.u1, step.u2, step.u3
    if step.subcase == "a":
        v3, x, y = step.v3, step.x, step.y
        cx.pick(u3, [f[x]] + cx.nbr_colors(x, (u3,)))
        cx.pick(v3, [f[y]] + cx.nbr_colors(y, (v3,)))
        cx.pick(u2, (f[u3], f[v3], f[y]))
        cx.pick(v2, (f[u2], f[u3], f[x]))
        cx.pick(v1, (f[u2], f[v2], f[u3]))
        trio = (f[v1], f[v2], f[v3])
        if _pairwise_distinct(trio):
            trace.hit("k23:a-distinct")
            cx.pick(u1, trio)
        else:
            trace.hit("k23:a-repeat")
            cx.pick(u1, trio + (f[u2],))
        return f
    a, b, c = step.a, step.b, step.c
    cx.pick(u1, [f[a]] + cx.nbr_colors(a, (u1,)))
    cx.pick(u2, (f[u1], f[b]))
    cx.pick(v1, (f[u1], f[u2], f[c]))
    cx.pick(v2, (f[v1], f[u1], f[u2]))
    options = cx.allowed(u3, (f[c], f[v1], f[v2]))
    preferred = [col for col in options if col != f[u2]]
    if preferred:
        trace.hit("k23:b-avoid")
        cx.set(u3, preferred[0], (f[c], f[v1], f[v2], f[u2]))
    else:
        trace.hit("k23:b-forced")
        cx.pick(u3, (f[c], f[v1], f[v2]))
    return f


def extend_good_cycle(step: GoodCycleStep, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    cx = _Ctx(step, g, L, f, trace)
    vs, us = step.cycle, step.us
    k = len(vs)
    fu = [f[u] for u in us]
    plus = [restricted(L[v], (fu[i], fu[(i + 1) % k])) for i, v in enumerate(vs)]
    minus = [restricted(L[v], (fu[i], fu[i - 1])) for i, v in enumerate(vs)]
    C = CycleInstance(vs)
    for tag, lists in (("plus", plus), ("minus", minus)):
        cols = color_cycle_linear(C, lists)
        if cols is not None:
            trace.hit("good-cycle:" + tag)
            for v, c, lst in zip(vs, cols, lists):
                cx.set(v, c, set(L[v]) - set(lst))
            return f

    # Every derived list is the same pair and the attachments alternate between
    # two colors, so the cycle is even.
    pair = plus[0]

    def attempt(cols: Sequence[int]) -> bool:
        for v, c in zip(vs, cols):
            f[v] = c
        if local_violation(g, L, f, vs, walk_limit=None) is None:
            return True
        for v in vs:
            f[v] = None
        return False

    def recolor(i: int, parity: int) -> Optional[list[int]]:
        # 2-color the cycle, then move v_i off the pair onto its spare color
        cols = [pair[(j + parity) % 2] for j in range(k)]
        spare = restricted(L[vs[i]], (fu[i], cols[i - 1], cols[i]))
        if not spare:
            return None
        cols[i] = spare[0]
        return cols

    def explicit() -> list[list[int]]:
        out = []
        for one, two in ((pair[0], pair[1]), (pair[1], pair[0])):
            cols = [fu[1], fu[0]] + [one if j % 2 == 0 else two for j in range(2, k)]
            if all(c in L[v] for v, c in zip(vs, cols)):
                out.append(cols)
        return out

    # If every recoloring fails, the explicit coloring works; so trying v_0,
    # then the explicit coloring, then the other vertices always succeeds.
    ladder = [("recolor", recolor(0, p)) for p in (0, 1)]
    ladder += [("explicit", cols) for cols in explicit()]
    ladder += [("recolor", recolor(i, p)) for i in range(1, k) for p in (0, 1)]
    for tag, cols in ladder:
        if cols is not None and attempt(cols):
            trace.hit("good-cycle:" + tag)
            for v, c in zip(vs, cols):
                trace.chose(step.kind, v, (), c)
            return f
    raise ExtensionError("good-cycle: every candidate coloring failed", trace.lines)


EXTENDERS = {
    PendantStep: extend_pendant,
    Deg2PathStep: extend_deg2_path,
    SpecialPathStep: extend_special_path,
    EyeglassStep: extend_eyeglass,
    C4BridgeStep: extend_c4_bridge,
    TriangleStep: extend_triangle,
    C4Deg2Step: extend_c4_with_deg2,
    C4NearDeg2Step: extend_c4_near_deg2,
    C5Deg2Step: extend_c5_with_deg2,
    CubicTailStep: extend_cubic_tail,
    K23Step: extend_k23,
    GoodCycleStep: extend_good_cycle,
}


def extend(step: Step, g: Graph, L: ListAssignment, f: list, trace: Trace) -> list:
    """Color ``step.q`` with the recipe matching the step's type."""
    return EXTENDERS[type(step)](step, g, L, f, trace)
