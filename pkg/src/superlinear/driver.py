"""The main coloring algorithm: component dispatch, the cubic structure finder,
and the worklist-driven reduction loop.

Reductions are recorded on an explicit stack.  Deleting a configuration Q pushes
an entry; unwinding revives Q and extends the coloring of the rest onto it, so
at extension time the alive vertices are exactly the graph the configuration
was found in.  Components that are colored outright (small components by
exhaustive search, long cycles, freshly isolated 5-cycles) are colored when
they are deleted and simply revived on the way back.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .coloring import ListAssignment, find_violation, local_violation
from .cyclecolor import (
    CycleInstance,
    color_c5_relaxed,
    color_c5_superlinear,
    color_cycle_component,
)
from .errors import ContractError, ExtensionError
from .extend import (
    Deg2PathStep,
    Step,
    Trace,
    extend,
    locate_c4_bridge,
    locate_c4_near_deg2,
    locate_c4_with_deg2,
    locate_c5_with_deg2,
    locate_cubic_tail,
    locate_deg2_path,
    locate_eyeglass,
    locate_good_cycle,
    locate_k23,
    locate_pendant,
    locate_special_path,
    locate_triangle,
)
from .graph import (
    Graph,
    VertexSet,
    components,
    find_good_cycle,
    find_triangle_or_k23,
    induced,
    is_component_c5,
    is_component_k33,
)
from .oracle import solve_superlinear

SMALL = 10  # components up to this order go to exhaustive search
LOCAL_RADIUS = 6  # located configurations lie within this distance of the popped vertex
PAIR_RADIUS = 4

# Petersen graph with the labeling used by the explicit coloring: u_i is
# adjacent to v_i, u1..u5 is a cycle and v1 v3 v5 v2 v4 is a cycle.
PETERSEN_COLORS = {
    "u1": 1, "u2": 2, "u3": 1, "u4": 2, "u5": 3,
    "v1": 3, "v2": 3, "v3": 4, "v4": 4, "v5": 1,
}  # fmt: skip


def petersen_graph() -> tuple[Graph, dict[str, int]]:
    """The Petersen graph and the vertex id of each label ``u1..u5, v1..v5``."""
    names = [f"u{i}" for i in range(1, 6)] + [f"v{i}" for i in range(1, 6)]
    ids = {name: i for i, name in enumerate(names)}
    edges = []
    for i in range(1, 6):
        edges.append((ids[f"u{i}"], ids[f"u{i % 5 + 1}"]))
        edges.append((ids[f"u{i}"], ids[f"v{i}"]))
    inner = ["v1", "v3", "v5", "v2", "v4"]
    for a, b in zip(inner, inner[1:] + inner[:1]):
        edges.append((ids[a], ids[b]))
    return Graph(10, edges), ids


@dataclass(frozen=True)
class Certificate:
    """Why a small component has no superlinear coloring."""

    component: tuple[int, ...]
    reason: str

    def __str__(self) -> str:
        return f"infeasible component={' '.join(map(str, self.component))} reason={self.reason}"


@dataclass
class RunReport:
    n: int = 0
    components: int = 0
    colored_components: int = 0
    infeasible_components: int = 0
    steps: int = 0
    work: int = 0
    peak_worklist: int = 0
    wall_time: float = 0.0
    fallbacks: int = 0
    petersen_fast_path: int = 0
    max_radius: int = 0
    branches: Counter = field(default_factory=Counter)

    def to_text(self) -> str:
        """Line-oriented ``key=value`` form; branch counters as ``branch.<tag>=<count>``."""
        lines = [
            f"n={self.n}",
            f"components={self.components}",
            f"colored_components={self.colored_components}",
            f"infeasible_components={self.infeasible_components}",
            f"steps={self.steps}",
            f"work={self.work}",
            f"peak_worklist={self.peak_worklist}",
            f"wall_time={self.wall_time:.6f}",
            f"fallbacks={self.fallbacks}",
            f"petersen_fast_path={self.petersen_fast_path}",
            f"max_radius={self.max_radius}",
        ]
        lines += [f"branch.{k}={v}" for k, v in sorted(self.branches.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunReport":
        r = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, value = line.partition("=")
            if key.startswith("branch."):
                r.branches[key[len("branch."):]] = int(value)
            elif key == "wall_time":
                r.wall_time = float(value)
            else:
                setattr(r, key, int(value))
        return r


@dataclass
class ColorResult:
    """``coloring`` leaves the vertices of infeasible components as ``None``."""

    coloring: list
    certificates: list[Certificate]
    report: RunReport

    @property
    def ok(self) -> bool:
        return not self.certificates


# ---------------------------------------------------------------------------


def _is_petersen(g: Graph, comp: Sequence[int]) -> bool:
    if len(comp) != 10 or any(g.deg[v] != 3 for v in comp):
        return False
    # girth 5: no two neighbours of a vertex are adjacent or share another neighbour
    for v in comp:
        nb = g.neighbors(v)
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = nb[i], nb[j]
                if g.has_edge(a, b):
                    return False
                if (set(g.neighbors(a)) & set(g.neighbors(b))) - {v}:
                    return False
    return True


def _petersen_labels(g: Graph, comp: Sequence[int]) -> dict[str, int]:
    """Match the labeling of :data:`PETERSEN_COLORS` onto a Petersen component."""
    start = min(comp)
    a, b, _ = g.neighbors(start)
    # the unique 5-cycle through the path a-start-b
    for p in g.neighbors(a):
        if p == start:
            continue
        for q in g.neighbors(p):
            if q != a and g.has_edge(q, b) and q != start:
                outer = [start, a, p, q, b]
                break
        else:
            continue
        break
    labels = {f"u{i + 1}": outer[i] for i in range(5)}
    for i in range(5):
        u = outer[i]
        spoke = next(w for w in g.neighbors(u) if w not in outer)
        labels[f"v{i + 1}"] = spoke
    return labels


def petersen_coloring(g: Graph, L: ListAssignment, comp: Sequence[int]) -> Optional[dict[int, int]]:
    """The explicit coloring of a Petersen component with identical lists."""
    if not _is_petersen(g, comp) or not L.all_identical(comp):
        return None
    palette = L[comp[0]]
    labels = _petersen_labels(g, comp)
    return {labels[name]: palette[c - 1] for name, c in PETERSEN_COLORS.items()}


# ---------------------------------------------------------------------------


class _Run:
    def __init__(self, g: Graph, L: ListAssignment, trace: Trace, check: bool, fallback: bool):
        self.g = g
        self.L = L
        self.f: list = [None] * g.n
        self.trace = trace
        self.check = check
        self.fallback = fallback
        self.report = RunReport(n=g.order())
        self.stack: list[tuple[str, object]] = []
        self.low: list[int] = []
        self.adjacent: list[int] = []
        self.pairs: dict[int, list[tuple[int, int]]] = {2: [], 3: [], 4: []}
        self.singles: list[int] = []
        self.work = 0

    # -- worklists ---------------------------------------------------------

    def enqueue(self, v: int) -> None:
        g = self.g
        if not g.alive[v]:
            return
        d = g.deg[v]
        if d <= 1:
            self.low.append(v)
        elif d == 2:
            self.singles.append(v)
            if any(g.deg[w] == 2 for w in g.neighbors(v)):
                self.adjacent.append(v)
            for w, dist in g.distances_from(v, PAIR_RADIUS).items():
                if dist >= 2 and g.deg[w] == 2:
                    self.pairs[dist].append((v, w))
        size = len(self.low) + len(self.adjacent) + len(self.singles) + sum(
            len(p) for p in self.pairs.values()
        )
        if size > self.report.peak_worklist:
            self.report.peak_worklist = size

    def enqueue_all(self, vs) -> None:
        for v in sorted(vs):
            self.enqueue(v)

    def _next(self):
        g = self.g
        while self.low:
            v = self.low.pop()
            self.work += 1
            if g.alive[v] and g.deg[v] <= 1:
                return "low", v
        while self.adjacent:
            v = self.adjacent.pop()
            self.work += 1
            if g.alive[v] and g.deg[v] == 2 and any(g.deg[w] == 2 for w in g.neighbors(v)):
                return "adjacent", v
        for t in (2, 3, 4):
            bucket = self.pairs[t]
            while bucket:
                v, w = bucket.pop()
                self.work += 1
                if not (g.alive[v] and g.alive[w] and g.deg[v] == 2 and g.deg[w] == 2):
                    continue
                d = g.distances_from(v, PAIR_RADIUS).get(w)
                if d == t:
                    return "pair", (v, w, t)
                if d is not None and d > t:
                    # deletions only lengthen distances
                    self.pairs[d].append((v, w))
        while self.singles:
            v = self.singles.pop()
            self.work += 1
            if g.alive[v] and g.deg[v] == 2:
                return "single", v
        return None

    # -- deletion primitives -----------------------------------------------

    def _c5_components(self, boundary: Sequence[int]) -> list[tuple[int, ...]]:
        g = self.g
        found = []
        seen = set()
        for b in boundary:
            if b in seen or not g.alive[b] or g.deg[b] != 2:
                continue
            comp = g.bfs_limited(b, 6)
            if len(comp) == 5 and all(g.deg[x] == 2 for x in comp):
                seen.update(comp)
                found.append(_cycle_order(g, comp))
        return found

    def _color_small(self, comp: Sequence[int]) -> bool:
        """Color a whole small component in place; ``False`` if it has no coloring."""
        g, L = self.g, self.L
        fast = petersen_coloring(g, L, comp)
        if fast is not None:
            self.report.petersen_fast_path += 1
            for v, c in fast.items():
                self.f[v] = c
            return True
        sub, order = induced(g, comp)
        local = ListAssignment([L[v] for v in order], L.universe)
        sol = solve_superlinear(sub, local)
        if sol is None:
            return False
        for i, v in enumerate(order):
            self.f[v] = sol[i]
        return True

    def _delete_colored(self, vs: Sequence[int]) -> None:
        """Delete a whole component whose colors are already set."""
        self.g.remove(vs)
        self.stack.append(("colored", tuple(vs)))

    def admissible(self, step: Step) -> bool:
        """Whether deleting ``step.q`` isolates only 5-cycles the step can absorb."""
        g, L = self.g, self.L
        boundary = g.remove(step.q)
        try:
            for cyc in self._c5_components(boundary):
                if L.all_identical(cyc) and not any(a in cyc for a in step.anchors):
                    return False
            return True
        finally:
            g.revive(step.q)

    def try_commit(self, step: Step, origin: Optional[int]) -> bool:
        """Delete ``step.q`` unless that isolates a 5-cycle the step cannot absorb."""
        g, L = self.g, self.L
        q = step.q
        boundary = g.remove(q)
        c5s = self._c5_components(boundary)
        plan = []
        for cyc in c5s:
            if L.all_identical(cyc):
                anchor = next((a for a in step.anchors if a in cyc), None)
                if anchor is None:
                    g.revive(q)
                    return False
                plan.append((cyc, anchor))
            else:
                plan.append((cyc, None))
        if origin is not None and self.check:
            self._check_radius(origin, q)
        self.stack.append(("extend", step))
        for cyc, anchor in plan:
            C = CycleInstance(cyc)
            if anchor is None:
                cols = color_c5_superlinear(C, L)
                assert cols is not None, "a 5-cycle with two distinct lists is colorable"
            else:
                cols = color_c5_relaxed(C, L, anchor)
            for v, c in zip(cyc, cols):
                self.f[v] = c
            self._delete_colored(cyc)
        self.report.steps += 1
        self.enqueue_all(b for b in boundary if g.alive[b])
        return True

    def _check_radius(self, origin: int, q: Sequence[int]) -> None:
        g = self.g
        g.revive(q)
        dist = g.distances_from(origin, 2 * LOCAL_RADIUS)
        g.remove(q)
        far = max(dist.get(x, 10**9) for x in q)
        if far > LOCAL_RADIUS:
            raise ExtensionError(f"configuration {q} leaves the radius-{LOCAL_RADIUS} ball of {origin}")
        self.report.max_radius = max(self.report.max_radius, far)

    # -- handlers ------------------------------------------------------------

    def handle_small(self, comp: Sequence[int]) -> None:
        if not self._color_small(comp):
            raise ExtensionError(f"component {sorted(comp)} reached during reduction is uncolorable")
        self._delete_colored(comp)

    def handle_low(self, v: int) -> None:
        step = locate_pendant(self.g, v)
        if not self.try_commit(step, None):
            raise ExtensionError(f"pendant deletion at {v} was rejected")

    def handle_adjacent(self, v: int) -> None:
        g = self.g
        a, b = g.neighbors(v)
        left = self._walk_deg2(v, a)
        if left and left[-1] == v:
            cyc = [v] + left[:-1]
            C = CycleInstance(cyc)
            cols = color_cycle_component(C, self.L)
            for x, c in zip(cyc, cols):
                self.f[x] = c
            self.trace.hit("cycle-component")
            self._delete_colored(cyc)
            return
        right = self._walk_deg2(v, b)
        path = left[::-1] + [v] + right
        step = locate_deg2_path(g, path)
        if step is None:
            raise ExtensionError(f"degree-2 path {path} failed validation")
        if self._commit_deg2_path(step):
            return
        raise ExtensionError(f"degree-2 path {path} could not be deleted")

    def _walk_deg2(self, start: int, first: int) -> list[int]:
        g = self.g
        out = []
        prev, cur = start, first
        while g.deg[cur] == 2:
            out.append(cur)
            if cur == start:
                break
            a, b = g.neighbors(cur)
            prev, cur = cur, (b if a == prev else a)
        return out

    def _commit_deg2_path(self, step: Deg2PathStep) -> bool:
        g, L = self.g, self.L
        boundary = g.remove(step.q)
        bad = [c for c in self._c5_components(boundary) if L.all_identical(c)]
        g.revive(step.q)
        at_u1 = [c for c in bad if step.u1 in c]
        at_uk = [c for c in bad if step.uk in c and step.u1 not in c]
        if at_u1 and at_uk:
            # a bad 5-cycle at each end: take the four degree-2 vertices of the
            # one at u1 instead, which leaves u1 with a single neighbour
            cyc = at_u1[0]
            i = cyc.index(step.u1)
            inner = [cyc[(i + s) % 5] for s in range(1, 5)]
            alt = locate_deg2_path(g, inner)
            if alt is None:
                raise ExtensionError(f"5-cycle path {inner} failed validation")
            step = alt
        elif at_uk:
            step = Deg2PathStep(step.path[::-1], step.uk, step.u1)
        return self.try_commit(step, None)

    def handle_pair(self, v: int, w: int, t: int) -> bool:
        for step in self._pair_candidates(v, w, t):
            if self.try_commit(step, v):
                self._requeue(v, step)
                self._requeue(w, step)
                return True
        return False

    def handle_single(self, v: int) -> bool:
        for step in self._single_candidates(v):
            if self.try_commit(step, v):
                self._requeue(v, step)
                return True
        return False

    def _requeue(self, v: int, step: Step) -> None:
        if v not in step.q and self.g.alive[v]:
            self.enqueue(v)

    def _pair_candidates(self, v: int, w: int, t: int) -> Iterator[Step]:
        g = self.g
        paths = []
        if t == 2:
            for c in g.neighbors(v):
                if g.has_edge(c, w):
                    paths.append((v, c, w))
        elif t == 3:
            for a in g.neighbors(v):
                for b in g.neighbors(a):
                    if b != v and g.has_edge(b, w):
                        paths.append((v, a, b, w))
        else:
            for a in g.neighbors(v):
                for b in g.neighbors(a):
                    if b == v:
                        continue
                    for c in g.neighbors(b):
                        if c != a and c != v and g.has_edge(c, w):
                            paths.append((v, a, b, c, w))
        for p in paths:
            for oriented in (p, p[::-1]):
                step = locate_special_path(g, oriented)
                if step is not None:
                    yield step
            if t == 3:
                for oriented in (p, p[::-1]):
                    step = locate_eyeglass(g, oriented)
                    if step is not None:
                        yield step
            if t == 4:
                for oriented in (p, p[::-1]):
                    step = locate_c4_bridge(g, oriented)
                    if step is not None:
                        yield step

    def _single_candidates(self, v: int) -> Iterator[Step]:
        g = self.g
        seen = set()
        for x in g.distances_from(v, 4):
            nb = g.neighbors(x)
            for i in range(len(nb)):
                for j in range(i + 1, len(nb)):
                    if g.has_edge(nb[i], nb[j]):
                        key = frozenset((x, nb[i], nb[j]))
                        if key in seen:
                            continue
                        seen.add(key)
                        step = locate_triangle(g, (x, nb[i], nb[j]))
                        if step is not None:
                            yield step
        a, b = g.neighbors(v)
        for c in g.neighbors(a):
            if c != v and g.has_edge(c, b):
                step = locate_c4_with_deg2(g, (v, a, c, b))
                if step is not None:
                    yield step
        for x in (a, b):
            rest = [y for y in g.neighbors(x) if y != v]
            if len(rest) != 2:
                continue
            p, q = rest
            for c in g.neighbors(p):
                if c != x and c != v and g.has_edge(c, q):
                    step = locate_c4_near_deg2(g, v, (x, p, c, q))
                    if step is not None:
                        yield step
        for p in g.neighbors(a):
            if p == v or p == b:
                continue
            for q in g.neighbors(p):
                if q != a and q != v and g.has_edge(q, b):
                    step = locate_c5_with_deg2(g, (v, a, p, q, b))
                    if step is not None:
                        yield step
        for v3 in g.neighbors(v):
            for v2 in g.neighbors(v3):
                if v2 == v:
                    continue
                for v1 in g.neighbors(v2):
                    if v1 == v3 or v1 == v:
                        continue
                    step = locate_cubic_tail(g, (v1, v2, v3, v))
                    if step is not None:
                        yield step

    # -- cubic components ----------------------------------------------------

    def handle_cubic(self, comp: Sequence[int]) -> None:
        g = self.g
        step = cubic_step(g, comp)
        if not self.try_commit(step, None):
            raise ExtensionError(f"cubic configuration {step.q} was rejected")

    # -- main loop -----------------------------------------------------------

    def reduce(self) -> None:
        g = self.g
        while True:
            item = self._next()
            if item is None:
                break
            kind, data = item
            v = data[0] if kind == "pair" else data
            comp = g.bfs_limited(v, SMALL + 1)
            if len(comp) <= SMALL:
                self.handle_small(comp)
                continue
            if kind == "low":
                self.handle_low(v)
            elif kind == "adjacent":
                self.handle_adjacent(v)
            elif kind == "pair":
                self.handle_pair(*data)
            else:
                self.handle_single(v)
        left = g.vertices()
        if left:
            self._stuck(left)

    def _stuck(self, left: list[int]) -> None:
        if not self.fallback:
            raise ExtensionError(f"no reducible configuration found; {len(left)} vertices remain")
        self.report.fallbacks += 1
        for comp in components(self.g):
            if len(comp) > 12 or not self._color_small(comp):
                raise ExtensionError(f"fallback cannot color component {list(comp)}")
            self._delete_colored(comp)

    def unwind(self) -> None:
        g, L, f = self.g, self.L, self.f
        while self.stack:
            kind, item = self.stack.pop()
            if kind == "colored":
                g.revive(item)
                continue
            step = item
            g.revive(step.q)
            extend(step, g, L, f, self.trace)
            if self.check:
                bad = local_violation(g, L, f, step.q, walk_limit=None)
                if bad is not None:
                    raise ExtensionError(
                        f"{step.kind} extension at {step.q} produced {bad}", self.trace.lines
                    )


def _cycle_order(g: Graph, comp: Sequence[int]) -> tuple[int, ...]:
    start = min(comp)
    out = [start]
    prev, cur = None, start
    while True:
        a, b = g.neighbors(cur)
        nxt = a if a != prev else b
        if nxt == start:
            return tuple(out)
        out.append(nxt)
        prev, cur = cur, nxt


def subroutine2(g: Graph, comp: Sequence[int]) -> VertexSet:
    """A triangle, an induced K_{2,3}, or a good cycle in a cubic component."""
    if len(comp) < SMALL + 1 or any(g.deg[v] != 3 for v in comp):
        raise ContractError("subroutine2 needs a cubic component of order at least 11")
    h = find_triangle_or_k23(g, comp)
    if h is not None:
        return h
    return find_good_cycle(g, within=comp)


def find_reduction(g: Graph, L: ListAssignment, v: int) -> Step:
    """The configuration the reduction deletes around the degree-2 vertex ``v``.

    Another degree-2 vertex within distance 4 is tried first (nearest first),
    then triangles, 4-cycles and 5-cycles near ``v``, then a cubic tail.
    Requires that no vertex of degree at most 1 and no two adjacent degree-2
    vertices lie within distance 12 of ``v``.
    """
    g.check_vertex(v)
    if g.deg[v] != 2:
        raise ContractError(f"vertex {v} has degree {g.deg[v]}, not 2")
    near = g.distances_from(v, 2 * LOCAL_RADIUS)
    if len(g.bfs_limited(v, SMALL + 1)) <= SMALL:
        raise ContractError(f"the component of {v} has at most {SMALL} vertices")
    for x in near:
        if g.deg[x] <= 1:
            raise ContractError(f"vertex {x} of degree {g.deg[x]} lies near {v}")
        if g.deg[x] == 2 and any(g.deg[y] == 2 for y in g.neighbors(x)):
            raise ContractError(f"adjacent degree-2 vertices near {v} (at {x})")
    run = _Run(g, L, Trace(), False, False)
    others = sorted((d, w) for w, d in near.items() if 2 <= d <= PAIR_RADIUS and g.deg[w] == 2)
    for t, w in others:
        for step in run._pair_candidates(v, w, t):
            if run.admissible(step):
                return step
    for step in run._single_candidates(v):
        if run.admissible(step):
            return step
    raise ExtensionError(f"no reducible configuration around {v}")


def cubic_step(g: Graph, comp: Sequence[int]) -> Step:
    """The first reduction applied to a cubic component."""
    h = subroutine2(g, comp)
    if len(h) == 3:
        step = locate_triangle(g, h)
    elif len(h) == 5 and not g.has_edge(h[0], h[1]):
        step = locate_k23(g, h)
    else:
        # a 5-cycle component of G - H replaces H; it is a good cycle as well
        boundary = g.remove(h)
        c5 = None
        for b in sorted(boundary):
            if g.deg[b] == 2:
                part = g.bfs_limited(b, 6)
                if len(part) == 5 and all(g.deg[x] == 2 for x in part):
                    c5 = _cycle_order(g, part)
                    break
        g.revive(h)
        step = locate_good_cycle(g, c5 if c5 is not None else h)
    if step is None:
        raise ExtensionError(f"cubic structure {list(h)} failed validation")
    return step


def color_graph(
    g: Graph,
    L: ListAssignment,
    *,
    trace: Optional[Trace] = None,
    check: bool = False,
    fallback: bool = False,
) -> ColorResult:
    """Superlinear L-coloring of every component that has one.

    Components of order at most 10 are solved exhaustively; one without a
    coloring (a 5-cycle with identical lists, or K_{3,3} with identical lists)
    gets a :class:`Certificate` instead.  Larger components always succeed.

    ``check`` re-verifies every extension and asserts the locality radius;
    ``fallback`` lets exhaustive search finish a component the reductions
    cannot, counting it in the report.  Both are testing aids.
    """
    if len(L) != g.n:
        raise ContractError(f"{len(L)} lists for {g.n} vertices")
    if g.max_degree() > 3:
        raise ContractError("graph is not subcubic")
    t0 = time.perf_counter()
    trace = trace if trace is not None else Trace()
    run = _Run(g.copy(), L, trace, check, fallback)
    work = run.g
    certificates = []
    comps = components(work)
    run.report.components = len(comps)
    for comp in comps:
        if len(comp) <= SMALL:
            if run._color_small(comp):
                run._delete_colored(comp)
            else:
                certificates.append(Certificate(tuple(comp), _reason(work, L, comp)))
                work.remove(comp)
        elif all(work.deg[v] == 3 for v in comp):
            run.handle_cubic(comp)
        else:
            run.enqueue_all(v for v in comp if work.deg[v] <= 2)
    run.reduce()
    run.unwind()
    f = run.f
    # the infeasible components were removed without a stack entry
    for cert in certificates:
        work.revive(cert.component)
    report = run.report
    report.infeasible_components = len(certificates)
    report.colored_components = report.components - len(certificates)
    report.work = work.ops + run.work
    report.branches = Counter(trace.branches)
    report.wall_time = time.perf_counter() - t0
    if check:
        blocked = {v for c in certificates for v in c.component}
        view = work.copy()
        view.remove(blocked)
        bad = find_violation(view, L, f)
        if bad is not None:
            raise ExtensionError(f"final coloring fails verification: {bad}")
    return ColorResult(f, certificates, report)


def _reason(g: Graph, L: ListAssignment, comp: Sequence[int]) -> str:
    identical = L.all_identical(comp)
    if identical and is_component_c5(g, comp):
        return "c5-identical-lists"
    if identical and is_component_k33(g, comp):
        return "k33-identical-lists"
    return "exhaustive-search"
