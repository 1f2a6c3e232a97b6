import os
import random
from collections import Counter

import pytest

from conftest import FIXTURES
from superlinear.coloring import ListAssignment, find_violation
from superlinear.cyclecolor import CycleInstance, color_c5_relaxed
from superlinear.driver import color_graph, find_reduction
from superlinear.errors import ExtensionError
from superlinear.extend import (
    BRANCHES,
    Deg2PathStep,
    Trace,
    extend,
    locate_c4_bridge,
    locate_deg2_path,
    locate_eyeglass,
    locate_good_cycle,
    locate_pendant,
    locate_special_path,
    locate_triangle,
)
from superlinear.graph import Graph, components, is_component_c5
from superlinear.instances import (
    FUZZ_FAMILIES,
    GADGETS,
    cycle,
    family_instance,
    find_good_cycle_instance,
    host_order_for,
    parse_instance,
    petersen,
    planted,
    prism,
    random_lists,
    random_with_degrees,
    read_text,
)

IDENT = ListAssignment.identical


def extend_and_check(g, L, step):
    """Color G - Q independently, extend across Q, verify the whole graph.

    Returns the trace, or ``None`` when G - Q has a small component that the
    step is not meant to absorb.
    """
    rest = g.copy()
    rest.remove(step.q)
    res = color_graph(rest, L)
    f = res.coloring
    for cert in res.certificates:
        anchor = next((a for a in step.anchors if a in cert.component), None)
        if anchor is None or not is_component_c5(rest, cert.component):
            return None
        order = _cycle_order(rest, cert.component)
        for v, c in zip(order, color_c5_relaxed(CycleInstance(order), L, anchor)):
            f[v] = c
    before = list(f)
    trace = Trace(record=True)
    extend(step, g, L, f, trace)
    bad = find_violation(g, L, f)
    assert bad is None, f"{step.kind}: {bad}\n" + "\n".join(trace.lines)
    q = set(step.q)
    assert all(f[v] == before[v] for v in g.vertices() if v not in q)
    return trace


def _cycle_order(g, comp):
    out = [min(comp)]
    prev = None
    while len(out) < len(comp):
        nxt = next(w for w in g.neighbors(out[-1]) if w != prev and w not in out)
        prev = out[-1]
        out.append(nxt)
    return tuple(out)


# -- hand-built configurations ---------------------------------------------------


def test_pendant_leaf_of_star():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    L = IDENT(4)
    step = locate_pendant(g, 3)
    trace = extend_and_check(g, L, step)
    assert trace.branches["pendant:leaf"] == 1


def test_pendant_on_c5_with_identical_lists():
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    L = IDENT(6)
    step = locate_pendant(g, 5)
    assert step.anchors == (0,)
    assert extend_and_check(g, L, step) is not None


def test_isolated_vertex_is_not_a_pendant_step():
    assert locate_pendant(Graph(1), 0) is None


def test_deg2_path_in_subdivided_k4():
    # K4 on 0..3 with edge 01 replaced by 0-4-5-1
    edges = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5), (5, 1)]
    g = Graph(6, edges)
    step = locate_deg2_path(g, (4, 5))
    assert isinstance(step, Deg2PathStep) and {step.u1, step.uk} == {0, 1}
    rng = random.Random(0)
    for _ in range(50):
        extend_and_check(g, random_lists(6, rng, palette=5), step)


def test_deg2_path_validator_rejects_non_paths():
    g = cycle(6)
    assert locate_deg2_path(g, (0, 2)) is None


def test_deg2_path_between_two_bad_c5s_is_rerouted():
    # two 5-cycles with identical lists joined by the path 0-10-11-5
    a = [(i, (i + 1) % 5) for i in range(5)]
    b = [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
    g = Graph(12, a + b + [(0, 10), (10, 11), (11, 5)])
    res = color_graph(g, IDENT(12), check=True)
    assert res.ok and find_violation(g, IDENT(12), res.coloring) is None


def test_triangle_on_k4_is_rainbow():
    g = Graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    step = locate_triangle(g, (0, 1, 2))
    rng = random.Random(1)
    for _ in range(30):
        L = random_lists(4, rng, palette=5)
        extend_and_check(g, L, step)
    f = color_graph(g, IDENT(4)).coloring
    assert sorted(f) == [1, 2, 3, 4]


def test_triangle_in_prism():
    g = prism()
    tri = next(t for t in [(0, 1, 2), (3, 4, 5)] if all(g.has_edge(a, b) for a in t for b in t if a < b))
    step = locate_triangle(g, tri)
    rng = random.Random(2)
    for _ in range(30):
        extend_and_check(g, random_lists(6, rng, palette=6), step)


def test_triangle_with_one_pendant_x():
    rng = random.Random(3)
    hits = 0
    for _ in range(40):
        g, _ = planted("triangle-tail", host_order_for("triangle-tail", 10, 16, rng), rng)
        step = locate_triangle(g, (0, 1, 2))
        assert step is not None and sum(x is not None for x in step.xs) == 1
        trace = extend_and_check(g, random_lists(g.n, rng, palette=6), step)
        hits += trace is not None
    assert hits >= 30


# -- planted configurations ------------------------------------------------------


@pytest.mark.parametrize("name", ["eyeglass", "c4-bridge"])
def test_planted_gadget_is_located_and_extends(name):
    rng = random.Random(name)
    kinds = Counter()
    for _ in range(30):
        g, _ = planted(name, host_order_for(name, 12, 30, rng), rng)
        L = random_lists(g.n, rng, palette=rng.choice([5, 6, 8]))
        step = find_reduction(g, L, 0)
        kinds[step.kind] += 1
        extend_and_check(g, L, step)
    assert kinds[name] >= 20


def test_eyeglass_and_c4_bridge_validators():
    g, _ = planted("eyeglass", 12, random.Random(4))
    assert locate_eyeglass(g, (0, 1, 2, 3)) is not None
    assert locate_eyeglass(g, (0, 1, 2)) is None
    g, _ = planted("c4-bridge", 12, random.Random(4))
    assert locate_c4_bridge(g, (0, 1, 2, 3, 4)) is not None
    assert locate_c4_bridge(g, (0, 5, 2, 3, 4)) is None


def test_special_paths_from_the_corpus():
    """Special paths with three and with more vertices, found and extended."""
    from superlinear.errors import ContractError

    rng = random.Random(5)
    lengths = Counter()
    for _ in range(400):
        # cubic except for a few degree-2 vertices
        n = rng.randrange(14, 40, 2)
        degrees = [2] * 4 + [3] * (n - 4)
        g = random_with_degrees(degrees, rng, connected=True)
        L = random_lists(g.n, rng, palette=rng.choice([5, 6]))
        for v in g.vertices():
            if g.deg[v] != 2:
                continue
            try:
                step = find_reduction(g, L, v)
            except ContractError:
                continue
            if step.kind == "special-path":
                key = 3 if len(step.path) == 3 else 4
                if lengths[key] < 5 and extend_and_check(g, L, step) is not None:
                    lengths[key] += 1
        if lengths[3] >= 5 and lengths[4] >= 5:
            break
    assert lengths[3] >= 3 and lengths[4] >= 3, lengths


def test_find_reduction_rejects_adjacent_degree2_pairs():
    from superlinear.errors import ContractError

    ring = Graph(12, [(i, (i + 1) % 12) for i in range(12)])
    with pytest.raises(ContractError):
        find_reduction(ring, IDENT(12), 0)
    with pytest.raises(ContractError):
        find_reduction(petersen(), IDENT(10), 0)


def test_special_path_validator_needs_degree2_ends():
    g = cycle(8)
    assert locate_special_path(g, (0, 1, 2)) is None


# -- good cycle ---------------------------------------------------------------------


def test_good_cycle_validator():
    g = petersen()
    assert locate_good_cycle(g, (0, 1, 2, 3, 4)) is not None
    assert locate_good_cycle(g, (0, 1, 2, 3)) is None


def test_good_cycle_across_petersen_outer_cycle():
    g = petersen()
    rng = random.Random(6)
    step = locate_good_cycle(g, (0, 1, 2, 3, 4))
    done = 0
    for _ in range(60):
        L = random_lists(10, rng, palette=rng.choice([5, 6]))
        if extend_and_check(g, L, step) is not None:
            done += 1
    assert done >= 30


@pytest.mark.parametrize("target", ["minus", "recolor"])
def test_degenerate_good_cycle_branches(target):
    rng = random.Random(target)
    for _ in range(3):
        inst = find_good_cycle_instance(rng, target, attempts=500)
        assert inst is not None
        res = color_graph(inst.graph, inst.lists, check=True)
        assert res.report.branches[f"good-cycle:{target}"] >= 1
        assert find_violation(inst.graph, inst.lists, res.coloring) is None


def _fixture_paths():
    return sorted(
        os.path.join(FIXTURES, p) for p in os.listdir(FIXTURES) if p.startswith("good_cycle_explicit")
    )


@pytest.mark.parametrize("path", _fixture_paths(), ids=os.path.basename)
def test_explicit_good_cycle_fixture(path):
    inst = parse_instance(read_text(path))
    res = color_graph(inst.graph, inst.lists, check=True)
    assert res.report.branches["good-cycle:explicit"] == 1
    assert find_violation(inst.graph, inst.lists, res.coloring) is None


# -- coverage --------------------------------------------------------------------


def test_every_branch_reached_and_verified():
    """Every recipe branch fires in check mode on the targeted corpus."""
    seen = Counter()
    families = [name for name, _ in FUZZ_FAMILIES if name != "good-cycle-explicit"]
    rng = random.Random(2024)
    for i in range(2500):
        inst = family_instance(families[i % len(families)], rng, 120)
        if inst is None:
            continue
        res = color_graph(inst.graph, inst.lists, check=True)
        seen.update(res.report.branches)
    for path in _fixture_paths():
        inst = parse_instance(read_text(path))
        seen.update(color_graph(inst.graph, inst.lists, check=True).report.branches)
    missing = [b for b in BRANCHES if not seen[b]]
    assert not missing, missing


def test_check_mode_catches_a_broken_recipe(monkeypatch):
    """A recipe that ignores the attachment colors is caught by the per-step check."""
    from superlinear import extend as ext

    def careless(step, g, L, f, trace):
        for v in step.q:
            f[v] = L[v][0]
        return f

    monkeypatch.setitem(ext.EXTENDERS, ext.Deg2PathStep, careless)
    g = Graph(14, [(i, (i + 1) % 14) for i in range(14)] + [(0, 7)])
    with pytest.raises(ExtensionError):
        color_graph(g, IDENT(14), check=True)


def test_components_of_corpus_are_never_left_uncolored():
    rng = random.Random(9)
    for _ in range(200):
        name = rng.choice(list(GADGETS))
        g, _ = planted(name, host_order_for(name, 8, 20, rng), rng)
        L = random_lists(g.n, rng, palette=rng.choice([4, 5, 6]))
        res = color_graph(g, L, check=True)
        assert res.ok
        assert all(res.coloring[v] is not None for c in components(g) for v in c)
