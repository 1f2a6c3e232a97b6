import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_linear, brute_superlinear, instances, petersen_paper
from superlinear.coloring import (
    ListAssignment,
    bicolored_path_through,
    find_violation,
    is_linear,
    is_proper,
    is_relaxed_superlinear,
    is_superlinear,
    local_violation,
    restricted,
)
from superlinear.errors import ContractError
from superlinear.graph import Graph
from superlinear.instances import cycle, random_subcubic

IDENT = ListAssignment.identical


def path3():
    return Graph(3, [(0, 1), (1, 2)])


def test_list_assignment_contract():
    with pytest.raises(ContractError):
        ListAssignment([[1, 2, 3]])
    with pytest.raises(ContractError):
        ListAssignment([[1, 1, 2, 3]])
    with pytest.raises(ContractError):
        ListAssignment([[1, 2, 3, 9]], universe=8)
    L = ListAssignment([[4, 1, 3, 2]])
    assert set(L[0]) == {1, 2, 3, 4}


def test_restricted_keeps_order_and_ignores_none():
    assert restricted((1, 2, 3, 4), [2, None, 7]) == (1, 3, 4)


def test_is_proper_examples():
    g = Graph(2, [(0, 1)])
    L = IDENT(2)
    assert not is_proper(g, L, [1, 1])
    assert is_proper(g, L, [1, 2])
    pg, _, f = petersen_paper()
    assert is_proper(pg, IDENT(10), f)


def test_is_linear_examples():
    c4 = cycle(4)
    assert not is_linear(c4, [1, 2, 1, 2])
    assert is_linear(c4, [1, 2, 1, 3])
    pg, _, f = petersen_paper()
    assert is_linear(pg, f)


def test_is_superlinear_examples():
    p = path3()
    L = IDENT(3)
    assert not is_superlinear(p, L, [1, 2, 1])
    assert is_superlinear(p, L, [1, 2, 3])
    pg, _, f = petersen_paper()
    assert is_superlinear(pg, IDENT(10), f)


def test_no_proper_coloring_of_c5_with_identical_lists_is_superlinear():
    import itertools

    c5, L = cycle(5), IDENT(5)
    proper = [f for f in itertools.product(range(1, 5), repeat=5) if is_proper(c5, L, f)]
    assert proper
    assert not any(is_superlinear(c5, L, f) for f in proper)


def test_relaxed_examples():
    c5, L = cycle(5), IDENT(5)
    # anchor 0: neighbours 1 and 4 share color 1
    f = [2, 1, 3, 4, 1]
    assert is_relaxed_superlinear(c5, L, f, 0)
    assert not is_superlinear(c5, L, f)
    with pytest.raises(ContractError):
        is_relaxed_superlinear(Graph(4, [(0, 1), (0, 2), (0, 3)]), IDENT(4), [1, 2, 3, 4], 0)


def test_bicolored_path_examples():
    c6 = cycle(6)
    path, closed = bicolored_path_through(c6, [1, 2] * 3, 2, 3)
    assert closed and sorted(path) == list(range(6))
    path, closed = bicolored_path_through(path3(), [1, 2, 3], 0, 1)
    assert not closed and path == [0, 1]
    pg, ids, f = petersen_paper()
    path, closed = bicolored_path_through(pg, f, ids["u1"], ids["u2"])
    assert not closed
    assert {f[v] for v in path} == {1, 2}


def test_violation_kinds_and_witnesses():
    c4 = cycle(4)
    L = IDENT(4)
    bad = find_violation(c4, L, [1, 2, 1, 2])
    assert bad.kind == "bicolored-cycle" and sorted(bad.witness) == [0, 1, 2, 3]
    assert find_violation(path3(), IDENT(3), [1, 2, 1]).kind == "deg2-clash"
    assert find_violation(path3(), IDENT(3), [1, 1, 2]).kind == "improper"
    assert find_violation(path3(), IDENT(3), [1, 5, 2]).kind == "not-in-list"
    assert find_violation(path3(), IDENT(3), [1, None, 2]).kind == "uncolored"
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert find_violation(star, IDENT(4), [1, 2, 2, 2]).kind == "three-same"


def _random_coloring(g, L, rng):
    return [rng.choice(L[v]) for v in range(g.n)]


@settings(max_examples=300)
@given(instances(max_n=9), st.randoms(use_true_random=False))
def test_verifier_agrees_with_brute_force(inst, rng):
    g, L = inst
    f = _random_coloring(g, L, rng)
    assert is_superlinear(g, L, f) == brute_superlinear(g, L, f)
    if is_proper(g, L, f):
        assert is_linear(g, f) == brute_linear(g, f)


def test_mutation_of_verified_colorings():
    """Flip one vertex color in a valid coloring; the verifier must agree with brute force."""
    from superlinear.oracle import solve_superlinear

    rng = random.Random(11)
    done = 0
    while done < 150:
        g = random_subcubic(rng.randint(3, 9), rng)
        L = ListAssignment([rng.sample(range(6), 4) for _ in range(g.n)], 8)
        f = solve_superlinear(g, L)
        if f is None:
            continue
        for v in g.vertices():
            for c in L[v]:
                h = list(f)
                h[v] = c
                assert is_superlinear(g, L, h) == brute_superlinear(g, L, h)
        done += 1


@settings(max_examples=200)
@given(instances(max_n=10), st.randoms(use_true_random=False))
def test_implication_chain(inst, rng):
    g, L = inst
    f = _random_coloring(g, L, rng)
    if is_superlinear(g, L, f):
        assert is_linear(g, f) and is_proper(g, L, f)
    if is_linear(g, f):
        assert all(f[u] != f[v] for u, v in g.edges())


@settings(max_examples=200)
@given(instances(max_n=10), st.randoms(use_true_random=False))
def test_local_violation_sees_everything_near_q(inst, rng):
    g, L = inst
    f = _random_coloring(g, L, rng)
    q = g.vertices()
    # with q = everything the local check is the global one
    assert (local_violation(g, L, f, q, walk_limit=None) is None) == (
        find_violation(g, L, f) is None
    )
