import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_linear
from superlinear.coloring import ListAssignment, is_relaxed_superlinear, is_superlinear
from superlinear.cyclecolor import (
    CycleInstance,
    color_c5_relaxed,
    color_c5_superlinear,
    color_cycle_component,
    color_cycle_linear,
    square_proper,
)
from superlinear.errors import ContractError, InfeasibleError
from superlinear.instances import cycle
from superlinear.oracle import solve_superlinear

IDENT = ListAssignment.identical


def C(k):
    return CycleInstance(tuple(range(k)))


def test_cycle_instance_contract():
    with pytest.raises(ContractError):
        CycleInstance((0, 1))
    with pytest.raises(ContractError):
        CycleInstance((0, 1, 1))
    with pytest.raises(ContractError):
        CycleInstance.in_graph(cycle(4), (0, 2, 1, 3))
    assert len(CycleInstance.in_graph(cycle(4), (0, 1, 2, 3))) == 4


def test_c6_identical_lists():
    cols = color_cycle_component(C(6), IDENT(6))
    assert is_superlinear(cycle(6), IDENT(6), cols)


def test_c5_identical_lists_is_infeasible():
    with pytest.raises(InfeasibleError):
        color_cycle_component(C(5), IDENT(5))


def test_c7_random_lists_agrees_with_oracle():
    rng = random.Random(7)
    for _ in range(50):
        L = ListAssignment([rng.sample(range(6), 4) for _ in range(7)])
        ref = solve_superlinear(cycle(7), L)
        try:
            cols = color_cycle_component(C(7), L)
        except InfeasibleError:
            assert ref is None
        else:
            assert ref is not None and is_superlinear(cycle(7), L, cols)


def test_square_proper_equals_superlinear_on_cycles():
    for k in (4, 5, 6):
        for cols in itertools.product(range(4), repeat=k):
            assert square_proper(cols) == is_superlinear(cycle(k), IDENT(k, (0, 1, 2, 3)), cols)


# -- linear coloring from derived lists ----------------------------------------


def _is_linear_cycle(k, cols, lists):
    return all(c in lst for c, lst in zip(cols, lists)) and brute_linear(cycle(k), cols)


def test_cycle_linear_examples():
    cols = color_cycle_linear(C(3), [[1, 2], [1, 2], [1, 2, 3]])
    assert sorted(cols) == [1, 2, 3]
    assert color_cycle_linear(C(4), [[1, 2]] * 4) is None
    with pytest.raises(ContractError):
        color_cycle_linear(C(4), [[1, 2], [1], [1, 2], [1, 2]])


def test_cycle_linear_c6_with_one_big_list():
    rng = random.Random(2)
    for _ in range(200):
        lists = [rng.sample(range(5), 2) for _ in range(6)]
        lists[rng.randrange(6)] = rng.sample(range(5), 3)
        cols = color_cycle_linear(C(6), lists)
        assert cols is not None and _is_linear_cycle(6, cols, lists)
        # the brute-force search agrees that a coloring exists
        assert any(_is_linear_cycle(6, c, lists) for c in itertools.product(*lists))


@st.composite
def hypothesis_lists(draw):
    """Lists of size >= 2 on a cycle with a list of size >= 3 or two different lists."""
    k = draw(st.integers(3, 12))
    lists = [
        draw(st.lists(st.integers(0, 6), min_size=2, max_size=4, unique=True)) for _ in range(k)
    ]
    ok = any(len(x) >= 3 for x in lists) or any(set(lists[i]) != set(lists[0]) for i in range(k))
    if not ok:
        lists[draw(st.integers(0, k - 1))] = [0, 1, 2]
    return k, lists


@settings(max_examples=500)
@given(hypothesis_lists())
def test_cycle_linear_always_succeeds_under_hypothesis(inst):
    k, lists = inst
    cols = color_cycle_linear(C(k), lists)
    assert cols is not None and _is_linear_cycle(k, cols, lists)


# -- 5-cycles ---------------------------------------------------------------------


def test_c5_superlinear_examples():
    assert color_c5_superlinear(C(5), IDENT(5)) is None
    L = ListAssignment([[1, 2, 3, 4]] * 4 + [[1, 2, 3, 5]])
    cols = color_c5_superlinear(C(5), L)
    assert cols is not None and is_superlinear(cycle(5), L, cols)
    with pytest.raises(ContractError):
        color_c5_superlinear(C(6), IDENT(6))


def test_c5_relaxed_examples():
    g, L = cycle(5), IDENT(5)
    for anchor in range(5):
        cols = color_c5_relaxed(C(5), L, anchor)
        assert cols[(anchor - 1) % 5] == cols[(anchor + 1) % 5]
        assert is_relaxed_superlinear(g, L, cols, anchor)
    with pytest.raises(ContractError):
        color_c5_relaxed(C(5), L, 9)


@settings(max_examples=300)
@given(st.lists(st.lists(st.integers(0, 7), min_size=4, max_size=4, unique=True), min_size=5,
                max_size=5), st.integers(0, 4))  # fmt: skip
def test_c5_relaxed_always_exists(lists, anchor):
    L = ListAssignment(lists)
    cols = color_c5_relaxed(C(5), L, anchor)
    assert is_relaxed_superlinear(cycle(5), L, cols, anchor)
