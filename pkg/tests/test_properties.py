"""Property-based invariants over randomly drawn instances."""

from hypothesis import given, settings
from hypothesis import strategies as st

from harmlesskit import (
    Graph,
    Instance,
    compute_core,
    is_harmless,
    projection_profile,
    r_projection,
)
from harmlesskit.sparsity import projection_closure


@st.composite
def instances(draw, max_n=10):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    thresholds = tuple(
        draw(st.integers(min_value=1, max_value=4)) for _ in range(n)
    )
    return Instance(Graph.from_edges(n, edges), thresholds)


@st.composite
def instance_with_set(draw):
    inst = draw(instances())
    S = frozenset(v for v in range(inst.n) if draw(st.booleans()))
    return inst, S


@settings(max_examples=300, derandomize=True)
@given(instance_with_set())
def test_subsets_of_harmless_sets_are_harmless(pair):
    inst, S = pair
    if not is_harmless(inst, S):
        return
    for drop in sorted(S):
        assert is_harmless(inst, S - {drop})


@settings(max_examples=300, derandomize=True)
@given(instance_with_set())
def test_harmless_sets_live_in_the_core(pair):
    inst, S = pair
    if is_harmless(inst, S):
        assert S <= compute_core(inst)


@settings(max_examples=200, derandomize=True)
@given(instances(), st.integers(min_value=1, max_value=3))
def test_profile_support_equals_projection(inst, r):
    g = inst.graph
    if g.n == 0:
        return
    X = frozenset(range(0, g.n, 2))
    for u in range(g.n):
        if u in X:
            continue
        prof = projection_profile(g, X, u, r)
        assert prof.support() == r_projection(g, X, u, r)
        for x, d in prof.finite:
            assert 1 <= d <= r


@settings(max_examples=100, derandomize=True)
@given(instances(), st.integers(min_value=1, max_value=3))
def test_closure_contains_input_and_satisfies_bound(inst, c):
    g = inst.graph
    X = frozenset(range(0, g.n, 3))
    closed = projection_closure(g, X, 2, c)
    assert X <= closed
    for u in range(g.n):
        if u not in closed:
            assert len(r_projection(g, closed, u, 2)) <= c
