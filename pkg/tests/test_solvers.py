import random
from itertools import combinations

import pytest

from harmlesskit import (
    Graph,
    Instance,
    InvalidArgumentError,
    ResourceLimitError,
    brute_force_max,
    build_ilp,
    greedy_vertex_cover,
    ilp_solve,
    is_harmless,
    vc_solve,
)
from harmlesskit.generators import random_instance
from harmlesskit.solvers import NeighbourhoodClass, IlpModel

from oracles import naive_max_harmless

P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
TRIANGLE = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def test_brute_edgeless_all_selected():
    inst = Instance(Graph.from_edges(5, ()), (1,) * 5)
    assert brute_force_max(inst) == (5, frozenset(range(5)))


def test_brute_triangle():
    inst = Instance(TRIANGLE, (2, 2, 2))
    size, witness = brute_force_max(inst)
    assert (size, len(witness)) == (1, 1)
    assert naive_max_harmless(inst)[0] == 1


def test_brute_path():
    inst = Instance(P3, (2, 2, 2))
    size, witness = brute_force_max(inst)
    assert size == 2 == naive_max_harmless(inst)[0]
    assert is_harmless(inst, witness)


def test_brute_matches_exhaustive_enumeration():
    rng = random.Random(17)
    for _ in range(80):
        n = rng.randint(0, 9)
        inst = random_instance(rng, n, edge_prob=0.35, t_max=max(1, n))
        size, witness = brute_force_max(inst)
        assert size == naive_max_harmless(inst)[0]
        assert is_harmless(inst, witness)
        assert len(witness) == size


def test_brute_candidate_restriction():
    inst = Instance(Graph.from_edges(4, ()), (1,) * 4)
    size, witness = brute_force_max(inst, candidates={0, 2})
    assert size == 2 and witness == {0, 2}


def test_brute_cap():
    inst = Instance(Graph.from_edges(30, ()), (1,) * 30)
    with pytest.raises(ResourceLimitError):
        brute_force_max(inst, cap=20)


# ---------------------------------------------------------------------------
# greedy vertex cover
# ---------------------------------------------------------------------------

def test_cover_edgeless():
    assert greedy_vertex_cover(Graph.from_edges(4, ())) == frozenset()


def test_cover_single_edge():
    assert greedy_vertex_cover(Graph.from_edges(2, [(0, 1)])) == {0, 1}


def test_cover_triangle():
    X = greedy_vertex_cover(TRIANGLE)
    assert len(X) == 2
    assert all(u in X or v in X for u, v in TRIANGLE.edges())


def test_cover_is_cover_and_2_approx():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 10)
        g = Graph.from_edges(
            n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.35]
        )
        X = greedy_vertex_cover(g)
        assert all(u in X or v in X for u, v in g.edges())
        # exhaustive minimum cover
        best = n
        for size in range(n + 1):
            if any(
                all(u in set(c) or v in set(c) for u, v in g.edges())
                for c in combinations(range(n), size)
            ):
                best = size
                break
        assert len(X) <= 2 * best


# ---------------------------------------------------------------------------
# the packing model
# ---------------------------------------------------------------------------

def test_build_ilp_star():
    inst = Instance(star(3), (2, 9, 9, 9))
    model = build_ilp(inst, {0}, set())
    assert model is not None
    assert len(model.classes) == 1
    cls = model.classes[0]
    assert cls.roots == {0} and cls.size == 3
    assert model.capacities == {0: 1}


def test_build_ilp_isolated_class_unconstrained():
    g = Graph.from_edges(3, [(0, 1)])
    inst = Instance(g, (2, 2, 5))
    model = build_ilp(inst, {0}, set())
    roots = {cls.roots for cls in model.classes}
    assert frozenset() in roots
    opt, _ = ilp_solve(model)
    assert opt == 2  # vertex 1 (budget allows) plus the isolated vertex 2


def test_build_ilp_rejects_guess_outside_cover():
    inst = Instance(star(3), (2, 9, 9, 9))
    with pytest.raises(InvalidArgumentError):
        build_ilp(inst, {0}, {1})
    with pytest.raises(InvalidArgumentError):
        build_ilp(inst, {1}, set())  # {1} is not a vertex cover


def test_ilp_single_class():
    model = IlpModel(
        (NeighbourhoodClass(frozenset({0}), (10, 11, 12, 13, 14)),), {0: 2}
    )
    assert ilp_solve(model) == (2, (2,))


def test_ilp_shared_capacity():
    model = IlpModel(
        (
            NeighbourhoodClass(frozenset({0, 1}), (10, 11, 12)),
            NeighbourhoodClass(frozenset({0}), (20, 21, 22)),
        ),
        {0: 2, 1: 9},
    )
    opt, assign = ilp_solve(model)
    assert opt == 2
    # exhaustive check over all assignments
    best = max(
        x + y
        for x in range(4)
        for y in range(4)
        if x + y <= 2 and x <= 9
    )
    assert opt == best


def test_ilp_no_classes():
    assert ilp_solve(IlpModel((), {0: 3})) == (0, ())


def test_ilp_rejects_infeasible_model():
    model = IlpModel((NeighbourhoodClass(frozenset({0}), (5,)),), {0: -1})
    with pytest.raises(InvalidArgumentError):
        ilp_solve(model)


# ---------------------------------------------------------------------------
# the vertex-cover solver
# ---------------------------------------------------------------------------

def test_vc_path_examples():
    assert vc_solve(Instance(P3, (2, 2, 2)))[0] == 2
    assert vc_solve(Instance(P3, (1, 1, 1)))[0] == 0


def test_vc_star_threshold_two():
    for leaves in range(2, 6):
        inst = Instance(star(leaves), (2,) * (leaves + 1))
        size, witness = vc_solve(inst)
        assert size == 2
        assert is_harmless(inst, witness)
        assert brute_force_max(inst)[0] == 2


def test_vc_matches_oracle_fuzz():
    rng = random.Random(29)
    for _ in range(60):
        n = rng.randint(0, 12)
        inst = random_instance(rng, n, edge_prob=0.3, t_max=max(1, n))
        b, _ = brute_force_max(inst)
        v, witness = vc_solve(inst)
        assert v == b
        assert is_harmless(inst, witness)
        assert len(witness) == v


def test_vc_class_members_interchangeable():
    rng = random.Random(31)
    for _ in range(20):
        inst = random_instance(rng, rng.randint(2, 10), edge_prob=0.3, t_max=4)
        _, witness = vc_solve(inst)
        X = greedy_vertex_cover(inst.graph)
        outside = [v for v in sorted(witness) if v not in X]
        for v in outside:
            mates = [
                u
                for u in range(inst.n)
                if u not in X
                and u not in witness
                and frozenset(inst.graph.adj[u]) == frozenset(inst.graph.adj[v])
            ]
            for u in mates:
                swapped = (witness - {v}) | {u}
                assert is_harmless(inst, swapped)


def test_vc_worker_invariance():
    rng = random.Random(37)
    inst = random_instance(rng, 11, edge_prob=0.35, t_max=5)
    seq = vc_solve(inst, workers=1)
    par = vc_solve(inst, workers=3)
    assert seq == par


def test_vc_cover_cap():
    g = Graph.from_edges(30, [(2 * i, 2 * i + 1) for i in range(15)])
    inst = Instance(g, (2,) * 30)
    with pytest.raises(ResourceLimitError):
        vc_solve(inst, cap=10)
