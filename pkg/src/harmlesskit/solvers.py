"""Exact solvers: the brute-force oracle and the vertex-cover algorithm.

``brute_force_max`` is the reference oracle used throughout the test suite;
``vc_solve`` is the fixed-parameter algorithm that guesses the solution's
intersection with a 2-approximate vertex cover and solves an exact packing
program for the independent remainder.  Both run on either the compiled or
the pure-Python kernel backend and must agree with each other on every
instance.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from ._core import get_kernels
from .errors import InvalidArgumentError, ResourceLimitError
from .graph import Graph, Instance, compute_core, is_harmless, residual_budget

DEFAULT_BRUTE_CAP = 24
DEFAULT_COVER_CAP = 22
_MAX_CLASSES = 10_000  # recursion guard for the packing solver


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return default if raw is None else int(raw)


def brute_cap(cap: Optional[int] = None) -> int:
    return cap if cap is not None else _env_cap("HARMLESSKIT_BRUTE_CAP", DEFAULT_BRUTE_CAP)


def cover_cap(cap: Optional[int] = None) -> int:
    return cap if cap is not None else _env_cap("HARMLESSKIT_COVER_CAP", DEFAULT_COVER_CAP)


def _csr(g: Graph) -> tuple[list[int], list[int]]:
    indptr = [0]
    indices: list[int] = []
    for v in range(g.n):
        indices.extend(g.adj[v])
        indptr.append(len(indices))
    return indptr, indices


def brute_force_max(
    instance: Instance,
    *,
    candidates: Optional[Iterable[int]] = None,
    cap: Optional[int] = None,
    backend: Optional[str] = None,
) -> tuple[int, frozenset[int]]:
    """Maximum harmless set by branch and bound over the solution core.

    Search is restricted to ``compute_core`` (every harmless set lives
    there), optionally further intersected with ``candidates``.  Refuses to
    run when more selectable vertices remain than the cap allows.
    """
    cap = brute_cap(cap)
    pool = compute_core(instance)
    if candidates is not None:
        pool &= instance.graph.check_vertex_set(candidates)
    if len(pool) > cap:
        raise ResourceLimitError(
            f"{len(pool)} selectable vertices exceed the brute-force cap {cap}"
        )
    order = sorted(pool, key=lambda v: (-len(instance.graph.adj[v]), v))
    indptr, indices = _csr(instance.graph)
    kernels = get_kernels(backend)
    size, witness = kernels.max_harmless(indptr, indices, list(instance.thresholds), order)
    witness_set = frozenset(int(v) for v in witness)
    assert is_harmless(instance, witness_set), "search returned a non-harmless witness"
    return int(size), witness_set


def decide(instance: Instance, **kwargs) -> bool:
    """YES/NO answer for the size-k decision via the brute-force oracle."""
    k = instance.require_k()
    optimum, _ = brute_force_max(instance, **kwargs)
    return optimum >= k


def greedy_vertex_cover(g: Graph) -> frozenset[int]:
    """Both endpoints of a greedy maximal matching: a 2-approximate cover."""
    matched = [False] * g.n
    cover: list[int] = []
    for u, v in g.edges():
        if not matched[u] and not matched[v]:
            matched[u] = matched[v] = True
            cover.extend((u, v))
    return frozenset(cover)


@dataclass(frozen=True)
class NeighbourhoodClass:
    """Cover-complement vertices sharing one exact neighbourhood A inside X."""

    roots: frozenset[int]
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class IlpModel:
    """Packing program: fill classes without exhausting any cover budget."""

    classes: tuple[NeighbourhoodClass, ...]
    capacities: dict[int, int]


def build_ilp(
    instance: Instance, X: Iterable[int], guess: Iterable[int]
) -> Optional[IlpModel]:
    """Model for a fixed cover guess, or None when a budget is already broken.

    Classes partition the cover complement by exact neighbourhood; a member
    only counts as selectable while its own residual budget under the guess
    is non-negative.  Capacities are the residual budgets of cover vertices.
    """
    g = instance.graph
    X = g.check_vertex_set(X)
    guess = g.check_vertex_set(guess)
    if not guess <= X:
        raise InvalidArgumentError("the guessed set must be a subset of the cover")
    groups: dict[frozenset[int], list[int]] = {}
    for u in range(g.n):
        if u in X:
            continue
        nbrs = frozenset(g.adj[u])
        if not nbrs <= X:
            raise InvalidArgumentError(f"X is not a vertex cover: vertex {u} has a neighbour outside")
        if residual_budget(instance, guess, u) >= 0:
            groups.setdefault(nbrs, []).append(u)
        else:
            groups.setdefault(nbrs, [])
    capacities = {u: residual_budget(instance, guess, u) for u in sorted(X)}
    if any(c < 0 for c in capacities.values()):
        return None
    classes = tuple(
        NeighbourhoodClass(roots, tuple(sorted(members)))
        for roots, members in sorted(
            groups.items(), key=lambda kv: (-len(kv[0]), tuple(sorted(kv[0])))
        )
    )
    return IlpModel(classes, capacities)


def ilp_solve(model: IlpModel) -> tuple[int, tuple[int, ...]]:
    """Exact optimum of the packing program plus one optimal assignment.

    Branch and bound, largest class values first, with the greedy upper
    bound of per-class limits clipped by residual capacities; assignments
    are therefore deterministic.
    """
    if any(c < 0 for c in model.capacities.values()):
        raise InvalidArgumentError("infeasible model: a capacity is negative")
    classes = model.classes
    caps = dict(model.capacities)
    nclasses = len(classes)
    best = 0
    best_assign = tuple(0 for _ in classes)
    assign = [0] * nclasses

    def upper(i: int) -> int:
        total = 0
        for j in range(i, nclasses):
            lim = classes[j].size
            for u in classes[j].roots:
                if caps[u] < lim:
                    lim = caps[u]
            total += lim
        return total

    def dfs(i: int, acc: int) -> None:
        nonlocal best, best_assign
        if acc > best:
            best = acc
            best_assign = tuple(assign)
        if i == nclasses or acc + upper(i) <= best:
            return
        lim = classes[i].size
        for u in classes[i].roots:
            if caps[u] < lim:
                lim = caps[u]
        for x in range(lim, -1, -1):
            assign[i] = x
            for u in classes[i].roots:
                caps[u] -= x
            dfs(i + 1, acc + x)
            for u in classes[i].roots:
                caps[u] += x
        assign[i] = 0

    dfs(0, 0)
    return best, best_assign


def _scan_chunk(args):
    backend, payload, lo, hi = args
    kernels = get_kernels(backend)
    return kernels.vc_scan(*payload, lo, hi)


def vc_solve(
    instance: Instance,
    *,
    cap: Optional[int] = None,
    workers: int = 1,
    backend: Optional[str] = None,
) -> tuple[int, frozenset[int]]:
    """Exact maximum harmless set, parameterised by the vertex cover.

    Enumerates every harmless guess S inside a greedy 2-approximate cover X
    and adds the packing optimum over the neighbourhood classes of the
    independent remainder.  Results are identical for any worker count: the
    scan order is fixed and ties keep the smallest guess mask.
    """
    cap = cover_cap(cap)
    g = instance.graph
    X = sorted(greedy_vertex_cover(g))
    nx = len(X)
    if nx > cap:
        raise ResourceLimitError(f"greedy cover has {nx} vertices, above the cap {cap}")
    if nx > 62:
        raise ResourceLimitError("cover sizes above 62 do not fit the guess-mask width")
    xpos = {v: i for i, v in enumerate(X)}
    xnbr_mask = [
        sum(1 << xpos[w] for w in g.adj[v] if w in xpos) for v in X
    ]
    x_thresh = [instance.thresholds[v] for v in X]

    groups: dict[frozenset[int], list[int]] = {}
    for u in range(g.n):
        if u not in xpos:
            groups.setdefault(frozenset(g.adj[u]), []).append(u)
    ordered = sorted(groups.items(), key=lambda kv: (-len(kv[0]), tuple(sorted(kv[0]))))
    if len(ordered) > _MAX_CLASSES:
        raise ResourceLimitError(f"{len(ordered)} neighbourhood classes exceed the solver limit")
    class_mask = []
    class_size = []
    class_min_t = []
    cm_indptr = [0]
    cm_idx: list[int] = []
    for roots, members in ordered:
        class_mask.append(sum(1 << xpos[u] for u in roots))
        class_size.append(len(members))
        class_min_t.append(min(instance.thresholds[u] for u in members))
        cm_idx.extend(sorted(xpos[u] for u in roots))
        cm_indptr.append(len(cm_idx))

    payload = (xnbr_mask, x_thresh, class_mask, class_size, class_min_t, cm_indptr, cm_idx)
    total_masks = 1 << nx
    if workers <= 1:
        kernels = get_kernels(backend)
        best_total, best_mask = kernels.vc_scan(*payload, 0, total_masks)
    else:
        bounds = [(total_masks * i) // workers for i in range(workers + 1)]
        chunks = [
            (backend, payload, bounds[i], bounds[i + 1])
            for i in range(workers)
            if bounds[i] < bounds[i + 1]
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_chunk, chunks))
        best_total, best_mask = max(
            results, key=lambda tm: (tm[0], -tm[1])
        )
    best_total = int(best_total)
    best_mask = int(best_mask)

    guess = frozenset(X[i] for i in range(nx) if best_mask >> i & 1)
    model = build_ilp(instance, X, guess)
    assert model is not None, "the optimal guess produced an infeasible model"
    packed, assign = ilp_solve(model)
    assert len(guess) + packed == best_total, "scan and rebuild disagree on the optimum"
    witness = set(guess)
    for cls, x in zip(model.classes, assign):
        witness.update(cls.members[:x])
    witness_set = frozenset(witness)
    assert is_harmless(instance, witness_set), "vc witness failed the harmlessness check"
    assert len(witness_set) == best_total
    return best_total, witness_set
