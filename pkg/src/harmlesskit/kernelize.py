"""Reduction rules and the bikernel pipeline for the annotated problem.

The pipeline first shrinks the solution core K (fragile neighbours, an
early-YES via scattering, or the waterlily exchange rule), then shrinks the
graph by removing core-twins outside K.  Every removal fires only when its
correctness-sufficient trigger condition verifiably holds on the current
instance, so the YES/NO answer is preserved unconditionally; the asymptotic
size guarantees of the underlying theory are tracked empirically instead of
being assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from .errors import InvalidArgumentError
from .graph import (
    AnnotatedInstance,
    Graph,
    Instance,
    cap_thresholds,
    compute_core,
    is_harmless,
)
from .sparsity import LilyFailure, build_waterlily, domination_scattered

LILY_RADIUS = 2
LILY_DEPTH = 1


@dataclass(frozen=True)
class YesCertificate:
    """The instance is a YES: ``certificate`` is harmless and has size >= k."""

    certificate: frozenset[int]


@dataclass(frozen=True)
class RemoveVertex:
    """``vertex`` can be dropped from the solution core."""

    vertex: int
    rule: str


@dataclass(frozen=True)
class Stuck:
    """No core rule currently fires."""

    reason: str


CoreShrinkOutcome = Union[YesCertificate, RemoveVertex, Stuck]


def _signature(g: Graph, thresholds, R: frozenset[int], v: int):
    return frozenset(
        (thresholds[u], frozenset(w for w in g.adj[u] if w in R))
        for u in g.adj[v]
        if u not in R
    )


def signature(
    instance: Instance, R: Iterable[int], v: int
) -> frozenset[tuple[int, frozenset[int]]]:
    """How v's non-root neighbours connect to R: pairs (threshold, N(u) & R).

    Centres with equal signatures are interchangeable in any solution, which
    is what justifies the exchange rule.
    """
    g = instance.graph
    R = g.check_vertex_set(R)
    g.check_vertex(v)
    if v in R:
        raise InvalidArgumentError(f"vertex {v} lies in the root set")
    return _signature(g, instance.thresholds, R, v)


@dataclass(frozen=True)
class _Reduction:
    kind: str  # 'yes' | 'remove' | 'stuck'
    rule: str = ""
    batch: tuple[int, ...] = ()
    certificate: frozenset[int] = frozenset()
    reason: str = ""


def _lily_targets(size: int) -> list[int]:
    targets = []
    t = size
    while t >= 1:
        targets.append(t)
        t //= 2
    return targets


def _core_reduction(ann: AnnotatedInstance, p: int) -> _Reduction:
    inst = ann.instance
    g = inst.graph
    t = inst.thresholds
    K = ann.core
    k = inst.require_k()

    # (a) members of K with a fragile neighbour can never be selected
    fragile_hit = tuple(
        x for x in sorted(K) if any(t[w] == 1 for w in g.adj[x])
    )
    if fragile_hit:
        return _Reduction("remove", rule="core-fragile", batch=fragile_hit)

    # (b) a large scattered subset of K is itself harmless: early YES
    dom = domination_scattered(g, K, 1)
    if len(dom.scattered) >= k:
        assert is_harmless(inst, dom.scattered), "scattered certificate is not harmless"
        return _Reduction("yes", certificate=dom.scattered)

    # (c) waterlily exchange: an oversized uniform signature class has
    # interchangeable centres, so all but p*|R| of them can leave the core
    for target in _lily_targets(len(K)):
        lily = build_waterlily(g, K, LILY_RADIUS, LILY_DEPTH, target)
        if isinstance(lily, LilyFailure):
            continue
        classes: dict[frozenset, list[int]] = {}
        for c in sorted(lily.centres):
            classes.setdefault(_signature(g, t, lily.roots, c), []).append(c)
        members = max(classes.values(), key=lambda vs: (len(vs), -vs[0]))
        keep = p * len(lily.roots)
        if len(members) > keep:
            return _Reduction(
                "remove", rule="core-exchange", batch=tuple(members[: len(members) - keep])
            )
    return _Reduction("stuck", reason="no oversized uniform signature class found")


def shrink_core_step(ann: AnnotatedInstance, p: int) -> CoreShrinkOutcome:
    """One application of the core rules: YES, a removable vertex, or Stuck."""
    res = _core_reduction(ann, p)
    if res.kind == "yes":
        return YesCertificate(res.certificate)
    if res.kind == "remove":
        return RemoveVertex(res.batch[0], res.rule)
    return Stuck(res.reason)


def shrink_graph_step(ann: AnnotatedInstance) -> Optional[int]:
    """Pick a removable core-twin outside K, or None when none exists.

    Two outside vertices with the same neighbourhood inside K constrain
    solutions identically except for their thresholds; the larger threshold
    is implied by the smaller one, so that vertex goes (ties: higher id).
    """
    g = ann.graph
    t = ann.instance.thresholds
    K = ann.core
    groups: dict[frozenset[int], list[int]] = {}
    for u in range(g.n):
        if u not in K:
            groups.setdefault(frozenset(w for w in g.adj[u] if w in K), []).append(u)
    for u in range(g.n):
        if u in K:
            continue
        grp = groups[frozenset(w for w in g.adj[u] if w in K)]
        if len(grp) >= 2:
            return max(grp, key=lambda w: (t[w], w))
    return None


@dataclass(frozen=True)
class KernelStep:
    rule: str
    vertex: Optional[int]
    graph_size: int
    core_size: int


@dataclass(frozen=True)
class KernelReport:
    """Trace of a kernelization run: applied rules and size evolution."""

    p: int
    initial_graph_size: int
    initial_core_size: int
    final_graph_size: int
    final_core_size: int
    outcome: str  # 'kernel' | 'yes'
    certificate: Optional[tuple[int, ...]]
    steps: tuple[KernelStep, ...] = field(repr=False)

    def rule_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.steps:
            counts[s.rule] = counts.get(s.rule, 0) + 1
        return counts

    def to_doc(self) -> dict:
        return {
            "p": self.p,
            "initial": {"graph": self.initial_graph_size, "core": self.initial_core_size},
            "final": {"graph": self.final_graph_size, "core": self.final_core_size},
            "outcome": self.outcome,
            "certificate": None if self.certificate is None else list(self.certificate),
            "rule_counts": self.rule_counts(),
            "steps": [
                {"rule": s.rule, "vertex": s.vertex, "graph": s.graph_size, "core": s.core_size}
                for s in self.steps
            ],
        }


Observer = Callable[[AnnotatedInstance, KernelStep, AnnotatedInstance], None]

_YES_KERNEL = AnnotatedInstance(Instance(Graph.from_edges(0, ()), (), 0), frozenset())


def kernelize(
    instance: Instance,
    p: Optional[int] = None,
    *,
    observer: Optional[Observer] = None,
) -> tuple[AnnotatedInstance, KernelReport]:
    """Run core rules to a fixpoint, then twin rules to exhaustion.

    Without an explicit bound p the thresholds are first capped at k+1,
    which preserves the size-k decision.  An early YES yields the canonical
    constant-size YES instance with the certificate in the report.  The
    number of rule applications is at most |K| + |G|: the core strictly
    shrinks on core rules and the graph strictly shrinks on twin rules.
    """
    k = instance.require_k()
    if p is None:
        work = cap_thresholds(instance)
        p = k + 1
    else:
        if instance.n and instance.max_threshold() > p:
            raise InvalidArgumentError(
                f"threshold {instance.max_threshold()} exceeds the declared bound p={p}"
            )
        work = instance
    ann = AnnotatedInstance(work, compute_core(work))
    initial = (ann.graph.n, len(ann.core))
    steps: list[KernelStep] = []

    outcome = "kernel"
    certificate: Optional[tuple[int, ...]] = None
    while True:
        res = _core_reduction(ann, p)
        if res.kind == "yes":
            outcome = "yes"
            certificate = tuple(sorted(res.certificate))
            step = KernelStep("early-yes", None, _YES_KERNEL.graph.n, 0)
            steps.append(step)
            if observer is not None:
                observer(ann, step, _YES_KERNEL)
            ann = _YES_KERNEL
            break
        if res.kind == "stuck":
            break
        for x in res.batch:
            before = ann
            ann = ann.shrink_core((x,))
            step = KernelStep(res.rule, x, ann.graph.n, len(ann.core))
            steps.append(step)
            if observer is not None:
                observer(before, step, ann)

    if outcome == "kernel":
        while True:
            v = shrink_graph_step(ann)
            if v is None:
                break
            before = ann
            ann = ann.without_vertex(v)
            step = KernelStep("twin", v, ann.graph.n, len(ann.core))
            steps.append(step)
            if observer is not None:
                observer(before, step, ann)

    report = KernelReport(
        p=p,
        initial_graph_size=initial[0],
        initial_core_size=initial[1],
        final_graph_size=ann.graph.n,
        final_core_size=len(ann.core),
        outcome=outcome,
        certificate=certificate,
        steps=tuple(steps),
    )
    return ann, report


def kernel_decision(ann: AnnotatedInstance, report: KernelReport) -> str:
    """Resolve the decision when the kernel makes it trivial."""
    if report.outcome == "yes":
        return "yes"
    k = ann.instance.require_k()
    if k == 0:
        return "yes"
    if len(ann.core) < k:
        return "no"
    return "unresolved"


def to_plain_kernel(ann: AnnotatedInstance) -> Instance:
    """Drop the annotation by adding two threshold-1 guards a and b.

    a is adjacent to everything outside K and to b, so no vertex outside
    K (nor a or b) can join a solution: solutions of the plain instance are
    exactly the annotated ones.  Note the pair is wired to the *complement*
    of K; wiring a to K itself would forbid the core instead.
    """
    inst = ann.instance
    n = inst.n
    a, b = n, n + 1
    edges = list(inst.graph.edges())
    edges.extend((u, a) for u in range(n) if u not in ann.core)
    edges.append((a, b))
    thresholds = inst.thresholds + (1, 1)
    return Instance(Graph.from_edges(n + 2, edges), thresholds, inst.k)
