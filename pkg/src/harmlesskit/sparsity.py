"""Projections, domination/scattering and waterlily construction.

The cited algorithms behind these routines (Dvorak-style domination, the
quasi-wideness extraction, the projection closure) come with class-dependent
constants that are not available here, so each routine is a deterministic
greedy stand-in whose *output contract* is what downstream code relies on.
Every contract is checkable, and ``build_waterlily`` re-verifies its result
before returning it.

Greedy orders are deterministic throughout: descending degree, then
ascending vertex id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidArgumentError
from .graph import INFINITY, Graph, ball, bfs_distances

DEFAULT_CLOSURE_BOUND = 4
DEFAULT_HUB_BUDGET = 4


def _greedy_key(g: Graph):
    return lambda v: (-len(g.adj[v]), v)


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectionProfile:
    """Distances of the shortest X-avoiding paths from one vertex onto X.

    Only finite entries (<= radius) are stored; every other member of the
    target set is implicitly at infinity.  Profiles over the same target set
    compare equal iff all entries agree.
    """

    targets: frozenset[int]
    radius: int
    finite: tuple[tuple[int, int], ...]

    def distance(self, x: int) -> float:
        if x not in self.targets:
            raise InvalidArgumentError(f"vertex {x} is not in the profile's target set")
        for v, d in self.finite:
            if v == x:
                return d
        return INFINITY

    def support(self) -> frozenset[int]:
        """Members of X reached within the radius (equals the r-projection)."""
        return frozenset(v for v, _ in self.finite)

    def as_dict(self) -> dict[int, float]:
        out: dict[int, float] = {x: INFINITY for x in self.targets}
        out.update(dict(self.finite))
        return out


def projection_profile(g: Graph, X: Iterable[int], u: int, r: int) -> ProjectionProfile:
    """Profile of ``u`` onto ``X`` at radius ``r``; requires ``u`` outside X."""
    X = g.check_vertex_set(X)
    g.check_vertex(u)
    if u in X:
        raise InvalidArgumentError(f"vertex {u} lies in the target set")
    dist = bfs_distances(g, u, blocked=X, max_depth=r)
    finite = tuple(sorted((x, dist[x]) for x in X if x in dist and dist[x] <= r))
    return ProjectionProfile(X, r, finite)


def r_projection(g: Graph, X: Iterable[int], u: int, r: int) -> frozenset[int]:
    """Members of X reachable from u by an X-avoiding path of length <= r."""
    return projection_profile(g, X, u, r).support()


def count_profiles(g: Graph, X: Iterable[int], r: int) -> int:
    """Number of distinct r-projection profiles realised outside X.

    Diagnostic for tracking the linear-in-|X| profile bound empirically.
    """
    X = g.check_vertex_set(X)
    seen = {projection_profile(g, X, u, r).finite for u in range(g.n) if u not in X}
    return len(seen)


def projection_closure(
    g: Graph, X: Iterable[int], r: int, c_close: int = DEFAULT_CLOSURE_BOUND
) -> frozenset[int]:
    """Grow X until every outside vertex projects onto at most c_close targets.

    Repeatedly absorbs the outside vertex with the largest projection;
    terminates after at most n additions since the set only grows.
    """
    if c_close < 1:
        raise InvalidArgumentError(f"c_close must be >= 1, got {c_close}")
    closed = set(g.check_vertex_set(X))
    while True:
        worst = None
        worst_size = c_close
        for u in range(g.n):
            if u in closed:
                continue
            size = len(r_projection(g, closed, u, r))
            if size > worst_size:
                worst, worst_size = u, size
        if worst is None:
            return frozenset(closed)
        closed.add(worst)


# ---------------------------------------------------------------------------
# domination and scattering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DominationResult:
    """An r-dominating set D of the query set plus an r-scattered I inside D."""

    radius: int
    dominating: frozenset[int]
    scattered: frozenset[int]


def _greedy_scattered(
    g: Graph, pool: Iterable[int], r: int, removed: frozenset[int] = frozenset()
) -> list[int]:
    """Maximal subset of ``pool`` with pairwise distance >= 2r+1 in g - removed."""
    picks: list[int] = []
    blocked: set[int] = set()
    for v in sorted(set(pool) - removed, key=_greedy_key(g)):
        if v not in blocked:
            picks.append(v)
            blocked |= ball(g, v, 2 * r, removed=removed)
    return picks


def domination_scattered(g: Graph, X: Iterable[int], r: int) -> DominationResult:
    """Greedy r-domination of X seeded by a maximal r-scattered subset of X.

    The scattered set I is built first; D starts as I and is extended by a
    coverage-greedy step until X is within distance r of D.
    """
    X = g.check_vertex_set(X)
    scattered = _greedy_scattered(g, X, r)
    dom = list(scattered)
    covered: set[int] = set()
    for v in dom:
        covered |= ball(g, v, r)
    uncovered = set(X) - covered
    while uncovered:
        candidates = set()
        for x in uncovered:
            candidates |= ball(g, x, r)
        gain = {
            v: len(ball(g, v, r) & uncovered)
            for v in candidates
        }
        best = min(gain, key=lambda v: (-gain[v], -len(g.adj[v]), v))
        dom.append(best)
        covered |= ball(g, best, r)
        uncovered -= covered
    return DominationResult(r, frozenset(dom), frozenset(scattered))


def greedy_dominating(g: Graph, X: Iterable[int], r: int) -> frozenset[int]:
    """Plain coverage-greedy r-dominating set of X (no scattered seed).

    Used by the waterlily pipeline, where seeding would needlessly pull
    members of X into the dominating set and shrink the usable remainder.
    """
    X = g.check_vertex_set(X)
    dom: list[int] = []
    uncovered = set(X)
    while uncovered:
        candidates = set()
        for x in uncovered:
            candidates |= ball(g, x, r)
        gain = {v: len(ball(g, v, r) & uncovered) for v in candidates}
        best = min(gain, key=lambda v: (-gain[v], -len(g.adj[v]), v))
        dom.append(best)
        uncovered -= ball(g, best, r)
    return frozenset(dom)


@dataclass(frozen=True)
class UqwResult:
    """Hub-removal scattering outcome; ``ok`` marks whether the target was met."""

    hubs: frozenset[int]
    scattered: frozenset[int]
    ok: bool


def uqw_scattered(
    g: Graph,
    A: Iterable[int],
    r: int,
    target: int,
    hub_budget: int = DEFAULT_HUB_BUDGET,
) -> UqwResult:
    """Find >= target vertices of A that are r-scattered after removing few hubs.

    Iterated hub removal: when the greedy scattering stalls short of the
    target, the vertex lying inside the most pick balls (ties: higher degree,
    then lower id) is removed and the greedy restarts, up to ``hub_budget``
    removals.  On failure the largest scattered set found is returned.
    """
    A = g.check_vertex_set(A)
    if hub_budget < 0:
        raise InvalidArgumentError(f"hub budget must be >= 0, got {hub_budget}")
    hubs: set[int] = set()
    best: tuple[frozenset[int], frozenset[int]] = (frozenset(), frozenset())
    while True:
        removed = frozenset(hubs)
        picks = _greedy_scattered(g, A, r, removed=removed)
        if len(picks) > len(best[1]):
            best = (removed, frozenset(picks))
        if len(picks) >= target:
            return UqwResult(removed, frozenset(picks), True)
        if len(hubs) >= hub_budget:
            return UqwResult(best[0], best[1], False)
        counts: dict[int, int] = {}
        pick_set = set(picks)
        for b in picks:
            for v in ball(g, b, r, removed=removed):
                if v not in pick_set and v not in hubs:
                    counts[v] = counts.get(v, 0) + 1
        if not counts:
            return UqwResult(best[0], best[1], False)
        hub = min(counts, key=lambda v: (-counts[v], -len(g.adj[v]), v))
        hubs.add(hub)


# ---------------------------------------------------------------------------
# waterlilies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Waterlily:
    """Roots R and centres C with scattered pads that R dominates.

    Invariants (re-checked by ``verify_waterlily``):
      * roots and centres are disjoint,
      * centres are radius-scattered in G - R,
      * every pad vertex lies within ``depth`` of R in G,
      * all centres share one depth-projection profile onto R (uniformity).
    """

    roots: frozenset[int]
    centres: frozenset[int]
    radius: int
    depth: int


@dataclass(frozen=True)
class LilyFailure:
    """Stage report for an unsuccessful waterlily construction."""

    stage: str
    detail: str

    def __bool__(self) -> bool:
        return False


def pad(g: Graph, lily: Waterlily, centre: int) -> frozenset[int]:
    """The pad of a centre: its radius-ball in G minus the roots."""
    if centre not in lily.centres:
        raise InvalidArgumentError(f"vertex {centre} is not a centre")
    return frozenset(ball(g, centre, lily.radius, removed=lily.roots))


def verify_waterlily(g: Graph, lily: Waterlily, A: Optional[frozenset[int]] = None) -> list[str]:
    """Check all structural invariants directly; returns the violations found."""
    problems: list[str] = []
    R, C = lily.roots, lily.centres
    if R & C:
        problems.append(f"roots and centres intersect: {sorted(R & C)}")
    if A is not None and not C <= A:
        problems.append("centres are not a subset of the query set")
    if not C:
        problems.append("no centres")
        return problems
    for c in sorted(C):
        near = ball(g, c, 2 * lily.radius, removed=R)
        if (near & C) - {c}:
            problems.append(f"centre {c} is within {2 * lily.radius} of another centre in G-R")
            break
    dominated = set(bfs_distances(g, sorted(R), max_depth=lily.depth)) if R else set()
    for c in sorted(C):
        missing = ball(g, c, lily.radius, removed=R) - dominated
        if missing:
            problems.append(
                f"pad of centre {c} has vertices not {lily.depth}-dominated by the roots: "
                f"{sorted(missing)[:5]}"
            )
            break
    profiles = {projection_profile(g, R, c, lily.depth).finite for c in C}
    if len(profiles) > 1:
        problems.append("centres do not share a single projection profile onto the roots")
    return problems


def build_waterlily(
    g: Graph,
    A: Iterable[int],
    r: int,
    d: int,
    target: int,
    *,
    c_close: int = DEFAULT_CLOSURE_BOUND,
    hub_budget: int = DEFAULT_HUB_BUDGET,
) -> Waterlily | LilyFailure:
    """Construct a uniform waterlily with >= target centres inside A, or fail.

    Pipeline: greedily d-dominate A, close the dominators under (r+d)-
    projections, split the remainder of A into (r+d)-profile classes, extract
    a scattered subset of the largest class by hub removal, and keep its
    largest uniform d-profile class as the centres.  The result is verified
    invariant by invariant before being returned; any shortfall yields a
    ``LilyFailure`` naming the stage.
    """
    if d > r:
        raise InvalidArgumentError(f"depth {d} exceeds radius {r}")
    if target < 1:
        raise InvalidArgumentError(f"target must be >= 1, got {target}")
    A = g.check_vertex_set(A)
    if not A:
        return LilyFailure("query-set", "the query set is empty")

    dominators = greedy_dominating(g, A, d)
    closed = projection_closure(g, dominators, r + d, c_close)
    remainder = A - closed
    if not remainder:
        return LilyFailure("closure", "the projection closure swallowed the whole query set")

    classes: dict[tuple, list[int]] = {}
    for a in sorted(remainder):
        key = projection_profile(g, closed, a, r + d).finite
        classes.setdefault(key, []).append(a)
    key, members = max(classes.items(), key=lambda kv: (len(kv[1]), -kv[1][0]))
    if len(members) < target:
        return LilyFailure(
            "profile-class",
            f"largest profile class has {len(members)} members, need {target}",
        )
    near_roots = frozenset(v for v, _ in key)

    uqw = uqw_scattered(g, members, r, target, hub_budget)
    if not uqw.ok:
        return LilyFailure(
            "scattering",
            f"hub removal reached {len(uqw.scattered)} scattered vertices, need {target}",
        )
    roots = uqw.hubs | near_roots
    if not roots:
        return LilyFailure("roots", "construction produced an empty root set")

    # keep only centres whose whole pad the roots d-dominate; scatteredness
    # and uniformity survive taking subsets, so this cannot break anything
    dominated = set(bfs_distances(g, sorted(roots), max_depth=d))
    padded = [
        a
        for a in sorted(uqw.scattered)
        if ball(g, a, r, removed=roots) <= dominated
    ]
    if not padded:
        return LilyFailure("pads", "no scattered vertex has a root-dominated pad")

    uniform: dict[tuple, list[int]] = {}
    for a in padded:
        key2 = projection_profile(g, roots, a, d).finite
        uniform.setdefault(key2, []).append(a)
    centres = max(uniform.values(), key=lambda vs: (len(vs), -vs[0]))
    if len(centres) < target:
        return LilyFailure(
            "uniform-class",
            f"largest uniform class has {len(centres)} centres, need {target}",
        )

    lily = Waterlily(frozenset(roots), frozenset(centres), r, d)
    problems = verify_waterlily(g, lily, A)
    if problems:
        return LilyFailure("verification", "; ".join(problems))
    return lily
