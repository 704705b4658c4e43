"""Generator and verifier for the multicoloured-clique reduction.

``build_reduction`` turns a k-partite clique instance into a threshold
instance built from five gadget families (selection, XOR, port, test,
forbidden), with a registry describing the role of every produced vertex, a
modulator whose removal leaves a forest of 2-spiders, and the closed-form
target size.  The reduction is the hardness direction, so the package also
ships the desk-scale verifier ``verify_reduction`` that cross-checks both
directions against the brute-force oracle.

Colour indices i and member indices x are 1-based throughout, matching the
file format and the wiring arithmetic (a port meets the first n-x lights of
a test gadget).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import IO, Iterable, Optional, Union

from .errors import InvalidArgumentError, ParseError, ResourceLimitError
from .graph import Graph, Instance
from .solvers import brute_cap, brute_force_max

Source = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class MccInstance:
    """k-partite graph with uniform colour-class size n; edges join distinct colours."""

    k: int
    n: int
    edges: frozenset[tuple[int, int, int, int]]  # (i, x, j, y), i < j

    @classmethod
    def from_edges(
        cls, k: int, n: int, edges: Iterable[tuple[int, int, int, int]]
    ) -> "MccInstance":
        if k < 2:
            raise InvalidArgumentError(f"need at least two colours, got k={k}")
        if n < 1:
            raise InvalidArgumentError(f"colour classes must be non-empty, got n={n}")
        norm = set()
        for i, x, j, y in edges:
            if i == j:
                raise InvalidArgumentError(f"intra-class edge within colour {i}")
            if i > j:
                i, x, j, y = j, y, i, x
            if not (1 <= i <= k and 1 <= j <= k):
                raise InvalidArgumentError(f"colour out of range 1..{k} in edge {(i, x, j, y)}")
            if not (1 <= x <= n and 1 <= y <= n):
                raise InvalidArgumentError(f"member index out of range 1..{n} in edge {(i, x, j, y)}")
            norm.add((i, x, j, y))
        return cls(k, n, frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def pair_edges(self, i: int, j: int) -> list[tuple[int, int]]:
        """Sorted (x, y) pairs between colours i < j."""
        return sorted((x, y) for (a, x, b, y) in self.edges if (a, b) == (i, j))

    def missing_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j)
            for i, j in combinations(range(1, self.k + 1), 2)
            if not self.pair_edges(i, j)
        )

    def cliques(self) -> list[tuple[int, ...]]:
        """All multicoloured cliques, as member-index tuples (x_1..x_k)."""
        found = []
        for choice in product(range(1, self.n + 1), repeat=self.k):
            if all(
                (i, choice[i - 1], j, choice[j - 1]) in self.edges
                for i, j in combinations(range(1, self.k + 1), 2)
            ):
                found.append(choice)
        return found


def reduction_target_size(k: int, n: int, m: int) -> int:
    """The harmless-set size that encodes a multicoloured clique."""
    if k < 2:
        raise InvalidArgumentError(f"the reduction needs k >= 2 colours, got {k}")
    if n < 1 or m < 0:
        raise InvalidArgumentError(f"bad parameters n={n}, m={m}")
    return comb(k, 2) * (n - 1) + k * n + m


@dataclass(frozen=True)
class VertexRole:
    kind: str  # selection | port | test | apex | global
    gadget: tuple
    role: str  # light | dark | xor | port | apex | forbidden
    local: tuple = ()

    def to_doc(self) -> dict:
        return {
            "kind": self.kind,
            "gadget": list(self.gadget),
            "role": self.role,
            "local": list(self.local),
        }


@dataclass(frozen=True)
class ReductionOutput:
    """Generated instance plus certificates: roles, modulator, target size."""

    instance: Instance
    roles: tuple[VertexRole, ...]
    modulator: tuple[int, ...]
    target: int
    mcc: MccInstance
    missing_pairs: tuple[tuple[int, int], ...] = ()
    index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def degenerate(self) -> bool:
        return bool(self.missing_pairs)

    def vertex(self, *key) -> int:
        try:
            return self.index[key]
        except KeyError:
            raise InvalidArgumentError(f"no vertex with role key {key}") from None

    def selectable_vertices(self) -> frozenset[int]:
        return frozenset(
            v for v, r in enumerate(self.roles) if r.role in ("light", "dark")
        )

    def forbidden_vertices(self) -> frozenset[int]:
        return frozenset(
            v for v, r in enumerate(self.roles) if r.role in ("xor", "port", "apex", "forbidden")
        )

    def xor_pairs(self) -> list[tuple[int, int]]:
        """The (u, v) pairs guarded by an XOR vertex."""
        g = self.instance.graph
        out = []
        for v, r in enumerate(self.roles):
            if r.role == "xor":
                ends = [w for w in g.adj[v] if self.roles[w].role in ("light", "dark")]
                out.append((min(ends), max(ends)))
        return out

    def roles_doc(self) -> dict:
        return {
            "format": "harmlesskit-roles",
            "k": self.mcc.k,
            "n": self.mcc.n,
            "m": self.mcc.m,
            "target": self.target,
            "degenerate": self.degenerate,
            "missing_pairs": [list(p) for p in self.missing_pairs],
            "modulator": list(self.modulator),
            "roles": [r.to_doc() for r in self.roles],
        }


def _degenerate_output(mcc: MccInstance) -> ReductionOutput:
    # A colour pair without edges admits no clique, and the gadget
    # arithmetic assumes every pair has at least one test gadget (for n = 1
    # the full construction would even become unsound).  Emit the canonical
    # two-vertex NO-instance instead: mutually fragile endpoints, so the
    # optimum is 0 < target.
    target = reduction_target_size(mcc.k, mcc.n, mcc.m)
    inst = Instance(Graph.from_edges(2, [(0, 1)]), (1, 1), target)
    roles = (
        VertexRole("global", (), "forbidden", ("no", 0)),
        VertexRole("global", (), "forbidden", ("no", 1)),
    )
    return ReductionOutput(
        instance=inst,
        roles=roles,
        modulator=(),
        target=target,
        mcc=mcc,
        missing_pairs=mcc.missing_pairs(),
        index={},
    )


def build_reduction(mcc: MccInstance) -> ReductionOutput:
    """Construct the gadget instance H for a multicoloured-clique input.

    Vertex order is deterministic (selection gadgets, then per colour pair
    the ports, test gadgets and apex, then the global forbidden pair), so
    outputs are byte-reproducible.
    """
    if mcc.missing_pairs():
        return _degenerate_output(mcc)

    k, n = mcc.k, mcc.n
    ids: dict = {}
    roles: list[VertexRole] = []
    thresholds: list[int] = []
    edges: list[tuple[int, int]] = []

    def add(role: VertexRole, threshold: int, *key) -> int:
        v = len(roles)
        roles.append(role)
        thresholds.append(threshold)
        ids[key] = v
        return v

    forbidden: list[int] = []

    for i in range(1, k + 1):
        for s in range(1, n + 1):
            add(VertexRole("selection", (i,), "light", (s,)), 1, "sel-light", i, s)
        for s in range(1, n + 1):
            add(VertexRole("selection", (i,), "dark", (s,)), 1, "sel-dark", i, s)
        for s in range(1, n + 1):
            x = add(VertexRole("selection", (i,), "xor", (s,)), 2, "sel-xor", i, s)
            edges.append((x, ids["sel-light", i, s]))
            edges.append((x, ids["sel-dark", i, s]))
            forbidden.append(x)

    ports: list[int] = []
    apexes: list[int] = []
    for i, j in combinations(range(1, k + 1), 2):
        for sign, col in (("+", i), ("-", i), ("+", j), ("-", j)):
            pv = add(VertexRole("port", (i, j), "port", (sign, col)), n + 1, "port", i, j, sign, col)
            ports.append(pv)
            forbidden.append(pv)
            kind = "sel-light" if sign == "+" else "sel-dark"
            for s in range(1, n + 1):
                edges.append((pv, ids[kind, col, s]))
        for x, y in mcc.pair_edges(i, j):
            for s in range(1, n + 1):
                add(VertexRole("test", (i, j, x, y), "light", (s,)), 1, "test-light", i, j, x, y, s)
            dark = add(VertexRole("test", (i, j, x, y), "dark", ()), 1, "test-dark", i, j, x, y)
            for s in range(1, n + 1):
                xv = add(VertexRole("test", (i, j, x, y), "xor", (s,)), 2, "test-xor", i, j, x, y, s)
                edges.append((xv, ids["test-light", i, j, x, y, s]))
                edges.append((xv, dark))
                forbidden.append(xv)
            # the port facing colour i meets the first n-x lights, its twin
            # the remaining x; symmetrically for colour j with y
            for col, sel in ((i, x), (j, y)):
                for s in range(1, n + 1):
                    sign = "+" if s <= n - sel else "-"
                    edges.append((ids["port", i, j, sign, col], ids["test-light", i, j, x, y, s]))
        apex = add(VertexRole("apex", (i, j), "apex", ()), n + 1, "apex", i, j)
        apexes.append(apex)
        forbidden.append(apex)
        for x, y in mcc.pair_edges(i, j):
            for s in range(1, n + 1):
                edges.append((apex, ids["test-light", i, j, x, y, s]))

    a_f = add(VertexRole("global", (), "forbidden", ("a",)), 1, "a_F")
    b_f = add(VertexRole("global", (), "forbidden", ("b",)), 1, "b_F")
    for v in forbidden:
        edges.append((a_f, v))
    edges.append((a_f, b_f))

    target = reduction_target_size(k, n, mcc.m)
    inst = Instance(Graph.from_edges(len(roles), edges), tuple(thresholds), target)
    modulator = tuple(sorted(ports + apexes + [a_f]))
    return ReductionOutput(
        instance=inst,
        roles=tuple(roles),
        modulator=modulator,
        target=target,
        mcc=mcc,
        missing_pairs=(),
        index=ids,
    )


def construct_clique_solution(out: ReductionOutput, indices: Iterable[int]) -> frozenset[int]:
    """The canonical harmless set encoding a given multicoloured clique.

    Selection gadget i contributes its first x_i lights and remaining darks;
    the test gadget of every clique edge contributes all its lights, every
    other test gadget its dark vertex.  The result has exactly the target
    size and is harmless by the budget arithmetic of the ports.
    """
    mcc = out.mcc
    indices = tuple(indices)
    if len(indices) != mcc.k:
        raise InvalidArgumentError(f"expected {mcc.k} clique indices, got {len(indices)}")
    if any(not 1 <= x <= mcc.n for x in indices):
        raise InvalidArgumentError(f"clique indices out of range 1..{mcc.n}: {indices}")
    for i, j in combinations(range(1, mcc.k + 1), 2):
        if (i, indices[i - 1], j, indices[j - 1]) not in mcc.edges:
            raise InvalidArgumentError(
                f"indices do not form a clique: colours {i},{j} miss edge "
                f"({indices[i - 1]}, {indices[j - 1]})"
            )
    chosen: set[int] = set()
    for i in range(1, mcc.k + 1):
        x = indices[i - 1]
        for s in range(1, x + 1):
            chosen.add(out.vertex("sel-light", i, s))
        for s in range(x + 1, mcc.n + 1):
            chosen.add(out.vertex("sel-dark", i, s))
    for i, j in combinations(range(1, mcc.k + 1), 2):
        active = (indices[i - 1], indices[j - 1])
        for x, y in mcc.pair_edges(i, j):
            if (x, y) == active:
                for s in range(1, mcc.n + 1):
                    chosen.add(out.vertex("test-light", i, j, x, y, s))
            else:
                chosen.add(out.vertex("test-dark", i, j, x, y))
    return frozenset(chosen)


def modulator_set(out: ReductionOutput) -> frozenset[int]:
    """The deletion set to a 2-spider forest: all ports, all apexes, and a_F."""
    return frozenset(out.modulator)


def is_2_spider_forest(g: Graph) -> bool:
    """Every component is a star with edges subdivided at most once.

    Equivalently each component is a tree admitting a centre such that all
    vertices lie within distance two, distance-two vertices are leaves, and
    distance-one vertices have degree at most two.
    """
    seen = [False] * g.n
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = [start]
        while queue:
            u = queue.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        edge_count = sum(len(g.adj[u]) for u in comp) // 2
        if edge_count != len(comp) - 1:
            return False  # a cycle
        if not any(_is_spider_centre(g, c, comp) for c in comp):
            return False
    return True


def _is_spider_centre(g: Graph, c: int, comp: list[int]) -> bool:
    depth = {c: 0}
    frontier = [c]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    nxt.append(w)
        frontier = nxt
    for u in comp:
        d = depth.get(u)
        if d is None or d > 2:
            return False
        if d == 2 and len(g.adj[u]) != 1:
            return False
        if d == 1 and len(g.adj[u]) > 2:
            return False
    return True


@dataclass(frozen=True)
class ReductionReport:
    """Desk-scale cross-check of both reduction directions."""

    k: int
    n: int
    m: int
    target: int
    degenerate: bool
    clique_count: int
    optimum: int
    witness: tuple[int, ...]
    equivalence_ok: bool
    forbidden_ok: bool

    @property
    def clique_exists(self) -> bool:
        return self.clique_count > 0

    @property
    def ok(self) -> bool:
        return self.equivalence_ok and self.forbidden_ok

    def to_doc(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "target": self.target,
            "degenerate": self.degenerate,
            "clique_count": self.clique_count,
            "optimum": self.optimum,
            "witness": list(self.witness),
            "equivalence_ok": self.equivalence_ok,
            "forbidden_ok": self.forbidden_ok,
        }


def verify_reduction(
    mcc: MccInstance, *, cap: Optional[int] = None, backend: Optional[str] = None
) -> ReductionReport:
    """Check clique existence against the oracle optimum of the generated H.

    A clique must exist iff the oracle finds a harmless set of the target
    size, and no oracle witness may touch a forbidden vertex.
    """
    out = build_reduction(mcc)
    cap = brute_cap(cap)
    selectable = out.selectable_vertices()
    if len(selectable) > cap:
        raise ResourceLimitError(
            f"{len(selectable)} selectable vertices exceed the verification cap {cap}"
        )
    optimum, witness = brute_force_max(out.instance, cap=cap, backend=backend)
    cliques = mcc.cliques()
    return ReductionReport(
        k=mcc.k,
        n=mcc.n,
        m=mcc.m,
        target=out.target,
        degenerate=out.degenerate,
        clique_count=len(cliques),
        optimum=optimum,
        witness=tuple(sorted(witness)),
        equivalence_ok=(optimum >= out.target) == bool(cliques),
        forbidden_ok=not (witness & out.forbidden_vertices()),
    )


# ---------------------------------------------------------------------------
# multicoloured-clique file format
# ---------------------------------------------------------------------------

def load_mcc(source: Source) -> MccInstance:
    """Parse ``p mcc <k> <n>`` plus ``e <i> <x> <j> <y>`` edge lines."""
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text().splitlines()
    else:
        lines = source.read().splitlines()
    k = n = None
    edges: list[tuple[int, int, int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if k is not None:
                raise ParseError("duplicate problem header", lineno)
            if len(parts) != 4 or parts[1] != "mcc":
                raise ParseError(f"malformed header {line!r}, expected 'p mcc <k> <n>'", lineno)
            try:
                k, n = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("colour count and class size must be integers", lineno) from None
        elif parts[0] == "e":
            if k is None:
                raise ParseError("edge line before the problem header", lineno)
            if len(parts) != 5:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                i, x, j, y = (int(p) for p in parts[1:])
            except ValueError:
                raise ParseError("edge fields must be integers", lineno) from None
            edges.append((i, x, j, y))
        else:
            raise ParseError(f"unknown line tag {parts[0]!r}", lineno)
    if k is None:
        raise ParseError("missing 'p mcc <k> <n>' header")
    try:
        return MccInstance.from_edges(k, n, edges)
    except InvalidArgumentError as exc:
        raise ParseError(str(exc)) from None


def save_mcc(mcc: MccInstance, target: Source, *, comment: str | None = None) -> None:
    out = []
    if comment:
        out.append(f"c {comment}")
    out.append(f"p mcc {mcc.k} {mcc.n}")
    for i, x, j, y in sorted(mcc.edges):
        out.append(f"e {i} {x} {j} {y}")
    text = "\n".join(out) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text)
    else:
        target.write(text)
