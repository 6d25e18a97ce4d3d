"""s-arcs and the two routes to local s-arc-transitivity.

The direct route counts orbits of each vertex stabilizer on the s-arcs that
start at a representative vertex.  The amalgam route only needs the two
coset actions ``L`` on ``[L : L∩R]`` and ``R`` on ``[R : L∩R]``: the coset
graph is locally 2-arc-transitive exactly when both are 2-transitive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from arclab.cosets import CosetGraph, Graph, coset_action, DEFAULT_MAX_INDEX
from arclab.perm import (
    DEFAULT_MAX_ENUM,
    GroupError,
    PermGroup,
    ThresholdError,
    intersect_small,
    is_k_transitive,
)

DEFAULT_MAX_ARCS = 10**7


def enumerate_arcs(g: Graph, start: int, s: int, limit: int | None = None) -> list[tuple[int, ...]]:
    """All s-arcs from ``start`` in depth-first order."""
    if s < 1:
        raise GroupError("s must be at least 1")
    adj = g.adjacency
    out: list[tuple[int, ...]] = []
    path = [start]

    def extend(depth: int) -> None:
        if depth == s:
            out.append(tuple(path))
            if limit is not None and len(out) > limit:
                raise ThresholdError(f"more than {limit} arcs; use the amalgam route")
            return
        prev = path[-2] if depth >= 1 else None
        for w in adj[path[-1]]:
            if w != prev:
                path.append(w)
                extend(depth + 1)
                path.pop()

    extend(0)
    return out


def is_arc(g: Graph, seq: tuple[int, ...]) -> bool:
    if len(seq) < 2:
        return False
    if any(not g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
        return False
    return all(seq[i] != seq[i + 2] for i in range(len(seq) - 2))


@dataclass(frozen=True)
class OrbitResult:
    vertex: int
    arc_count: int
    orbit_count: int


@dataclass(frozen=True)
class LocalTransitivityReport:
    s: int
    method: str
    per_orbit: tuple[OrbitResult, ...] = ()
    verdict: bool = False
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "method": self.method,
            "verdict": self.verdict,
            "per_orbit": [
                {"vertex": r.vertex, "arcs": r.arc_count, "orbits": r.orbit_count} for r in self.per_orbit
            ],
        }


def _arc_orbit_count(arcs: list[tuple[int, ...]], gens: list[tuple]) -> int:
    index = {a: i for i, a in enumerate(arcs)}
    seen = [False] * len(arcs)
    count = 0
    for i in range(len(arcs)):
        if seen[i]:
            continue
        count += 1
        seen[i] = True
        queue = deque([arcs[i]])
        while queue:
            a = queue.popleft()
            for g in gens:
                j = index[tuple(g[v] for v in a)]
                if not seen[j]:
                    seen[j] = True
                    queue.append(arcs[j])
    return count


def _vertex_orbit_representatives(group: PermGroup) -> list[int]:
    return [orb[0] - 1 for orb in group.orbits()]


def direct_report(
    g: Graph | CosetGraph,
    s: int,
    group: PermGroup | None = None,
    max_arcs: int = DEFAULT_MAX_ARCS,
) -> LocalTransitivityReport:
    """Orbits of G_α on s-arcs from α, for one α per G-orbit on vertices."""
    if isinstance(g, CosetGraph):
        graph, group = g.graph, group or g.group_action
    else:
        graph = g
    if group is None:
        raise GroupError("an acting group is needed")
    if group.degree != graph.n:
        raise GroupError("group degree must equal the vertex count")
    results = []
    for v in _vertex_orbit_representatives(group):
        arcs = enumerate_arcs(graph, v, s, max_arcs)
        stab = [h.raw for h in group.stabilizer([v + 1]).generators]
        results.append(OrbitResult(v, len(arcs), _arc_orbit_count(arcs, stab) if arcs else 0))
    verdict = all(r.orbit_count <= 1 for r in results)
    return LocalTransitivityReport(s, "direct", tuple(results), verdict)


def is_locally_s_arc_transitive_direct(
    g: Graph | CosetGraph, s: int, group: PermGroup | None = None, max_arcs: int = DEFAULT_MAX_ARCS
) -> LocalTransitivityReport:
    return direct_report(g, s, group, max_arcs)


def _two_transitive_or_small(action: PermGroup) -> bool:
    # fewer than 2 points: no pairs to separate, so 2-transitivity holds vacuously
    if action.degree < 2:
        return True
    return is_k_transitive(action, 2)


@dataclass(frozen=True)
class AmalgamCheck:
    left_degree: int
    right_degree: int
    left_2transitive: bool
    right_2transitive: bool

    @property
    def verdict(self) -> bool:
        return self.left_2transitive and self.right_2transitive

    def report(self) -> LocalTransitivityReport:
        return LocalTransitivityReport(2, "amalgam", (), self.verdict,
                                       (f"L on {self.left_degree} cosets, R on {self.right_degree} cosets",))


def amalgam_check(
    L: PermGroup,
    R: PermGroup,
    common: PermGroup,
    max_index: int = DEFAULT_MAX_INDEX,
    max_enum: int = DEFAULT_MAX_ENUM,
) -> AmalgamCheck:
    if not (common.is_subgroup_of(L) and common.is_subgroup_of(R)):
        raise GroupError("the common subgroup is not contained in both L and R")
    if intersect_small(L, R, max_enum).order() != common.order():
        raise GroupError("the common subgroup is not L ∩ R")
    left = coset_action(L, common, max_index).action
    right = coset_action(R, common, max_index).action
    return AmalgamCheck(left.degree, right.degree, _two_transitive_or_small(left), _two_transitive_or_small(right))


def is_locally_2at_amalgam(L: PermGroup, R: PermGroup, common: PermGroup, **limits) -> bool:
    return amalgam_check(L, R, common, **limits).verdict


def max_local_s(
    g: Graph | CosetGraph, bound: int = 9, group: PermGroup | None = None, max_arcs: int = DEFAULT_MAX_ARCS
) -> int:
    """Largest s <= bound with a true direct verdict, stopping at the first failure."""
    best = 0
    for s in range(1, bound + 1):
        if not direct_report(g, s, group, max_arcs).verdict:
            break
        best = s
    return best
