"""Right-coset actions, bipartite coset graphs, double covers and quotients.

Both vertex sets of a coset graph are right cosets ``Lx`` and ``Ry`` with G
acting by right multiplication.  ``Lx`` and ``Ry`` are adjacent exactly when
they intersect, equivalently when ``x y^-1`` lies in ``LR``.

Graph vertices are 0-based integers.  A group acting on a graph with n
vertices is a PermGroup of degree n whose point ``v + 1`` is vertex ``v``,
so raw (0-based) tuples act on vertices directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from arclab.perm import (
    DEFAULT_MAX_ENUM,
    GroupError,
    Permutation,
    PermGroup,
    Raw,
    ThresholdError,
    _compose,
    intersect_small,
)

DEFAULT_MAX_INDEX = 10**6


class InconsistencyError(GroupError):
    """Two independent computations of the same fact disagree."""


# ---------------------------------------------------------------------------
# coset actions


class _CosetKeyer:
    """Canonical keys for right cosets ``Hc`` of H in G.

    H's chain uses G's base as a prefix.  Walking down the chain and at each
    level choosing the transversal element that minimizes the image of that
    level's base point yields the element of ``Hc`` with lexicographically
    least base image; that image sequence is the key.
    """

    def __init__(self, G: PermGroup, H: PermGroup):
        base = [b - 1 for b in G.chain.base]
        chain = H.chain_with_base([b + 1 for b in base])
        self.base = base
        self.levels = [(lv.point, lv.orbit, lv.trans) for lv in chain._levels]

    def canonical(self, c: Raw) -> Raw:
        for point, orbit, trans in self.levels:
            best = min(orbit, key=c.__getitem__)
            if best != point:
                c = _compose(trans[best], c)
        return c

    def key(self, c: Raw) -> tuple[int, ...]:
        return tuple(c[b] for b in self.base)


@dataclass(frozen=True)
class CosetAction:
    """G acting on the right cosets of H; coset ``i`` is point ``i + 1``."""

    parent: PermGroup
    subgroup: PermGroup
    representatives: tuple[Permutation, ...]
    action: PermGroup
    _index: dict = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.representatives)

    @cached_property
    def kernel_is_trivial(self) -> bool:
        return self.action.order() == self.parent.order()

    def kernel_order(self) -> int:
        return self.parent.order() // self.action.order()

    def coset_of(self, g: Permutation) -> int:
        """Point (1-based) of the coset ``H g``."""
        keyer = self._index["keyer"]
        return self._index["keys"][keyer.key(keyer.canonical(g.raw))] + 1

    def image(self, g: Permutation) -> Permutation:
        """The permutation induced by ``g`` on the cosets."""
        return Permutation([self.coset_of(r * g) for r in self.representatives])


def coset_action(G: PermGroup, H: PermGroup, max_index: int = DEFAULT_MAX_INDEX) -> CosetAction:
    if H.degree != G.degree or not H.is_subgroup_of(G):
        raise GroupError("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > max_index:
        raise ThresholdError(f"index {index} exceeds the threshold {max_index}")
    keyer = _CosetKeyer(G, H)
    ident = tuple(range(G.degree))
    start = keyer.canonical(ident)
    reps = [start]
    keys = {keyer.key(start): 0}
    gens = [g.raw for g in G.generators]
    images = [[0] * index for _ in gens]
    i = 0
    while i < len(reps):
        rep = reps[i]
        for gi, g in enumerate(gens):
            c = keyer.canonical(_compose(rep, g))
            k = keyer.key(c)
            j = keys.get(k)
            if j is None:
                j = len(reps)
                keys[k] = j
                reps.append(c)
            images[gi][i] = j + 1
        i += 1
    if len(reps) != index:
        raise InconsistencyError(f"found {len(reps)} cosets, expected {index}")
    action = PermGroup([Permutation(img) for img in images], index)
    return CosetAction(
        G, H, tuple(Permutation._wrap(r) for r in reps), action, {"keyer": keyer, "keys": keys}
    )


# ---------------------------------------------------------------------------
# plain graphs


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __post_init__(self):
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise GroupError(f"loop at vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise GroupError(f"edge ({a}, {b}) out of range")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise GroupError(f"repeated edge {e}")
            seen.add(e)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], bipartition=None) -> Graph:
        return cls(n, tuple(sorted((min(a, b), max(a, b)) for a, b in edges)), bipartition)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def two_colouring(self) -> list[int] | None:
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if colour[w] < 0:
                        colour[w] = 1 - colour[v]
                        queue.append(w)
                    elif colour[w] == colour[v]:
                        return None
        return colour

    def is_bipartite(self) -> bool:
        return self.two_colouring() is not None

    def is_automorphism(self, g: Raw) -> bool:
        return all(self.has_edge(g[a], g[b]) for a, b in self.edges)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)],
                            (tuple(range(a)), tuple(range(a, a + b))))


def double_cover(g: Graph) -> Graph:
    """Standard double cover: ``(v, i)`` is vertex ``v + i * n``."""
    n = g.n
    edges = []
    for a, b in g.edges:
        edges.append((a, b + n))
        edges.append((b, a + n))
    return Graph.from_edges(2 * n, edges, (tuple(range(n)), tuple(range(n, 2 * n))))


def quotient_graph(g: Graph, partition: Sequence[Iterable[int]]) -> Graph:
    """Parts become vertices; parts are adjacent when some edge joins them."""
    part_of = [-1] * g.n
    parts = [tuple(p) for p in partition]
    for i, p in enumerate(parts):
        if not p:
            raise GroupError("empty part")
        for v in p:
            if not 0 <= v < g.n:
                raise GroupError(f"vertex {v} out of range")
            if part_of[v] >= 0:
                raise GroupError(f"vertex {v} lies in two parts")
            part_of[v] = i
    if -1 in part_of:
        raise GroupError(f"vertex {part_of.index(-1)} is in no part")
    edges = {(min(part_of[a], part_of[b]), max(part_of[a], part_of[b]))
             for a, b in g.edges if part_of[a] != part_of[b]}
    return Graph.from_edges(len(parts), edges)


# ---------------------------------------------------------------------------
# coset graphs


@dataclass(frozen=True)
class CosetGraph:
    """Cos(G, L, R): left vertices ``0..|G:L|-1``, right vertices after them."""

    graph: Graph
    left: CosetAction
    right: CosetAction
    common: PermGroup
    group_action: PermGroup

    @property
    def parent(self) -> PermGroup:
        return self.left.parent

    @property
    def amalgam(self) -> tuple[PermGroup, PermGroup, PermGroup]:
        return self.left.subgroup, self.right.subgroup, self.common

    @property
    def left_count(self) -> int:
        return self.left.degree

    @property
    def right_count(self) -> int:
        return self.right.degree

    @property
    def edge_count(self) -> int:
        return len(self.graph.edges)

    @property
    def valencies(self) -> tuple[int, int]:
        c = self.common.order()
        return self.left.subgroup.order() // c, self.right.subgroup.order() // c

    @property
    def left_vertex(self) -> int:
        return 0

    @property
    def right_vertex(self) -> int:
        return self.left_count


def build_coset_graph(
    G: PermGroup,
    L: PermGroup,
    R: PermGroup,
    max_index: int = DEFAULT_MAX_INDEX,
    max_enum: int = DEFAULT_MAX_ENUM,
) -> CosetGraph:
    """Edges are the G-orbit of the seed edge ``{L, R}``."""
    for name, H in (("L", L), ("R", R)):
        if not H.is_subgroup_of(G):
            raise GroupError(f"{name} is not a subgroup of G")
        if H.order() == G.order():
            raise GroupError(f"{name} must be a proper subgroup")
    left = coset_action(G, L, max_index)
    right = coset_action(G, R, max_index)
    common = intersect_small(L, R, max_enum)
    nl = left.degree
    combined = []
    for a, b in zip(left.action.generators, right.action.generators):
        combined.append(tuple(a.raw) + tuple(nl + y for y in b.raw))
    expected = G.order() // common.order()
    seed = (0, nl)
    seen = {seed}
    queue = deque([seed])
    while queue:
        x, y = queue.popleft()
        for g in combined:
            e = (g[x], g[y])
            if e not in seen:
                seen.add(e)
                queue.append(e)
    if len(seen) != expected:
        raise InconsistencyError(f"edge orbit has {len(seen)} edges, expected |G:L∩R| = {expected}")
    graph = Graph(nl + right.degree, tuple(sorted(seen)),
                  (tuple(range(nl)), tuple(range(nl, nl + right.degree))))
    action = PermGroup([Permutation._wrap(g) for g in combined], graph.n)
    return CosetGraph(graph, left, right, common, action)


def generates(G: PermGroup, L: PermGroup, R: PermGroup) -> bool:
    return PermGroup(list(L.generators) + list(R.generators), G.degree).order() == G.order()


def is_connected(cg: CosetGraph) -> bool:
    """Breadth-first connectivity, cross-checked against ``<L, R> = G``."""
    bfs = cg.graph.is_connected()
    L, R, _ = cg.amalgam
    if bfs != generates(cg.parent, L, R):
        raise InconsistencyError("connectivity disagrees with generation")
    return bfs


# ---------------------------------------------------------------------------
# export


def to_dot(g: Graph | CosetGraph, name: str = "coset_graph", left_count: int | None = None) -> str:
    """DOT text; a bipartition is drawn as two ranks.

    With ``left_count`` (taken from a CosetGraph automatically) vertices are
    labelled ``L<i>`` and ``R<j>``, otherwise ``v<i>``.
    """
    if isinstance(g, CosetGraph):
        graph, left_count = g.graph, g.left_count
    else:
        graph = g
    if left_count is not None:
        def label(v):
            return f"L{v}" if v < left_count else f"R{v - left_count}"
    else:
        def label(v):
            return f"v{v}"
    lines = [f"graph {name} {{"]
    if graph.bipartition is not None:
        for side, part in zip(("left", "right"), graph.bipartition):
            lines.append(f"  subgraph {side} {{ rank=same; {' '.join(label(v) + ';' for v in part)} }}")
    else:
        for v in range(graph.n):
            lines.append(f"  {label(v)};")
    for a, b in graph.edges:
        lines.append(f"  {label(a)} -- {label(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_summary(cg: CosetGraph) -> dict:
    L, R, C = cg.amalgam
    return {
        "left_count": cg.left_count,
        "right_count": cg.right_count,
        "edge_count": cg.edge_count,
        "valencies": list(cg.valencies),
        "connected": cg.graph.is_connected(),
        "amalgam_orders": [L.order(), R.order(), C.order()],
        "group_order": cg.parent.order(),
    }


def graph_document(cg: CosetGraph, extra: dict | None = None) -> dict:
    doc = {"schema": 1, **graph_summary(cg)}
    doc["vertices"] = cg.graph.n
    doc["bipartition"] = [list(p) for p in cg.graph.bipartition]
    doc["edges"] = [list(e) for e in cg.graph.edges]
    if extra:
        doc.update(extra)
    return doc


def graph_from_document(doc: dict) -> tuple[Graph, int]:
    """Rebuild the graph and its left vertex count from :func:`graph_document` output."""
    if doc.get("schema") != 1:
        raise GroupError("unsupported graph document schema")
    try:
        n = int(doc["vertices"])
        parts = tuple(tuple(int(v) for v in p) for p in doc["bipartition"])
        edges = [(int(a), int(b)) for a, b in doc["edges"]]
        left = int(doc["left_count"])
    except (KeyError, TypeError, ValueError) as e:
        raise GroupError(f"malformed graph document: {e}") from None
    return Graph.from_edges(n, edges, parts), left
