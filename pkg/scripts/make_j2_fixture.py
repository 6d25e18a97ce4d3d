"""Generate the J2 fixtures (degree-100 generators and the L/R witness).

J2 is built as the derived subgroup of the automorphism group of the
Hall-Janko graph srg(100, 36, 14, 12), assembled from U3(3):

  * one vertex ``inf``;
  * the 36 subgroups PSL(2, 7) of U3(3), joined to ``inf`` and to each other
    when they meet in a subgroup of order 24;
  * the 63 involutions of U3(3), joined to the subgroups containing them and
    to each other when their product has order 4.

An automorphism moving ``inf`` is found with VF2, so the full group is
U3(3) plus that element.  The witness search then picks an involution x in
class 2B and elements l in 3A, r in 3B inverted by x with <l, r, x> = J2.

Usage: python scripts/make_j2_fixture.py [--out DIR]
"""

from __future__ import annotations

import argparse
import itertools
from pathlib import Path

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from arclab.fields import FiniteField
from arclab.groups import data_dir, save_generators
from arclab.perm import (
    PermGroup,
    Permutation,
    _compose,
    _invert,
    centralizer_order,
    conjugacy_class,
    derived_subgroup,
)

J2_ORDER = 604800


def _unitary_group_on_isotropic_points() -> PermGroup:
    """SU(3, 3) acting on the 28 isotropic points of the Hermitian form."""
    F = FiniteField(9)

    def conj(a):
        return F.pow(a, 3)

    def dot(xs):
        s = 0
        for x in xs:
            s = F.add(s, x)
        return s

    def mat_mul(A, B):
        return [[dot(F.mul(A[i][t], B[t][j]) for t in range(3)) for j in range(3)] for i in range(3)]

    J = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]

    def unitary(M):
        star = [[conj(M[j][i]) for j in range(3)] for i in range(3)]
        return mat_mul(mat_mul(M, J), star) == J

    def herm(u, v):
        return dot(F.mul(u[i], conj(v[2 - i])) for i in range(3))

    def normalize(v):
        lead = F.inv(next(x for x in v if x))
        return tuple(F.mul(x, lead) for x in v)

    points = [v for v in itertools.product(range(9), repeat=3)
              if any(v) and next(x for x in v if x) == 1 and herm(v, v) == 0]
    index = {p: i for i, p in enumerate(points)}

    def act(M):
        return Permutation([
            index[normalize(tuple(dot(F.mul(v[t], M[t][j]) for t in range(3)) for j in range(3)))] + 1
            for v in points
        ])

    # opposite unipotent radicals generate SU(3, 3)
    gens = set()
    for a, b, c in itertools.product(range(9), repeat=3):
        if (a, b, c) == (0, 0, 0):
            continue
        for M in ([[1, a, b], [0, 1, c], [0, 0, 1]], [[1, 0, 0], [a, 1, 0], [b, c, 1]]):
            if unitary(M):
                gens.add(act(M))
    U = PermGroup(sorted(gens), len(points))
    assert U.order() == 6048, U.order()
    return U


def _psl27_subgroups(U: PermGroup) -> list[frozenset]:
    elems = [Permutation._wrap(r) for r in U.chain.iter_raw()]
    a = next(e for e in elems if e.order() == 2)
    first = None
    for b in elems:
        if b.order() == 3 and (a * b).order() == 7 and (a.inverse() * b.inverse() * a * b).order() == 4:
            S = PermGroup([a, b], U.degree)
            if S.order() == 168:
                first = frozenset(S.chain.iter_raw())
                break
    subs, seen = [first], {first}
    for S in subs:
        for g in U.generators:
            gr, gi = g.raw, _invert(g.raw)
            T = frozenset(_compose(_compose(gi, x), gr) for x in S)
            if T not in seen:
                seen.add(T)
                subs.append(T)
    assert len(subs) == 36, len(subs)
    return subs


def hall_janko_j2() -> PermGroup:
    U = _unitary_group_on_isotropic_points()
    subs = _psl27_subgroups(U)
    invs = sorted(Permutation._wrap(r) for r in U.chain.iter_raw() if Permutation._wrap(r).order() == 2)
    inv_raw = [t.raw for t in invs]
    assert len(invs) == 63

    G = nx.Graph()
    G.add_nodes_from(range(100))
    for i, S in enumerate(subs):
        G.add_edge(0, 1 + i)
        for j in range(i + 1, 36):
            if len(S & subs[j]) == 24:
                G.add_edge(1 + i, 1 + j)
        for t, tr in enumerate(inv_raw):
            if tr in S:
                G.add_edge(1 + i, 37 + t)
    for s, t in itertools.combinations(range(63), 2):
        if (invs[s] * invs[t]).order() == 4:
            G.add_edge(37 + s, 37 + t)
    _check_srg(G, 100, 36, 14, 12)

    sub_index = {S: i for i, S in enumerate(subs)}
    inv_index = {tr: i for i, tr in enumerate(inv_raw)}

    def induced(u: Permutation) -> Permutation:
        ur, ui = u.raw, _invert(u.raw)
        img = [0] * 100
        for i, S in enumerate(subs):
            img[1 + i] = 1 + sub_index[frozenset(_compose(_compose(ui, x), ur) for x in S)]
        for t, tr in enumerate(inv_raw):
            img[37 + t] = 37 + inv_index[_compose(_compose(ui, tr), ur)]
        return Permutation([x + 1 for x in img])

    G1, G2 = G.copy(), G.copy()
    nx.set_node_attributes(G1, {v: v == 0 for v in G1}, "mark")
    nx.set_node_attributes(G2, {v: v == 1 for v in G2}, "mark")
    iso = next(GraphMatcher(G1, G2, node_match=lambda a, b: a["mark"] == b["mark"]).isomorphisms_iter())
    mover = Permutation([iso[v] + 1 for v in range(100)])

    gens = [induced(u) for u in U.generators] + [mover]
    for p in gens:
        assert all(G.has_edge(p.raw[a], p.raw[b]) for a, b in G.edges())
    aut = PermGroup(gens, 100)
    assert aut.order() == 2 * J2_ORDER, aut.order()
    J = derived_subgroup(aut)
    assert J.order() == J2_ORDER
    return J


def _check_srg(G: nx.Graph, n: int, k: int, lam: int, mu: int) -> None:
    assert G.number_of_nodes() == n
    assert all(d == k for _, d in G.degree())
    nbrs = {v: set(G[v]) for v in G}
    for u, v in itertools.combinations(range(n), 2):
        common = len(nbrs[u] & nbrs[v])
        assert common == (lam if v in nbrs[u] else mu)


def find_witness(J: PermGroup) -> tuple[Permutation, Permutation, Permutation]:
    reps = {}
    for r in J.chain.iter_raw():
        p = Permutation._wrap(r)
        o = p.order()
        if o in (2, 3):
            reps.setdefault((o, centralizer_order(J, p)), p)
        if {(2, 240), (3, 1080), (3, 36)} <= reps.keys():
            break
    x = reps[(2, 240)]
    xr = x.raw

    def inverted(r):
        return _compose(_compose(xr, r), xr) == _invert(r)

    ls = sorted(Permutation._wrap(r) for r in conjugacy_class(J, reps[(3, 1080)]) if inverted(r))
    rs = sorted(Permutation._wrap(r) for r in conjugacy_class(J, reps[(3, 36)]) if inverted(r))
    for l in ls:
        for r in rs:
            if PermGroup([l, r, x], J.degree).order() == J2_ORDER:
                return l, r, x
    raise RuntimeError("no generating witness found")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=data_dir())
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    J = hall_janko_j2()
    save_generators(J, args.out / "j2.txt",
                    "J2 on the 100 vertices of the Hall-Janko graph (scripts/make_j2_fixture.py)")
    l, r, x = find_witness(J)
    save_generators(PermGroup([l, r, x], 100), args.out / "j2_witness.txt",
                    "witness l (3A), r (3B), x (2B): L = <l, x>, R = <r, x>, both S_3")
    print(f"wrote {args.out / 'j2.txt'} and {args.out / 'j2_witness.txt'}")


if __name__ == "__main__":
    main()
