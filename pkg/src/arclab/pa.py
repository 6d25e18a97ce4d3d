"""Product structure bookkeeping and diagonal classification.

Groups live in the imprimitive realization of ``H Wr S_k`` (see
:class:`arclab.groups.WreathEmbedding`).  A stabilizer inside the base part
``H^k`` is straight diagonal when every generator has equal coordinates,
twisted diagonal when it still projects isomorphically (by order) onto
every coordinate, and nondiagonal otherwise.  Verdicts are relative to the
coordinate embedding and basepoint in use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from arclab.groups import WreathEmbedding, wreath_decompose, wreath_element
from arclab.perm import (
    DEFAULT_MAX_ENUM,
    BlockSystem,
    GroupError,
    Permutation,
    PermGroup,
    intersect_small,
)


@dataclass(frozen=True)
class ProductGroup:
    underlying: PermGroup
    k: int
    m: int

    @classmethod
    def from_embedding(cls, emb: WreathEmbedding, group: PermGroup | None = None) -> ProductGroup:
        return cls(group if group is not None else emb.group, emb.k, emb.m)

    def coordinate_blocks(self) -> BlockSystem:
        m = self.m
        return BlockSystem(tuple(tuple(range(i * m + 1, (i + 1) * m + 1)) for i in range(self.k)))

    def decompose(self, p: Permutation) -> tuple[list[Permutation], Permutation]:
        return wreath_decompose(self.m, self.k, p)

    def factor_map(self, p: Permutation) -> Permutation:
        return self.decompose(p)[1]

    def factor_image(self, group: PermGroup | None = None) -> PermGroup:
        group = group or self.underlying
        return PermGroup([self.factor_map(g) for g in group.generators], self.k)

    def base_entries(self, p: Permutation) -> list[Permutation]:
        entries, top = self.decompose(p)
        if not top.is_identity():
            raise GroupError("element moves coordinates")
        return entries


def project(pg: ProductGroup, subgroup: PermGroup, i: int) -> PermGroup:
    """Image of ``subgroup`` in coordinate ``i`` (1-based), acting on Δ."""
    if not 1 <= i <= pg.k:
        raise GroupError(f"coordinate {i} out of range")
    return PermGroup([pg.base_entries(g)[i - 1] for g in subgroup.generators], pg.m)


@dataclass(frozen=True)
class DiagonalClassification:
    verdict: str
    order: int
    projection_orders: tuple[int, ...]
    projections: tuple[PermGroup, ...]
    witness: Permutation | None = None
    ratio: Fraction | None = None

    @property
    def is_diagonal(self) -> bool:
        return self.verdict in ("straight", "twisted")


def classify_diagonal(pg: ProductGroup, stab: PermGroup) -> DiagonalClassification:
    entries = [pg.base_entries(g) for g in stab.generators]
    projections = tuple(project(pg, stab, i) for i in range(1, pg.k + 1))
    orders = tuple(p.order() for p in projections)
    n = stab.order()
    if all(len(set(e)) == 1 for e in entries):
        return DiagonalClassification("straight", n, orders, projections)
    witness = next(g for g, e in zip(stab.generators, entries) if len(set(e)) > 1)
    if all(o == n for o in orders):
        return DiagonalClassification("twisted", n, orders, projections, witness)
    return DiagonalClassification("nondiagonal", n, orders, projections, ratio=Fraction(n, orders[0]))


def socle_exponent(n_order: int, t_order: int) -> int:
    """The j with ``n_order == t_order ** j``, or raise."""
    if t_order < 2:
        raise GroupError("|T| must exceed 1")
    j = round(math.log(n_order) / math.log(t_order))
    for cand in (j - 1, j, j + 1):
        if cand >= 1 and t_order**cand == n_order:
            return cand
    raise GroupError(f"|N| = {n_order} is not a power of |T| = {t_order}")


@dataclass(frozen=True)
class PAReport:
    j: int
    k: int
    factor_transitive: bool
    n_transitive: bool
    stabilizer_verdict: str
    chain_orders: tuple[int, int, int]
    basepoint: str = "coset of G_alpha"

    @property
    def chain_strict(self) -> bool:
        a, b, c = self.chain_orders
        return a < b < c

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "k": self.k,
            "factor_transitive": self.factor_transitive,
            "n_transitive": self.n_transitive,
            "stabilizer_verdict": self.stabilizer_verdict,
            "witness_chain_orders": [str(x) for x in self.chain_orders],
            "witness_chain_strict": self.chain_strict,
            "basepoint": self.basepoint,
        }


def block_witness(
    pg: ProductGroup, G_alpha: PermGroup, N_alpha: PermGroup, N: PermGroup, max_enum: int = DEFAULT_MAX_ENUM
) -> PermGroup:
    """G_B = <G_α, N ∩ ∏ π_i(N_α)>, the stabilizer of α's block of the product structure."""
    m, k = pg.m, pg.k
    ident = Permutation.identity(m)
    gens = []
    for i in range(1, k + 1):
        for h in project(pg, N_alpha, i).generators:
            entries = [ident] * k
            entries[i - 1] = h
            gens.append(wreath_element(m, entries))
    P = PermGroup(gens, m * k)
    NP = P if all(N.contains(g) for g in P.generators) else intersect_small(N, P, max_enum)
    return PermGroup(list(G_alpha.generators) + list(NP.generators), m * k)


def pa_report(
    pg: ProductGroup,
    G_alpha: PermGroup,
    N: PermGroup,
    t_order: int,
    max_enum: int = DEFAULT_MAX_ENUM,
) -> PAReport:
    """PA surrogates for G = pg.underlying acting on ``[G : G_alpha]``.

    N is transitive on the cosets exactly when ``|N| |G_α| = |G| |N ∩ G_α|``.
    """
    G = pg.underlying
    j = socle_exponent(N.order(), t_order)
    factor_transitive = pg.factor_image().is_transitive()
    N_alpha = intersect_small(G_alpha, N, max_enum)
    n_transitive = N.order() * G_alpha.order() == G.order() * N_alpha.order()
    verdict = classify_diagonal(pg, N_alpha).verdict
    G_B = block_witness(pg, G_alpha, N_alpha, N, max_enum)
    return PAReport(j, pg.k, factor_transitive, n_transitive, verdict,
                    (G_alpha.order(), G_B.order(), G.order()))
