"""Product-action constructions of locally 2-arc-transitive amalgams.

* the ternary (4, 2) equidistant code and the monomial map tau;
* generic builders for the straight-twisted and twisted-twisted
  constructions: coordinates are indexed by the elements of an acting group
  K, ``f_l(kappa) = l^kappa`` and K permutes coordinates by left translation;
* the straight-nondiagonal family built over S_{n+2};
* code-driven assemblies with explicit base tuples and tau.

Presets living on top of these are in :mod:`arclab.presets`.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Mapping, Sequence

from arclab.arcs import AmalgamCheck, amalgam_check
from arclab.cosets import DEFAULT_MAX_INDEX, coset_action
from arclab.groups import direct_product, symmetric, wreath_element
from arclab.pa import ProductGroup, classify_diagonal
from arclab.perm import (
    DEFAULT_MAX_ENUM,
    GroupError,
    Permutation,
    PermGroup,
    Raw,
    ThresholdError,
    _compose,
    intersect_small,
    is_k_transitive,
)

# ---------------------------------------------------------------------------
# the ternary code


CODE_GENERATORS = ((1, 1, 1, 0), (1, 2, 0, 1))

# the nonzero words in the order they are listed alongside the code
LISTED_WORDS = (
    (1, 1, 1, 0), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, 2),
    (2, 2, 2, 0), (2, 1, 0, 2), (1, 0, 2, 2), (0, 1, 2, 1),
)


@dataclass(frozen=True)
class TernaryCode:
    length: int
    generators: tuple[tuple[int, ...], ...]
    words: tuple[tuple[int, ...], ...]

    @property
    def nonzero_words(self) -> tuple[tuple[int, ...], ...]:
        return tuple(w for w in self.words if any(w))

    @property
    def dimension(self) -> int:
        d = 0
        while 3**d < len(self.words):
            d += 1
        return d

    def weight_enumerator(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.words:
            wt = sum(1 for x in w if x)
            out[wt] = out.get(wt, 0) + 1
        return dict(sorted(out.items()))

    def is_linear(self) -> bool:
        ws = set(self.words)
        return all(
            tuple((a * x + y) % 3 for x, y in zip(u, v)) in ws
            for u in self.words for v in self.words for a in (1, 2)
        )


def build_code(generators: Sequence[Sequence[int]] = CODE_GENERATORS) -> TernaryCode:
    gens = tuple(tuple(g) for g in generators)
    n = len(gens[0])
    words = {
        tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % 3 for i in range(n))
        for coeffs in itertools.product(range(3), repeat=len(gens))
    }
    return TernaryCode(n, gens, tuple(sorted(words)))


@dataclass(frozen=True)
class MonomialMap:
    """Scale coordinate i by ``scalars[i]`` (GF(3)) and then move it to ``perm[i]`` (1-based)."""

    scalars: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise GroupError("perm must be a permutation of the coordinates")
        if any(s % 3 == 0 for s in self.scalars):
            raise GroupError("scalars must be nonzero")

    @classmethod
    def identity(cls, n: int) -> MonomialMap:
        return cls((1,) * n, tuple(range(1, n + 1)))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(v)
        for i, (x, s) in enumerate(zip(v, self.scalars)):
            out[self.perm[i] - 1] = x * s % 3
        return tuple(out)

    def __mul__(self, other: MonomialMap) -> MonomialMap:
        """``self`` first, then ``other``."""
        scalars = tuple(s * other.scalars[self.perm[i] - 1] % 3 for i, s in enumerate(self.scalars))
        perm = tuple(other.perm[j - 1] for j in self.perm)
        return MonomialMap(scalars, perm)

    def __pow__(self, e: int) -> MonomialMap:
        out = MonomialMap.identity(len(self.perm))
        for _ in range(e):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return self == MonomialMap.identity(len(self.perm))

    def order(self) -> int:
        p, n = self, 1
        while not p.is_identity():
            p, n = p * self, n + 1
        return n


# sigma = -1 on coordinates 1, 3, 4, then the 4-cycle (1,2,3,4)
TAU = MonomialMap((2, 1, 2, 2), (2, 3, 4, 1))


@dataclass(frozen=True)
class TauCertificate:
    order: int
    fourth_power_is_negation: bool
    preserves_code: bool
    orbit: tuple[tuple[int, ...], ...]
    orbit_covers_nonzero_words: bool
    matches_listed_order: bool
    listed_step: int | None

    @property
    def first_image(self) -> tuple[int, ...]:
        return self.orbit[1]


def verify_tau(tau: MonomialMap = TAU, code: TernaryCode | None = None) -> TauCertificate:
    code = code or build_code()
    words = set(code.words)
    orbit = [LISTED_WORDS[0]]
    for _ in range(7):
        orbit.append(tau.apply(orbit[-1]))
    neg = MonomialMap((2,) * 4, (1, 2, 3, 4))
    steps = {(LISTED_WORDS.index(tau.apply(w)) - i) % 8 if tau.apply(w) in LISTED_WORDS else None
             for i, w in enumerate(LISTED_WORDS)}
    step = steps.pop() if len(steps) == 1 else None
    return TauCertificate(
        order=tau.order(),
        fourth_power_is_negation=tau**4 == neg,
        preserves_code=all(tau.apply(w) in words for w in words),
        orbit=tuple(orbit),
        orbit_covers_nonzero_words=set(orbit) == set(code.nonzero_words),
        matches_listed_order=tuple(orbit) == LISTED_WORDS,
        listed_step=step,
    )


# ---------------------------------------------------------------------------
# product constructions


@dataclass(frozen=True)
class ProductConstruction:
    """Vertex stabilizers G_α = <N_α, tops>, G_β = <N_β, tops> inside H Wr S_k."""

    H: PermGroup
    k: int
    N_alpha: PermGroup
    N_beta: PermGroup
    tops: tuple[Permutation, ...]
    coordinates: tuple[Permutation, ...] = ()

    @property
    def m(self) -> int:
        return self.H.degree

    @property
    def degree(self) -> int:
        return self.m * self.k

    @cached_property
    def G_alpha(self) -> PermGroup:
        return PermGroup(list(self.N_alpha.generators) + list(self.tops), self.degree)

    @cached_property
    def G_beta(self) -> PermGroup:
        return PermGroup(list(self.N_beta.generators) + list(self.tops), self.degree)

    @cached_property
    def G(self) -> PermGroup:
        return PermGroup(list(self.G_alpha.generators) + list(self.N_beta.generators), self.degree)

    @cached_property
    def N(self) -> PermGroup:
        return PermGroup(list(self.N_alpha.generators) + list(self.N_beta.generators), self.degree)

    @cached_property
    def common(self) -> PermGroup:
        return intersect_small(self.G_alpha, self.G_beta)

    @property
    def product(self) -> ProductGroup:
        return ProductGroup(self.G, self.k, self.m)

    def amalgam_orders(self) -> tuple[int, int, int]:
        return self.G_alpha.order(), self.G_beta.order(), self.common.order()

    def valencies(self) -> tuple[int, int]:
        a, b, c = self.amalgam_orders()
        return a // c, b // c

    def amalgam_check(self, max_index: int = DEFAULT_MAX_INDEX, max_enum: int = DEFAULT_MAX_ENUM) -> AmalgamCheck:
        return amalgam_check(self.G_alpha, self.G_beta, self.common, max_index, max_enum)

    def tops_normalize(self, sub: PermGroup) -> bool:
        return all(sub.contains(n ^ t) for t in self.tops for n in sub.generators)

    def classify(self):
        pg = ProductGroup(self.N, self.k, self.m)
        return classify_diagonal(pg, self.N_alpha), classify_diagonal(pg, self.N_beta)


def enumerate_group(K: PermGroup, max_enum: int = DEFAULT_MAX_ENUM) -> list[Permutation]:
    """Identity first, then by generator words in length-lexicographic order."""
    if K.order() > max_enum:
        raise ThresholdError(f"|K| = {K.order()} exceeds {max_enum}")
    ident = K.identity()
    seen = {ident}
    out = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in K.generators:
            y = x * g
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def automorphism_table(A: PermGroup, images: Sequence[Permutation], max_enum: int = DEFAULT_MAX_ENUM) -> dict[Raw, Raw]:
    """The automorphism of A sending ``A.generators[i]`` to ``images[i]``, as an element table."""
    if len(images) != len(A.generators):
        raise GroupError("need one image per generator")
    if A.order() > max_enum:
        raise ThresholdError(f"|A| = {A.order()} exceeds {max_enum}")
    for y in images:
        if not A.contains(y):
            raise GroupError("automorphism image leaves the group")
    ident = tuple(range(A.degree))
    table = {ident: ident}
    queue = deque([ident])
    gens = [(g.raw, y.raw) for g, y in zip(A.generators, images)]
    while queue:
        x = queue.popleft()
        fx = table[x]
        for g, y in gens:
            z, fz = _compose(x, g), _compose(fx, y)
            known = table.get(z)
            if known is None:
                table[z] = fz
                queue.append(z)
            elif known != fz:
                raise GroupError("K-action is not an automorphism action")
    if len(set(table.values())) != len(table):
        raise GroupError("K-action is not an automorphism action")
    return table


def _side_actions(
    A: PermGroup,
    K: PermGroup,
    elems: Sequence[Permutation],
    gen_images: Mapping[Permutation, Sequence[Permutation]],
    max_enum: int,
) -> tuple[list[list[Permutation]], dict[Permutation, dict[Raw, Raw]]]:
    """Images of A's generators under every κ, checking K → Aut(A) is a homomorphism."""
    tables = {s: automorphism_table(A, gen_images[s], max_enum) for s in K.generators}
    position = {e: i for i, e in enumerate(elems)}
    per = [None] * len(elems)
    per[0] = [g.raw for g in A.generators]
    for i, kappa in enumerate(elems):
        for s in K.generators:
            j = position[kappa * s]
            imgs = [tables[s][y] for y in per[i]]
            if per[j] is None:
                per[j] = imgs
            elif per[j] != imgs:
                raise GroupError("K-action is not a homomorphism into Aut")
    return [[Permutation._wrap(y) for y in row] for row in per], tables


def _assemble(
    H: PermGroup,
    L1: PermGroup,
    R1: PermGroup,
    K: PermGroup,
    act_L: Mapping[Permutation, Sequence[Permutation]],
    act_R: Mapping[Permutation, Sequence[Permutation]],
    max_enum: int,
) -> ProductConstruction:
    for name, A in (("L1", L1), ("R1", R1)):
        if A.degree != H.degree or not A.is_subgroup_of(H):
            raise GroupError(f"{name} is not a subgroup of H")
    if K.order() < 2:
        raise GroupError("K must be nontrivial: the product needs k >= 2 coordinates")
    for act in (act_L, act_R):
        if set(act) != set(K.generators):
            raise GroupError("actions must be given on exactly the generators of K")
    elems = enumerate_group(K, max_enum)
    k = len(elems)
    rows_L, tabs_L = _side_actions(L1, K, elems, act_L, max_enum)
    rows_R, tabs_R = _side_actions(R1, K, elems, act_R, max_enum)
    for c in intersect_small(L1, R1, max_enum).chain.iter_raw():
        for s in K.generators:
            if tabs_L[s][c] != c or tabs_R[s][c] != c:
                raise GroupError("K must fix L1 ∩ R1 elementwise")
    m = H.degree

    def f(rows, a):
        return wreath_element(m, [rows[i][a] for i in range(k)])

    N_alpha = PermGroup([f(rows_L, a) for a in range(len(L1.generators))], m * k)
    N_beta = PermGroup([f(rows_R, a) for a in range(len(R1.generators))], m * k)
    position = {e: i for i, e in enumerate(elems)}
    ident = [Permutation.identity(m)] * k
    tops = []
    for s in K.generators:
        s_inv = s.inverse()
        move = Permutation([position[s_inv * kappa] + 1 for kappa in elems])
        tops.append(wreath_element(m, ident, move))
    return ProductConstruction(H, k, N_alpha, N_beta, tuple(tops), tuple(elems))


def construct_3_1(
    H: PermGroup,
    L1: PermGroup,
    R1: PermGroup,
    K: PermGroup,
    action_on_L1: Mapping[Permutation, Sequence[Permutation]],
    max_enum: int = DEFAULT_MAX_ENUM,
) -> ProductConstruction:
    """Straight-twisted: ``f_l(κ) = l^κ`` for l in L1, ``f_r(κ) = r`` for r in R1."""
    trivial = {s: list(R1.generators) for s in K.generators}
    return _assemble(H, L1, R1, K, action_on_L1, trivial, max_enum)


def construct_3_2(
    H: PermGroup,
    L1: PermGroup,
    R1: PermGroup,
    K_L: PermGroup,
    action_L: Mapping[Permutation, Sequence[Permutation]],
    K_R: PermGroup,
    action_R: Mapping[Permutation, Sequence[Permutation]],
    max_enum: int = DEFAULT_MAX_ENUM,
) -> ProductConstruction:
    """Twisted-twisted: K = K_L × K_R, K_L acting on L1 only and K_R on R1 only."""
    K = direct_product(K_L, K_R)
    nl = len(K_L.generators)
    lifted = list(K.generators)
    act_L, act_R = {}, {}
    for i, s in enumerate(lifted):
        if i < nl:
            act_L[s] = action_L[K_L.generators[i]]
            act_R[s] = list(R1.generators)
        else:
            act_L[s] = list(L1.generators)
            act_R[s] = action_R[K_R.generators[i - nl]]
    return _assemble(H, L1, R1, K, act_L, act_R, max_enum)


def code_construction(
    H: PermGroup,
    alpha_tuples: Sequence[Sequence[Permutation]],
    beta_tuples: Sequence[Sequence[Permutation]],
    tau_entries: Sequence[Permutation],
) -> ProductConstruction:
    """k = 4 with explicit base tuples and τ = (entries)·(1,2,3,4)."""
    m = H.degree
    for tup in itertools.chain(alpha_tuples, beta_tuples, [tau_entries]):
        if len(tup) != 4:
            raise GroupError("tuples must have four entries")
        for h in tup:
            if not H.contains(h):
                raise GroupError(f"{h} is not in H")
    N_alpha = PermGroup([wreath_element(m, t) for t in alpha_tuples], 4 * m)
    N_beta = PermGroup([wreath_element(m, t) for t in beta_tuples], 4 * m)
    tau = wreath_element(m, tau_entries, Permutation([2, 3, 4, 1]))
    return ProductConstruction(H, 4, N_alpha, N_beta, (tau,))


# ---------------------------------------------------------------------------
# straight-nondiagonal family


@dataclass(frozen=True)
class StraightNondiagonal:
    n: int
    construction: ProductConstruction
    L: PermGroup
    R: PermGroup
    h: Permutation
    sigma: Permutation

    def expected_orders(self) -> tuple[int, int, int]:
        n = self.n
        return 8 * factorial(n), 72 * factorial(n - 1), 8 * factorial(n - 1)


def construct_straight_nondiagonal(n: int) -> StraightNondiagonal:
    """S_{n+2} with L the stabilizer of {1, 2} and R = S_{1,2,3} × S_{4..n+2}."""
    if n < 3:
        raise GroupError("n must be at least 3")
    d = n + 2
    H = symmetric(d)

    def c(*cycles):
        return Permutation.from_cycles(cycles, d)

    sigma = c((1, 2))
    h = c((1, 2, 3))
    L = PermGroup([sigma, c((3, 4)), c(tuple(range(3, d + 1)))], d)
    R2 = [c((4, 5)), c(tuple(range(4, d + 1)))]
    R = PermGroup([h, sigma] + R2, d)
    e = H.identity()
    alpha = [(g, g, g, g) for g in L.generators]
    beta = [(h, h, h, e), (h, h.inverse(), e, h)] + [(x, x, x, x) for x in [sigma] + R2]
    pc = code_construction(H, alpha, beta, (sigma, e, sigma, sigma))
    return StraightNondiagonal(n, pc, L, R, h, sigma)


def sharply_two_transitive_on_cosets(G: PermGroup, H: PermGroup, max_index: int = DEFAULT_MAX_INDEX) -> bool:
    act = coset_action(G, H, max_index).action
    d = act.degree
    return is_k_transitive(act, 2) and act.order() == d * (d - 1)
