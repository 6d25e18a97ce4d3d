"""Constructors for the concrete groups used by the constructions.

Projective-line convention: field element ``e`` is point ``e + 1`` and the
point at infinity is ``q + 1``.  Matrices act on row vectors from the right,
so ``x -> (a x + c) / (b x + d)`` for ``[[a, b], [c, d]]`` and matrix products
agree with left-to-right permutation products.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from arclab.fields import FieldError, FiniteField, prime_power
from arclab.perm import BlockSystem, GroupError, Permutation, PermGroup

DATA_ENV = "ARCLAB_DATA"


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).with_name("data")


def data_path(name: str) -> Path:
    return data_dir() / name


# ---------------------------------------------------------------------------
# standard groups


def make_standard(kind: str, n: int) -> PermGroup:
    """Symmetric, alternating, cyclic (degree n) or dihedral (order 2n on n points)."""
    if n < 1:
        raise GroupError("n must be at least 1")
    cyc = Permutation.from_cycles([range(1, n + 1)], n)
    if kind == "symmetric":
        return PermGroup([cyc, Permutation.from_cycles([(1, 2)], n)] if n > 1 else [], n)
    if kind == "alternating":
        if n < 3:
            return PermGroup([], n)
        long = cyc if n % 2 else Permutation.from_cycles([range(2, n + 1)], n)
        return PermGroup([Permutation.from_cycles([(1, 2, 3)], n), long], n)
    if kind == "cyclic":
        return PermGroup([cyc], n)
    if kind == "dihedral":
        if n < 3:
            raise GroupError("dihedral groups need n >= 3")
        refl = Permutation([1] + [n + 2 - i for i in range(2, n + 1)])
        return PermGroup([cyc, refl], n)
    raise GroupError(f"unknown kind {kind!r}")


def symmetric(n: int) -> PermGroup:
    return make_standard("symmetric", n)


def alternating(n: int) -> PermGroup:
    return make_standard("alternating", n)


def cyclic(n: int) -> PermGroup:
    return make_standard("cyclic", n)


def dihedral(n: int) -> PermGroup:
    return make_standard("dihedral", n)


# ---------------------------------------------------------------------------
# affine and projective groups


def affine_map(F: FiniteField, a: int, b: int) -> Permutation:
    """``x -> a x + b`` on the q field elements."""
    return Permutation([F.add(F.mul(a, x), b) + 1 for x in F.elements()])


def make_agl1(q: int) -> PermGroup:
    """AGL(1, q) acting on GF(q)."""
    F = FiniteField(q)
    gens = [affine_map(F, 1, b) for b in F.additive_basis()]
    if q > 2:
        gens.append(affine_map(F, F.generator, 0))
    return PermGroup(gens, q)


def mobius(F: FiniteField, a: int, b: int, c: int, d: int) -> Permutation:
    """The projective map of the matrix ``[[a, b], [c, d]]`` on q + 1 points."""
    q = F.q
    inf = q
    if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
        raise GroupError("singular matrix")
    img = []
    for x in range(q + 1):
        if x == inf:
            num, den = a, b
        else:
            num = F.add(F.mul(a, x), c)
            den = F.add(F.mul(b, x), d)
        img.append(inf if den == 0 else F.div(num, den))
    return Permutation([y + 1 for y in img])


def infinity(q: int) -> int:
    return q + 1


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _psl2_gens(F: FiniteField, scalars: Sequence[int], mult_gen: int) -> list[Permutation]:
    one = 1
    m = F.mul(mult_gen, mult_gen) if F.p != 2 else mult_gen
    gens = [mobius(F, one, 0, b, one) for b in scalars]
    if m != 1:
        gens.append(mobius(F, m, 0, 0, one))
    gens.append(mobius(F, 0, F.neg(one), one, 0))
    return gens


def make_psl2(q: int) -> PermGroup:
    """PSL(2, q) on the projective line."""
    try:
        p, _ = prime_power(q)
    except FieldError as e:
        raise GroupError(str(e)) from None
    if q < 4:
        raise GroupError("PSL(2, q) needs q >= 4")
    F = FiniteField(q)
    return PermGroup(_psl2_gens(F, F.additive_basis(), F.generator), q + 1)


def subfield_psl2(q: int, m: int) -> PermGroup:
    """The PSL(2, p^m) subgroup of PSL(2, q) with entries in the subfield."""
    p, e = prime_power(q)
    if e % m:
        raise GroupError(f"{m} does not divide the extension degree {e}")
    F = FiniteField(q)
    z = F.subfield_generator(m)
    basis = [F.pow(z, i) for i in range(m)]
    return PermGroup(_psl2_gens(F, basis, z), q + 1)


@dataclass(frozen=True)
class Borel:
    group: PermGroup
    unipotent: PermGroup
    torus_generator: Permutation
    field: FiniteField


def borel_subgroup(q: int) -> Borel:
    """Stabilizer of infinity in PSL(2, q), q an even power of 2."""
    try:
        p, e = prime_power(q)
    except FieldError as err:
        raise GroupError(str(err)) from None
    if p != 2 or e % 2:
        raise GroupError("q must be 2^(2n)")
    F = FiniteField(q)
    trans = [mobius(F, 1, 0, b, 1) for b in F.additive_basis()]
    y1 = mobius(F, F.generator, 0, 0, 1)
    return Borel(PermGroup(trans + [y1], q + 1), PermGroup(trans, q + 1), y1, F)


# ---------------------------------------------------------------------------
# direct products and wreath embeddings


def direct_product(*groups: PermGroup) -> PermGroup:
    """Groups acting on consecutive disjoint point ranges."""
    total = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for s in g.generators:
            img = list(range(1, total + 1))
            for x in range(1, g.degree + 1):
                img[offset + x - 1] = offset + s(x)
            gens.append(Permutation(img))
        offset += g.degree
    return PermGroup(gens, total)


@dataclass(frozen=True)
class WreathEmbedding:
    """H^k ⋊ K in the imprimitive action on Δ × {1..k}.

    Point ``(δ, i)`` (both 1-based) is ``(i - 1) * |Δ| + δ``.  An element with
    coordinate entries ``(h_1..h_k)`` and coordinate permutation ``π`` maps
    ``(δ, i)`` to ``(h_i(δ), π(i))``: entries first, then the move.
    """

    base: PermGroup
    k: int
    group: PermGroup

    @property
    def m(self) -> int:
        return self.base.degree

    def point(self, delta: int, i: int) -> int:
        return (i - 1) * self.m + delta

    def coordinate_blocks(self) -> BlockSystem:
        m = self.m
        return BlockSystem(tuple(tuple(range(i * m + 1, (i + 1) * m + 1)) for i in range(self.k)))

    def element(self, entries: Sequence[Permutation], top: Permutation | None = None) -> Permutation:
        return wreath_element(self.m, entries, top)

    def decompose(self, p: Permutation) -> tuple[list[Permutation], Permutation]:
        return wreath_decompose(self.m, self.k, p)


def wreath_element(m: int, entries: Sequence[Permutation], top: Permutation | None = None) -> Permutation:
    k = len(entries)
    if top is not None and top.degree != k:
        raise GroupError("top permutation must act on the k coordinates")
    img = []
    for i, h in enumerate(entries):
        if h.degree != m:
            raise GroupError("entry degree mismatch")
        j = top.raw[i] if top is not None else i
        img.extend(j * m + y + 1 for y in h.raw)
    return Permutation(img)


def wreath_decompose(m: int, k: int, p: Permutation) -> tuple[list[Permutation], Permutation]:
    """Coordinate entries and coordinate permutation of an imprimitive element."""
    raw = p.raw
    entries, top = [], []
    for i in range(k):
        block = raw[i * m:(i + 1) * m]
        j = block[0] // m
        if any(y // m != j for y in block):
            raise GroupError("element does not preserve the coordinate blocks")
        entries.append(Permutation._wrap(tuple(y - j * m for y in block)))
        top.append(j + 1)
    return entries, Permutation(top)


def wreath_embed(
    H: PermGroup,
    k: int,
    base_elements: Sequence[Sequence[Permutation]],
    top_action: Mapping[Permutation, Permutation] | None = None,
    K: PermGroup | None = None,
) -> WreathEmbedding:
    """Embed the given elements of H Wr K faithfully on |Δ|·k points.

    ``top_action`` maps generators of ``K`` to permutations of the k
    coordinates; it must extend to a homomorphism.
    """
    if k < 1:
        raise GroupError("k must be positive")
    m = H.degree
    gens = []
    for tup in base_elements:
        if len(tup) != k:
            raise GroupError("base tuple length must equal k")
        for h in tup:
            if not H.contains(h):
                raise GroupError(f"{h} is not in H")
        gens.append(wreath_element(m, tup))
    if top_action:
        if K is None:
            raise GroupError("top_action needs the acting group K")
        check_homomorphism(K, top_action)
        ident = [Permutation.identity(m)] * k
        gens.extend(wreath_element(m, ident, pi) for pi in top_action.values())
    return WreathEmbedding(H, k, PermGroup(gens, m * k))


def check_homomorphism(K: PermGroup, images: Mapping[Permutation, Permutation]) -> None:
    """Raise unless generator images extend to a homomorphism from K.

    The graph {(κ, φ(κ))} generates a subgroup of K × Sym(k) whose order equals
    |K| exactly when φ is well defined.
    """
    if set(images) != set(K.generators):
        raise GroupError("images must be given for exactly the generators of K")
    target_deg = next(iter(images.values())).degree
    graph = direct_product(K, PermGroup([], target_deg))
    pairs = []
    for kappa, phi in images.items():
        pairs.append(Permutation(list(kappa.images) + [K.degree + phi(x) for x in range(1, target_deg + 1)]))
    if PermGroup(pairs, graph.degree).order() != K.order():
        raise GroupError("top action is not a homomorphism")


# ---------------------------------------------------------------------------
# generator files


class GeneratorFileError(GroupError):
    pass


def parse_generators(text: str, source: str = "<string>") -> PermGroup:
    degree = None
    gens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit() or int(parts[1]) < 1:
                raise GeneratorFileError(f"{source}:{lineno}: expected 'degree <n>'")
            degree = int(parts[1])
            continue
        try:
            gens.append(Permutation.parse(line, degree))
        except GroupError as e:
            raise GeneratorFileError(f"{source}:{lineno}: {e}") from None
    if degree is None:
        raise GeneratorFileError(f"{source}: missing 'degree <n>' header")
    return PermGroup(gens, degree)


def load_generators(path: str | os.PathLike) -> PermGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise GeneratorFileError(f"{path}: {e}") from None
    return parse_generators(text, str(path))


def format_generators(group: PermGroup, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(f"degree {group.degree}")
    lines.extend(str(g) for g in group.generators)
    return "\n".join(lines) + "\n"


def save_generators(group: PermGroup, path: str | os.PathLike, comment: str | None = None) -> None:
    Path(path).write_text(format_generators(group, comment))
