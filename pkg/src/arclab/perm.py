"""Permutation groups: elements, stabilizer chains, orbits, blocks.

Points are 1-based on the public surface and 0-based inside raw tuples.
Products act left to right: ``(p * q)(x) == q(p(x))``.
"""

from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_ENUM = 10**6


class GroupError(ValueError):
    pass


class ThresholdError(GroupError):
    """An enumeration would exceed its configured size limit."""


Raw = tuple


def _compose(p: Raw, q: Raw) -> Raw:
    return tuple(map(q.__getitem__, p))


def _invert(p: Raw) -> Raw:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _is_identity(p: Raw) -> bool:
    return all(i == v for i, v in enumerate(p))


def _first_moved(p: Raw) -> int:
    for i, v in enumerate(p):
        if i != v:
            return i
    return -1


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection of ``{1..degree}``, stored by its images."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        raw = tuple(int(x) - 1 for x in images)
        if sorted(raw) != list(range(len(raw))):
            raise GroupError(f"not a permutation of 1..{len(raw)}: {list(images)}")
        if not raw:
            raise GroupError("degree must be positive")
        self._img = raw
        self._hash = None

    @classmethod
    def _wrap(cls, raw: Raw) -> Permutation:
        obj = object.__new__(cls)
        obj._img = raw
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise GroupError("degree must be positive")
        return cls._wrap(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            pts = [int(c) - 1 for c in cyc]
            for p in pts:
                if not 0 <= p < degree:
                    raise GroupError(f"point {p + 1} outside 1..{degree}")
                if p in seen:
                    raise GroupError(f"point {p + 1} repeated in cycle notation")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls._wrap(tuple(img))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse disjoint-cycle notation such as ``(1,2,8)(4,5)`` or ``()``."""
        s = re.sub(r"\s+", "", text)
        if not s:
            raise GroupError("empty permutation text")
        cycles = []
        pos = 0
        for m in _CYCLE_RE.finditer(s):
            if m.start() != pos:
                raise GroupError(f"cannot parse {text!r}")
            pos = m.end()
            body = m.group(1)
            if body:
                try:
                    cycles.append([int(x) for x in body.split(",")])
                except ValueError:
                    raise GroupError(f"cannot parse {text!r}") from None
        if pos != len(s):
            raise GroupError(f"cannot parse {text!r}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    @property
    def raw(self) -> Raw:
        return self._img

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise GroupError("degree mismatch")
        return Permutation._wrap(_compose(self._img, other._img))

    def inverse(self) -> Permutation:
        return Permutation._wrap(_invert(self._img))

    def __pow__(self, n: int) -> Permutation:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = tuple(range(self.degree))
        acc = base._img
        while n:
            if n & 1:
                result = _compose(result, acc)
            acc = _compose(acc, acc)
            n >>= 1
        return Permutation._wrap(result)

    def __xor__(self, other: Permutation) -> Permutation:
        """Conjugate: ``self ^ g == g**-1 * self * g``."""
        gi = _invert(other._img)
        return Permutation._wrap(_compose(_compose(gi, self._img), other._img))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self._img[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self._img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._img[j]
            out.append(tuple(x + 1 for x in cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def is_identity(self) -> bool:
        return _is_identity(self._img)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def moved_points(self) -> list[int]:
        return [i + 1 for i, v in enumerate(self._img) if i != v]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: Permutation) -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, {self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``."""
    return p * q


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    __slots__ = ("point", "gens", "gens_inv", "orbit", "trans", "trans_inv", "pending")

    def __init__(self, point: int, ident: Raw):
        self.point = point
        self.gens: list[Raw] = []
        self.gens_inv: list[Raw] = []
        self.orbit: list[int] = [point]
        self.trans: dict[int, Raw] = {point: ident}
        self.trans_inv: dict[int, Raw] = {point: ident}
        self.pending: deque = deque()

    def add_gen(self, s: Raw, s_inv: Raw) -> None:
        gi = len(self.gens)
        self.gens.append(s)
        self.gens_inv.append(s_inv)
        old = len(self.orbit)
        for idx in range(old):
            self.pending.append((self.orbit[idx], gi))
        # extend the orbit breadth-first from every point
        queue = deque(self.orbit)
        while queue:
            x = queue.popleft()
            for k, g in enumerate(self.gens):
                y = g[x]
                if y not in self.trans:
                    self.trans[y] = _compose(self.trans[x], g)
                    self.trans_inv[y] = _compose(self.gens_inv[k], self.trans_inv[x])
                    self.orbit.append(y)
                    queue.append(y)
        for idx in range(old, len(self.orbit)):
            y = self.orbit[idx]
            for k in range(len(self.gens)):
                self.pending.append((y, k))


class _ChainBuilder:
    """Deterministic Schreier-Sims with incremental generator addition."""

    def __init__(self, degree: int, base_prefix: Sequence[int] = (), candidates: Iterable[int] | None = None):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.levels: list[_Level] = []
        self.gens: list[Raw] = []
        if len(set(base_prefix)) != len(base_prefix):
            raise GroupError("repeated base point")
        self.keep = len(base_prefix)
        # the base is the prefix followed by candidate points in increasing
        # order; levels with trivial orbits are dropped at freeze time
        taken = set(base_prefix)
        rest = range(degree) if candidates is None else sorted(candidates)
        for b in list(base_prefix) + [x for x in rest if x not in taken]:
            self.levels.append(_Level(b, self.ident))

    def order(self) -> int:
        return math.prod(len(lv.orbit) for lv in self.levels)

    def sift(self, g: Raw, start: int = 0) -> tuple[Raw, int]:
        levels = self.levels
        for j in range(start, len(levels)):
            lv = levels[j]
            x = g[lv.point]
            if x == lv.point:
                continue
            inv = lv.trans_inv.get(x)
            if inv is None:
                return g, j
            g = _compose(g, inv)
        return g, len(levels)

    def contains(self, g: Raw) -> bool:
        h, _ = self.sift(g)
        return h == self.ident

    def _insert(self, h: Raw, lo: int, hi: int) -> None:
        """Add ``h`` as a strong generator on levels lo..hi (extending the base)."""
        if hi == len(self.levels):
            self.levels.append(_Level(_first_moved(h), self.ident))
        h_inv = _invert(h)
        for lv in range(lo, hi + 1):
            self.levels[lv].add_gen(h, h_inv)

    def add(self, g: Raw, order_bound: int | None = None) -> bool:
        """Add a generator and complete the chain. Returns False if redundant."""
        h, j = self.sift(g)
        if h == self.ident:
            return False
        self.gens.append(g)
        self._insert(h, 0, j)
        self._complete(j, order_bound)
        return True

    def add_many(self, gens: Iterable[Raw], order_bound: int | None = None) -> None:
        for g in gens:
            if _is_identity(g):
                continue
            h, j = self.sift(g)
            if h == self.ident:
                continue
            self.gens.append(g)
            self._insert(h, 0, j)
        self._complete(len(self.levels) - 1, order_bound)

    def _complete(self, i: int, order_bound: int | None) -> None:
        ident = self.ident
        levels = self.levels
        while i >= 0:
            if order_bound is not None and self.order() >= order_bound:
                for lv in levels:
                    lv.pending.clear()
                return
            lev = levels[i]
            if not lev.pending:
                i -= 1
                continue
            pt, gi = lev.pending.popleft()
            s = lev.gens[gi]
            sch = _compose(_compose(lev.trans[pt], s), lev.trans_inv[s[pt]])
            if sch == ident:
                continue
            h, j = self.sift(sch, i + 1)
            if h == ident:
                continue
            self._insert(h, i + 1, j)
            i = j

    def freeze(self) -> StabilizerChain:
        for lv in self.levels:
            lv.pending.clear()
        levels = [lv for i, lv in enumerate(self.levels) if i < self.keep or len(lv.orbit) > 1]
        return StabilizerChain(self.degree, tuple(levels))


class StabilizerChain:
    """Base and strong generating set with explicit transversals."""

    def __init__(self, degree: int, levels: Sequence[_Level]):
        self.degree = degree
        self._levels = tuple(levels)

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.point + 1 for lv in self._levels)

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv.orbit) for lv in self._levels)

    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    def fundamental_orbit(self, level: int) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._levels[level].orbit)

    def strong_generators(self, level: int = 0) -> list[Permutation]:
        if level >= len(self._levels):
            return []
        return [Permutation._wrap(g) for g in self._levels[level].gens]

    def sift(self, g: Raw, start: int = 0) -> tuple[Raw, int]:
        for j in range(start, len(self._levels)):
            lv = self._levels[j]
            x = g[lv.point]
            if x == lv.point:
                continue
            inv = lv.trans_inv.get(x)
            if inv is None:
                return g, j
            g = _compose(g, inv)
        return g, len(self._levels)

    def contains_raw(self, g: Raw) -> bool:
        h, _ = self.sift(g)
        return _is_identity(h)

    def iter_raw(self, start: int = 0) -> Iterator[Raw]:
        """Every element of the level-``start`` stabilizer, exactly once."""
        levels = self._levels[start:]
        ident = tuple(range(self.degree))
        if not levels:
            yield ident
            return
        trans = [list(lv.trans.values()) for lv in levels]

        def rec(i: int, acc: Raw) -> Iterator[Raw]:
            if i < 0:
                yield acc
                return
            for u in trans[i]:
                yield from rec(i - 1, _compose(acc, u))

        yield from rec(len(levels) - 1, ident)


# symmetric/alternating candidates are tried by random sifting first
_RANDOM_PHASE_MIN = 10**6


def _order_bound(degree: int, gens: Sequence[Raw]) -> int | None:
    """Upper bound on |<gens>| from orbit sizes and parity."""
    if not gens:
        return None
    seen = [False] * degree
    sizes = []
    for start in range(degree):
        if seen[start]:
            continue
        seen[start] = True
        size = 1
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    size += 1
                    stack.append(y)
        sizes.append(size)
    bound = math.prod(math.factorial(s) for s in sizes)
    if all(Permutation._wrap(g).is_even() for g in gens) and bound > 1:
        bound //= 2
    return bound


def _random_fill(b: _ChainBuilder, gens: Sequence[Raw], bound: int, patience: int = 12) -> bool:
    """Sift seeded product-replacement elements until the order reaches ``bound``.

    Reaching the bound proves the chain complete; otherwise the caller
    discards ``b``.
    """
    rng = random.Random(0x5EED)
    pool = list(gens) * (max(1, 10 // len(gens)) + 1)
    acc = b.ident
    for _ in range(40):
        i, j = rng.sample(range(len(pool)), 2)
        pool[i] = _compose(pool[i], pool[j])
    misses = 0
    while misses < patience:
        i, j = rng.sample(range(len(pool)), 2)
        pool[i] = _compose(pool[i], pool[j])
        acc = _compose(acc, pool[i])
        h, lvl = b.sift(acc)
        if h == b.ident:
            misses += 1
            continue
        misses = 0
        b._insert(h, 0, lvl)
        if b.order() >= bound:
            return True
    return False


def _build(degree: int, gens: Sequence[Raw], base_prefix: Sequence[int] = ()) -> StabilizerChain:
    gens = [g for g in gens if not _is_identity(g)]
    bound = _order_bound(degree, gens)
    moved = {x for g in gens for x in range(degree) if g[x] != x}
    if bound is not None and bound > _RANDOM_PHASE_MIN:
        b = _ChainBuilder(degree, base_prefix, moved)
        if _random_fill(b, gens, bound):
            b.gens.extend(gens)
            return b.freeze()
    b = _ChainBuilder(degree, base_prefix, moved)
    b.add_many(gens, bound)
    return b.freeze()


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators; the chain is built on demand."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise GroupError("need a generator or an explicit degree")
            degree = gens[0].degree
        if degree < 1:
            raise GroupError("degree must be positive")
        for g in gens:
            if g.degree != degree:
                raise GroupError("generator degree mismatch")
        if not gens:
            gens = (Permutation.identity(degree),)
        self.degree = degree
        self.generators = gens
        self._chain: StabilizerChain | None = None

    @classmethod
    def _with_chain(cls, gens: Sequence[Permutation], degree: int, chain: StabilizerChain) -> PermGroup:
        grp = cls(gens, degree)
        grp._chain = chain
        return grp

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = _build(self.degree, [g.raw for g in self.generators])
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise GroupError("degree mismatch")
        return self.chain.contains_raw(p.raw)

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_group(self, other: PermGroup) -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self) -> Iterator[Permutation]:
        for raw in self.chain.iter_raw():
            yield Permutation._wrap(raw)

    def orbit(self, point: int) -> tuple[frozenset[int], dict[int, Permutation]]:
        """Orbit of ``point`` with a transversal element carrying ``point`` to each member."""
        if not 1 <= point <= self.degree:
            raise GroupError(f"point {point} outside 1..{self.degree}")
        gens = [g.raw for g in self.generators]
        p0 = point - 1
        trans = {p0: tuple(range(self.degree))}
        queue = deque([p0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _compose(trans[x], g)
                    queue.append(y)
        return frozenset(x + 1 for x in trans), {x + 1: Permutation._wrap(t) for x, t in trans.items()}

    def orbits(self) -> list[tuple[int, ...]]:
        gens = [g.raw for g in self.generators]
        seen = [False] * self.degree
        out = []
        for s in range(self.degree):
            if seen[s]:
                continue
            seen[s] = True
            orb = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for g in gens:
                    y = g[x]
                    if not seen[y]:
                        seen[y] = True
                        orb.append(y)
                        stack.append(y)
            out.append(tuple(sorted(x + 1 for x in orb)))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def chain_with_base(self, points: Sequence[int]) -> StabilizerChain:
        """A chain whose base starts with ``points`` (1-based)."""
        for p in points:
            if not 1 <= p <= self.degree:
                raise GroupError(f"point {p} outside 1..{self.degree}")
        gens = [g.raw for g in self.generators]
        return _build(self.degree, gens, [p - 1 for p in points])

    def stabilizer(self, points: Sequence[int]) -> PermGroup:
        """Pointwise stabilizer of ``points``."""
        points = list(points)
        if not points:
            return self
        ch = self.chain_with_base(points)
        k = len(points)
        levels = ch._levels[k:]
        gens = [Permutation._wrap(g) for g in levels[0].gens] if levels else []
        sub = StabilizerChain(self.degree, levels)
        return PermGroup._with_chain(gens, self.degree, sub)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def group_from_raw(gens: Iterable[Raw], degree: int) -> PermGroup:
    return PermGroup([Permutation._wrap(tuple(g)) for g in gens], degree)


def orbit(group: PermGroup, point: int):
    return group.orbit(point)


def build_chain(group: PermGroup) -> StabilizerChain:
    return group.chain


def contains(group: PermGroup, p: Permutation) -> bool:
    return group.contains(p)


def stabilizer(group: PermGroup, points: Sequence[int]) -> PermGroup:
    return group.stabilizer(points)


def is_k_transitive(group: PermGroup, k: int) -> bool:
    """True iff the group is transitive on ordered k-tuples of distinct points."""
    n = group.degree
    if k < 1:
        raise GroupError("k must be at least 1")
    if k > n:
        raise GroupError(f"k={k} exceeds degree {n}")
    if not group.is_transitive():
        return False
    if k == 1:
        return True
    if group.order() % math.perm(n, k):
        return False
    ch = group.chain_with_base(range(1, k + 1))
    return all(ch.orbit_sizes[j] == n - j for j in range(k))


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1 or self.block_size == 1

    def block_of(self, point: int) -> tuple[int, ...]:
        for b in self.blocks:
            if point in b:
                return b
        raise GroupError(f"point {point} not covered")

    def is_invariant_under(self, group: PermGroup) -> bool:
        as_sets = {frozenset(b) for b in self.blocks}
        for g in group.generators:
            for b in self.blocks:
                if frozenset(g(x) for x in b) not in as_sets:
                    return False
        return True


def _blocks_from_labels(labels: Sequence[int]) -> BlockSystem:
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i + 1)
    blocks = sorted(tuple(v) for v in groups.values())
    return BlockSystem(tuple(blocks))


def minimal_block_system(group: PermGroup, pair: tuple[int, int]) -> BlockSystem:
    """Finest invariant partition with both points of ``pair`` in one block."""
    if not group.is_transitive():
        raise GroupError("group is not transitive")
    n = group.degree
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    a, b = pair[0] - 1, pair[1] - 1
    gens = [g.raw for g in group.generators]
    pending = []
    if find(a) != find(b):
        parent[find(b)] = find(a)
        pending.append((a, b))
    while pending:
        x, y = pending.pop()
        for g in gens:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                pending.append((g[x], g[y]))
    return _blocks_from_labels([find(i) for i in range(n)])


def is_primitive(group: PermGroup) -> bool:
    if not group.is_transitive():
        raise GroupError("group is not transitive")
    n = group.degree
    if n <= 2:
        return True
    if is_k_transitive(group, 2):
        return True
    stab = group.stabilizer([1])
    for orb in stab.orbits():
        x = orb[0]
        if x == 1:
            continue
        if not minimal_block_system(group, (1, x)).is_trivial():
            return False
    return True


# ---------------------------------------------------------------------------
# subgroup computations by enumeration


def generate_incrementally(degree: int, elements: Iterable[Permutation]) -> PermGroup:
    """Group generated by ``elements``, skipping redundant ones."""
    b = _ChainBuilder(degree)
    gens = []
    for p in elements:
        if b.add(p.raw):
            gens.append(p)
    return PermGroup._with_chain(gens, degree, b.freeze())


def intersect_small(a: PermGroup, b: PermGroup, max_enum: int = DEFAULT_MAX_ENUM) -> PermGroup:
    """``a ∩ b`` by enumerating the smaller group."""
    if a.degree != b.degree:
        raise GroupError("degree mismatch")
    small, big = (a, b) if a.order() <= b.order() else (b, a)
    if small.order() > max_enum:
        raise ThresholdError(f"both groups exceed the enumeration threshold {max_enum}")
    builder = _ChainBuilder(a.degree)
    gens = []
    big_chain = big.chain
    for raw in small.chain.iter_raw():
        if _is_identity(raw) or builder.contains(raw):
            continue
        if big_chain.contains_raw(raw):
            builder.add(raw)
            gens.append(Permutation._wrap(raw))
    return PermGroup._with_chain(gens, a.degree, builder.freeze())


def conjugacy_class(group: PermGroup, x: Permutation, max_enum: int = DEFAULT_MAX_ENUM) -> set[Raw]:
    gens = [(g.raw, _invert(g.raw)) for g in group.generators]
    seen = {x.raw}
    queue = deque([x.raw])
    while queue:
        y = queue.popleft()
        for g, gi in gens:
            z = _compose(_compose(gi, y), g)
            if z not in seen:
                seen.add(z)
                if len(seen) > max_enum:
                    raise ThresholdError(f"conjugacy class exceeds {max_enum}")
                queue.append(z)
    return seen


def centralizer_order(group: PermGroup, x: Permutation, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    """|C_G(x)| = |G| / |x^G|."""
    if not group.contains(x):
        raise GroupError("element not in group")
    return group.order() // len(conjugacy_class(group, x, max_enum))


def conjugating_element(
    group: PermGroup,
    src: Sequence[Permutation],
    targets: Iterable[Sequence[Permutation]],
    max_enum: int = DEFAULT_MAX_ENUM,
) -> Permutation | None:
    """Some ``g`` in the group with ``src[i] ^ g == tgt[i]`` for one of ``targets``.

    Breadth-first search over the conjugation orbit of the tuple ``src``.
    """
    gens = [(g.raw, _invert(g.raw)) for g in group.generators]
    start = tuple(p.raw for p in src)
    want = {tuple(p.raw for p in t) for t in targets}
    trans = {start: tuple(range(group.degree))}
    queue = deque([start])
    while queue:
        tup = queue.popleft()
        if tup in want:
            return Permutation._wrap(trans[tup])
        for g, gi in gens:
            img = tuple(_compose(_compose(gi, y), g) for y in tup)
            if img not in trans:
                trans[img] = _compose(trans[tup], g)
                if len(trans) > max_enum:
                    raise ThresholdError(f"conjugation orbit exceeds {max_enum}")
                queue.append(img)
    return None


def normal_closure(group: PermGroup, seed: PermGroup | Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of ``group`` containing ``seed``."""
    seeds = list(seed.generators if isinstance(seed, PermGroup) else seed)
    n = group.degree
    builder = _ChainBuilder(n)
    gens: list[Permutation] = []
    queue = deque()
    for s in seeds:
        if builder.add(s.raw):
            gens.append(s)
            queue.append(s.raw)
    conj = [(g.raw, _invert(g.raw)) for g in group.generators]
    while queue:
        x = queue.popleft()
        for g, gi in conj:
            c = _compose(_compose(gi, x), g)
            if builder.add(c):
                gens.append(Permutation._wrap(c))
                queue.append(c)
    if not gens:
        gens = [Permutation.identity(n)]
    return PermGroup._with_chain(gens, n, builder.freeze())


def derived_subgroup(group: PermGroup) -> PermGroup:
    gens = group.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, [c for c in comms if not c.is_identity()])


def core(group: PermGroup, sub: PermGroup, max_enum: int = DEFAULT_MAX_ENUM) -> PermGroup:
    """Largest normal subgroup of ``group`` inside ``sub``, by element-wise testing.

    ``h`` lies in the core iff its whole conjugacy class lies in ``sub``.
    """
    if sub.order() > max_enum:
        raise ThresholdError("subgroup too large to enumerate")
    keep = []
    for h in sub.elements():
        if h.is_identity():
            continue
        cls = conjugacy_class(group, h, max_enum)
        if all(sub.chain.contains_raw(c) for c in cls):
            keep.append(h)
    return generate_incrementally(group.degree, keep) if keep else PermGroup([], group.degree)


def element_from_word(gens: Sequence[Permutation], word: Sequence[int]) -> Permutation:
    """Product of ``gens[i]`` (negative index ``~i`` means inverse) in order."""
    out = Permutation.identity(gens[0].degree)
    for w in word:
        out = out * (gens[w] if w >= 0 else gens[~w].inverse())
    return out
