"""Finite fields GF(p^m) with table-driven arithmetic.

An element is an int in ``range(q)`` whose base-p digits are the polynomial
coefficients, constant term first.  The modulus is the least monic
irreducible polynomial of degree m under that same integer encoding of its
lower coefficients.
"""

from __future__ import annotations

from functools import lru_cache

from sympy import factorint


class FieldError(ValueError):
    pass


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``, or raise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, m),) = f.items()
    return p, m


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _poly_mod(num: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of ``num`` by monic ``mod`` (coefficient lists, low first)."""
    num = num[:]
    dm = len(mod) - 1
    for i in range(len(num) - 1, dm - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dm + 1):
                num[i - dm + j] = (num[i - dm + j] - c * mod[j]) % p
    return [x % p for x in num[:dm]] + [0] * max(0, dm - len(num))


def _is_irreducible(mod: list[int], p: int) -> bool:
    m = len(mod) - 1
    for d in range(1, m // 2 + 1):
        for code in range(p**d):
            div = _digits(code, p, d) + [1]
            if not any(_poly_mod(mod, div, p)):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m over GF(p), coefficients low first."""
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        mod = _digits(code, p, m) + [1]
        if mod[0] == 0:
            continue
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class FiniteField:
    """GF(p^m) for p^m <= 2**16."""

    def __init__(self, q: int):
        p, m = prime_power(q)
        if q > 2**16:
            raise FieldError("fields larger than 2**16 are not supported")
        self.p, self.m, self.q = p, m, q
        self.modulus = least_irreducible(p, m)
        self._build_tables()

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        rem = _poly_mod(prod, list(self.modulus), p) if len(prod) > m else [c % p for c in prod]
        return sum(c * p**i for i, c in enumerate(rem[:m]))

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        if m == 1:
            self._add = None
        else:
            self._add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)] if q <= 256 else None
        n = q - 1
        primes = list(factorint(n)) if n > 1 else []
        for g in range(1, q):
            if n == 1 or all(self._slow_pow(g, n // r) != 1 for r in primes):
                break
        self.generator = g
        exp = [1] * n
        log = [0] * q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g) if m > 1 else x * g % p
        if x != 1 or len(set(exp)) != n:
            raise FieldError("multiplicative group is not cyclic of order q-1")
        self._exp, self._log = exp, log

    def _slow_pow(self, a: int, e: int) -> int:
        if self.m == 1:
            return pow(a, e, self.p)
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        for _ in range(self.m):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * scale
            scale *= p
        return out

    # arithmetic

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        d = _digits(a, self.p, self.m)
        return sum(((-c) % self.p) * self.p**i for i, c in enumerate(d))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def prim_power(self, e: int) -> int:
        """The generator raised to ``e``."""
        return self._exp[e % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def additive_basis(self) -> list[int]:
        return [self.p**i for i in range(self.m)]

    def subfield(self, d: int) -> list[int]:
        """Elements of the subfield GF(p^d), in increasing order."""
        if self.m % d:
            raise FieldError(f"{d} does not divide {self.m}")
        qd = self.p**d
        return [a for a in range(self.q) if self.pow(a, qd) == a]

    def subfield_generator(self, d: int) -> int:
        """A generator of the multiplicative group of GF(p^d)."""
        if self.m % d:
            raise FieldError(f"{d} does not divide {self.m}")
        return self.prim_power((self.q - 1) // (self.p**d - 1))

    def __repr__(self) -> str:
        return f"FiniteField({self.q})"


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except FieldError:
        return False
    return True

