"""Finite fields F_{p^m} as explicit quotient rings.

Prime fields store elements as plain ints in [0, p).  Extension fields
store elements as fixed-length tuples of base-field elements (coefficient
vectors modulo a monic irreducible polynomial), so towers such as
F_p -> F_q -> F_{q^d} need no special casing.  All fields expose the same
method-based protocol (add, mul, inv, power, index, ...); elements stay
hashable and cheap, which matters for point counting and BFS enumeration.

Elements of a field of cardinality c are totally ordered by ``index``,
an integer in [0, c) obtained by reading the coefficient vector as base-c
digits.  This ordering is what "smallest"/"canonical" means everywhere
else in the package.
"""

from __future__ import annotations

from typing import Iterator

from .errors import PreconditionError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """F_p with int elements; arithmetic is plain modular arithmetic."""

    __slots__ = ("p", "card", "zero", "one")

    def __init__(self, p: int):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        self.p = p
        self.card = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def from_int(self, n: int):
        return n % self.p

    def index(self, a) -> int:
        return a

    def from_index(self, i: int):
        if not 0 <= i < self.p:
            raise PreconditionError(f"index {i} out of range for F_{self.p}")
        return i

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def embed(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtField:
    """Degree-d extension of a base field, elements are length-d tuples.

    The modulus is a monic irreducible of degree d over the base field,
    given as a coefficient tuple (constant term first, leading 1 last).
    Irreducibility is the caller's responsibility; use fpoly.extension()
    for the canonical, validated construction.
    """

    __slots__ = ("base", "deg", "modulus", "card", "p", "zero", "one", "_red")

    def __init__(self, base, modulus: tuple):
        d = len(modulus) - 1
        if d < 2:
            raise PreconditionError("extension degree must be at least 2")
        if modulus[-1] != base.one:
            raise PreconditionError("modulus must be monic")
        self.base = base
        self.deg = d
        self.modulus = tuple(modulus)
        self.card = base.card ** d
        self.p = base.p
        self.zero = (base.zero,) * d
        self.one = (base.one,) + (base.zero,) * (d - 1)
        # reduction table: x^(d+k) mod modulus for k = 0..d-2
        red = []
        cur = tuple(base.neg(c) for c in modulus[:-1])  # x^d
        red.append(cur)
        for _ in range(d - 2):
            # multiply by x: shift up, then fold the overflowing x^d term
            top = cur[-1]
            shifted = (base.zero,) + cur[:-1]
            if top == base.zero:
                cur = shifted
            else:
                cur = tuple(
                    base.sub(shifted[i], base.mul(top, modulus[i])) for i in range(d)
                )
            red.append(cur)
        self._red = red

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        d = self.deg
        zero = base.zero
        prod = [zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj == zero:
                    continue
                prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        out = prod[:d]
        for k in range(d - 1):
            c = prod[d + k]
            if c == zero:
                continue
            red = self._red[k]
            for i in range(d):
                if red[i] != zero:
                    out[i] = base.add(out[i], base.mul(c, red[i]))
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.card - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def embed(self, c):
        """Base-field element -> extension element (constant vector)."""
        return (c,) + (self.base.zero,) * (self.deg - 1)

    def index(self, a) -> int:
        b = self.base
        i = 0
        for c in reversed(a):
            i = i * b.card + b.index(c)
        return i

    def from_index(self, i: int):
        if not 0 <= i < self.card:
            raise PreconditionError(f"index {i} out of range")
        b = self.base
        digits = []
        for _ in range(self.deg):
            i, r = divmod(i, b.card)
            digits.append(b.from_index(r))
        return tuple(digits)

    def elements(self) -> Iterator[tuple]:
        for i in range(self.card):
            yield self.from_index(i)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.base, self.modulus))

    def __repr__(self):
        return f"GF({self.card})"
