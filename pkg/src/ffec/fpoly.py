"""Dense univariate polynomials over a finite field.

Coefficients are stored constant-term first with no trailing zeros; the
zero polynomial has an empty coefficient tuple.  Factorization follows
the classical route: strip p-th powers via the zero-derivative criterion,
split off repeated factors with gcd(f, f'), then distinct-degree and
randomized equal-degree splitting.  The equal-degree randomness is seeded
from the input polynomial itself, so factor() is a pure function.

This module also owns the deterministic tower constructions: the
canonical irreducible of degree d over a field (smallest by coefficient
index, most significant coefficient first) and the cached extension and
GF factories built from it.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .errors import PreconditionError
from .ffield import ExtField, PrimeField


class Poly:
    """Polynomial over a finite field; immutable, hashable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == field.zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(n) for n in ints])

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def lc(self):
        if not self.coeffs:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.lc()))

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Poly(f, out)

    def __sub__(self, other):
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            f, [f.sub(self.coeff(i), other.coeff(i)) for i in range(n)]
        )

    def __neg__(self):
        f = self.field
        return Poly(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        zero = f.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj != zero:
                    out[i + j] = f.add(out[i + j], f.mul(ai, bj))
        return Poly(f, out)

    def scale(self, c) -> "Poly":
        f = self.field
        if c == f.zero:
            return Poly.zero(f)
        return Poly(f, [f.mul(c, a) for a in self.coeffs])

    def __pow__(self, e: int):
        if e < 0:
            raise PreconditionError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc()
        inv_lb = f.inv(lb)
        if len(rem) <= db:
            return Poly.zero(f), self
        quot = [f.zero] * (len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db]
            if c == f.zero:
                continue
            q = f.mul(c, inv_lb)
            quot[i] = q
            for j, bc in enumerate(other.coeffs):
                rem[i + j] = f.sub(rem[i + j], f.mul(q, bc))
        return Poly(f, quot), Poly(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def derivative(self) -> "Poly":
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            n = f.from_int(i)
            out.append(f.mul(n, self.coeffs[i]))
        return Poly(f, out)

    def map_field(self, new_field, embed) -> "Poly":
        """Reinterpret coefficients in another field via embed()."""
        return Poly(new_field, [embed(c) for c in self.coeffs])

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def index(self) -> int:
        """Total order on polynomials: degree, then coefficient digits."""
        f = self.field
        i = 0
        for c in reversed(self.coeffs):
            i = i * f.card + f.index(c)
        return i

    def to_string(self, var: str = "T") -> str:
        if self.is_zero():
            return "0"
        f = self.field
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == f.zero:
                continue
            ci = f.index(c)
            if i == 0:
                parts.append(str(ci))
            else:
                head = "" if ci == 1 else f"{ci}*"
                parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
        return "+".join(parts)

    def __repr__(self):
        return self.to_string()


def gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root_poly(f: Poly) -> Poly:
    """Inverse of g -> g(x)^p for f with zero derivative: f = g(x^p)."""
    field = f.field
    p = field.p
    root_exp = field.card // p  # c -> c^(card/p) inverts Frobenius
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(field.power(f.coeffs[i], root_exp))
    return Poly(field, out)


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over the coefficient field."""
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    field = f.field
    q = field.card
    x = Poly.x(field)
    for r in _prime_divisors(d):
        h = pow_mod(x, q ** (d // r), f) - (x % f)
        if gcd(h, f).degree != 0:
            return False
    h = pow_mod(x, q**d, f) - (x % f)
    return h.is_zero()


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus on a squarefree product of degree-d irreducibles."""
    field = f.field
    if f.degree == d:
        return [f.monic()]
    exp = (field.card**d - 1) // 2  # card is odd throughout (p > 3)
    while True:
        r = Poly(
            field,
            [field.from_index(rng.randrange(field.card)) for _ in range(f.degree)],
        )
        if r.degree < 1:
            continue
        g = gcd(r, f)
        if 0 < g.degree < f.degree:
            pieces = [g, f // g]
        else:
            h = pow_mod(r, exp, f) - Poly.one(field)
            g = gcd(h, f)
            if 0 < g.degree < f.degree:
                pieces = [g, f // g]
            else:
                continue
        out = []
        for piece in pieces:
            out.extend(_equal_degree_split(piece, d, rng))
        return out


def _distinct_degree_factor(f: Poly, rng: random.Random) -> list[Poly]:
    """Factor a squarefree monic polynomial into monic irreducibles."""
    field = f.field
    q = field.card
    out: list[Poly] = []
    x = Poly.x(field)
    h = x % f
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append(f.monic())
            break
        h = pow_mod(h, q, f)
        g = gcd(h - (x % f), f)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d, rng))
            f = f // g
            h = h % f
    return out


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Full factorization: list of (monic irreducible, multiplicity).

    The product of the factors times the leading coefficient reproduces
    the input.  Deterministic: the splitting RNG is seeded from f.
    """
    if f.is_zero():
        raise PreconditionError("cannot factor the zero polynomial")
    field = f.field
    rng = random.Random((field.card, f.index()).__hash__())
    mults: dict[Poly, int] = {}

    def work(g: Poly, mult: int):
        g = g.monic()
        if g.degree <= 0:
            return
        der = g.derivative()
        if der.is_zero():
            work(_pth_root_poly(g), mult * field.p)
            return
        rep = gcd(g, der)
        if rep.degree == 0:
            for piece in _distinct_degree_factor(g, rng):
                mults[piece] = mults.get(piece, 0) + mult
            return
        work(g // rep, mult)
        work(rep, mult)

    work(f, 1)
    return sorted(mults.items(), key=lambda kv: kv[0].index())


def roots(f: Poly) -> list:
    """Roots of f in its coefficient field, via the degree-1 factors."""
    field = f.field
    out = []
    for g, _ in factor(f):
        if g.degree == 1:
            out.append(field.neg(g.coeffs[0]))
    return sorted(out, key=field.index)


def monic_polys(field, d: int):
    """All monic degree-d polynomials, ordered by coefficient index."""
    card = field.card
    for m in range(card**d):
        digits = []
        i = m
        for _ in range(d):
            i, r = divmod(i, card)
            digits.append(field.from_index(r))
        yield Poly(field, digits + [field.one])


def irreducibles(field, d: int) -> list[Poly]:
    """Monic irreducibles of degree d, in canonical order (cached)."""
    return _irreducibles_cached(field, d)


@lru_cache(maxsize=None)
def _irreducibles_cached(field, d: int) -> list[Poly]:
    return [f for f in monic_polys(field, d) if is_irreducible(f)]


@lru_cache(maxsize=None)
def canonical_irreducible(field, d: int) -> Poly:
    """First monic irreducible of degree d in the coefficient-index order."""
    for f in monic_polys(field, d):
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible found (impossible over a finite field)")


@lru_cache(maxsize=None)
def extension(field, d: int):
    """The canonical degree-d extension of a field (d = 1 gives it back)."""
    if d < 1:
        raise PreconditionError("extension degree must be positive")
    if d == 1:
        return field
    return ExtField(field, canonical_irreducible(field, d).coeffs)


@lru_cache(maxsize=None)
def GF(p: int, s: int = 1):
    """The field with p^s elements, built on the canonical modulus."""
    base = PrimeField(p)
    return base if s == 1 else extension(base, s)


def cyclotomic(field, n: int) -> Poly:
    """The n-th cyclotomic polynomial reduced into field (needs p coprime n)."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n % field.p == 0:
        raise PreconditionError(f"n = {n} is divisible by the characteristic")
    x = Poly.x(field)
    phi = {1: x - Poly.one(field)}
    for m in range(2, n + 1):
        if n % m:
            continue
        num = x**m - Poly.one(field)
        for d in range(1, m):
            if m % d == 0:
                num, rem = divmod(num, phi[d])
                assert rem.is_zero()
        phi[m] = num
    return phi[n]
