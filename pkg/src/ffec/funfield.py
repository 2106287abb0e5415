"""The rational function field F = F_q(T): places, valuations, divisors, heights.

The base field is fixed to F_q(T) with the place at infinity the pole of
T, so the constant-field curve has genus 0.  Places are the monic
irreducible polynomials of F_q[T] together with infinity; the residue
field of a finite place of degree d is the canonical extension F_{q^d},
reached by evaluating at the smallest root of the place polynomial.

Every value here is immutable and every operation is a pure function, so
everything is safe to use concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from . import fpoly
from .errors import ParseError, PreconditionError
from .fpoly import GF, Poly, extension, factor, irreducibles


class RationalFunction:
    """Element of F_q(T) in canonical form: monic denominator, gcd 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        field = num.field
        if den is None:
            den = Poly.one(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.field != field:
            raise PreconditionError("numerator/denominator field mismatch")
        if num.is_zero():
            den = Poly.one(field)
        elif den.is_one():
            pass
        else:
            g = fpoly.gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            if not den.is_monic():
                c = field.inv(den.lc())
                num, den = num.scale(c), den.scale(c)
        self.field = field
        self.num = num
        self.den = den

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise PreconditionError("not a constant")
        return self.num.coeff(0)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num + other.num)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num - other.num)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(self.num * other.num)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num**e, self.den**e)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, int):
            return RationalFunction(Poly.constant(self.field, self.field.from_int(other)))
        raise TypeError(f"cannot coerce {other!r} into F_q(T)")

    def derivative(self) -> "RationalFunction":
        """d/dT via the quotient rule (exact)."""
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (Poly, int)):
            other = self._coerce(other)
        return (
            isinstance(other, RationalFunction)
            and other.field == self.field
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def __str__(self):
        if self.den.is_one():
            return self.num.to_string()
        return f"({self.num.to_string()})/({self.den.to_string()})"

    def __repr__(self):
        return str(self)


@dataclass(frozen=True)
class Place:
    """A place of F_q(T): a monic irreducible polynomial, or infinity."""

    poly: Poly | None  # None encodes the place at infinity

    @classmethod
    def finite(cls, poly: Poly) -> "Place":
        poly = poly.monic()
        if not fpoly.is_irreducible(poly):
            raise PreconditionError(f"{poly} is not irreducible")
        return cls(poly)

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 0, 0)
        return (0, self.poly.degree, self.poly.index())

    def __str__(self):
        return "inf" if self.poly is None else self.poly.to_string()

    def __repr__(self):
        return f"Place({self})"


class Divisor:
    """Finite formal integer combination of places."""

    __slots__ = ("support",)

    def __init__(self, support: dict[Place, int] | None = None):
        self.support = {p: c for p, c in (support or {}).items() if c != 0}

    def coefficient(self, place: Place) -> int:
        return self.support.get(place, 0)

    def items(self) -> list[tuple[Place, int]]:
        return sorted(self.support.items(), key=lambda kv: kv[0].sort_key())

    def places(self) -> list[Place]:
        return [p for p, _ in self.items()]

    def degree(self) -> int:
        """Sum of coefficients weighted by residue-field degrees."""
        return sum(c * p.degree for p, c in self.support.items())

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.support.values())

    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.support)
        for p, c in other.support.items():
            out[p] = out.get(p, 0) + c
        return Divisor(out)

    def __sub__(self, other: "Divisor") -> "Divisor":
        out = dict(self.support)
        for p, c in other.support.items():
            out[p] = out.get(p, 0) - c
        return Divisor(out)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -c for p, c in self.support.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and other.support == self.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __str__(self):
        if not self.support:
            return "0"
        return " + ".join(f"{c}*({p})" for p, c in self.items())

    def __repr__(self):
        return f"Divisor({self})"


# ---------------------------------------------------------------------------
# valuations, divisors, heights


def _finite_multiplicity(f: Poly, g: Poly) -> int:
    """Multiplicity of the irreducible g in f (f nonzero)."""
    n = 0
    while True:
        q, r = divmod(f, g)
        if not r.is_zero():
            return n
        f = q
        n += 1


def valuation(x: RationalFunction, place: Place) -> int:
    """The discrete valuation of x at the given place."""
    if x.is_zero():
        raise PreconditionError("valuation of zero is undefined")
    if place.is_infinite:
        return x.den.degree - x.num.degree
    g = place.poly
    # num and den are coprime, so at most one of the two counts is nonzero
    n = _finite_multiplicity(x.num, g)
    if n:
        return n
    return -_finite_multiplicity(x.den, g)


def principal_divisor(x: RationalFunction) -> Divisor:
    """The divisor of zeros and poles of a nonzero x; always degree 0."""
    if x.is_zero():
        raise PreconditionError("the zero function has no divisor")
    support: dict[Place, int] = {}
    for g, m in factor(x.num) if x.num.degree > 0 else []:
        support[Place(g)] = m
    for g, m in factor(x.den) if x.den.degree > 0 else []:
        support[Place(g)] = support.get(Place(g), 0) - m
    v_inf = x.den.degree - x.num.degree
    if v_inf:
        support[Place.infinity()] = v_inf
    div = Divisor(support)
    assert div.degree() == 0
    return div


def zero_pole_split(x: RationalFunction) -> tuple[Divisor, Divisor]:
    """(x)_0 and (x)_inf, the effective parts with (x) = (x)_0 - (x)_inf."""
    div = principal_divisor(x)
    zeros = Divisor({p: c for p, c in div.support.items() if c > 0})
    poles = Divisor({p: -c for p, c in div.support.items() if c < 0})
    return zeros, poles


def height(x: RationalFunction) -> int:
    """deg of the pole (equivalently zero) divisor; 0 iff x is constant."""
    if x.is_zero():
        raise PreconditionError("height of zero is undefined")
    # poles: the denominator contributes deg(den); infinity contributes
    # max(0, deg num - deg den).  Together: max of the two degrees.
    return max(x.num.degree, x.den.degree)


def is_pth_power(x: RationalFunction) -> bool:
    """True iff x lies in F_q(T^p), i.e. dx/dT = 0."""
    if x.is_zero():
        raise PreconditionError("zero input rejected")
    return x.num.derivative().is_zero() and x.den.derivative().is_zero()


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise PreconditionError(f"{a} is not a unit mod {n}")
    k, cur = 1, a % n
    while cur != 1:
        cur = (cur * a) % n
        k += 1
    return k


def cyclotomic_splitting_degree(ctx: "FieldContext", n: int) -> int:
    """Order of q mod n = common degree of the factors of the n-th
    cyclotomic polynomial over F_q (so the n-th roots of unity generate a
    constant-field extension of exactly this degree)."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n % ctx.p == 0:
        raise PreconditionError(f"n = {n} is divisible by p = {ctx.p}")
    d = multiplicative_order(ctx.q % n if n > 1 else 0, n)
    if n > 1:
        degs = {g.degree for g, _ in factor(fpoly.cyclotomic(ctx.field, n))}
        assert degs == {d}, f"cyclotomic factor degrees {degs} != {{{d}}}"
    return d


# ---------------------------------------------------------------------------
# field context and residue fields


@dataclass(frozen=True)
class Residue:
    """Residue field of a place with its reduction map F_q(T) -> F_{q^d}."""

    place: Place
    field: object
    theta: object | None  # image of T; None at infinity
    reduce: Callable[[RationalFunction], object]


class FieldContext:
    """The ambient data (p, s, q) with constructors for F_q(T) values."""

    def __init__(self, p: int, s: int = 1):
        if p <= 3:
            raise PreconditionError("characteristic must exceed 3")
        if s < 1:
            raise PreconditionError("extension exponent must be positive")
        self.p = p
        self.s = s
        self.field = GF(p, s)
        self.q = self.field.card

    # constructors -------------------------------------------------------

    def poly(self, ints: Iterable[int]) -> Poly:
        return Poly.from_ints(self.field, ints)

    def rational(self, num, den=None) -> RationalFunction:
        if isinstance(num, int):
            num = Poly.constant(self.field, self.field.from_int(num))
        if isinstance(den, int):
            den = Poly.constant(self.field, self.field.from_int(den))
        return RationalFunction(num, den)

    @property
    def T(self) -> RationalFunction:
        return RationalFunction(Poly.x(self.field))

    def constant(self, n: int) -> RationalFunction:
        return self.rational(n)

    def parse(self, text: str) -> RationalFunction:
        return parse_rational(self, text)

    # places -------------------------------------------------------------

    def places_of_degree(self, d: int) -> list[Place]:
        """Finite places of degree d (infinity is not included)."""
        return [Place(f) for f in irreducibles(self.field, d)]

    def nonsquare(self):
        """Smallest non-square constant (q is odd, so one exists)."""
        sq = {self.field.mul(a, a) for a in self.field.elements()}
        for a in self.field.elements():
            if a not in sq:
                return a
        raise AssertionError("no non-square in a finite field of odd order")

    def residue(self, place: Place) -> Residue:
        return _residue_cached(self, place)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (other.p, other.s) == (self.p, self.s)

    def __hash__(self):
        return hash((self.p, self.s))

    def __repr__(self):
        return f"F_{self.q}(T)"


@lru_cache(maxsize=None)
def _residue_cached(ctx: FieldContext, place: Place) -> Residue:
    if place.is_infinite:

        def reduce_inf(x: RationalFunction):
            if x.is_zero():
                return ctx.field.zero
            v = valuation(x, place)
            if v < 0:
                raise PreconditionError(f"{x} has a pole at infinity")
            if v > 0:
                return ctx.field.zero
            return ctx.field.div(x.num.lc(), x.den.lc())

        return Residue(place, ctx.field, None, reduce_inf)

    d = place.degree
    kfield = extension(ctx.field, d)
    if d == 1:
        embed = lambda c: c
        theta = ctx.field.neg(place.poly.coeff(0))
    else:
        embed = kfield.embed
        f_up = place.poly.map_field(kfield, embed)
        theta = None
        for i in range(kfield.card):
            cand = kfield.from_index(i)
            if f_up(cand) == kfield.zero:
                theta = cand
                break
        assert theta is not None, "place polynomial has no root in its residue field"

    def reduce_fin(x: RationalFunction):
        if x.is_zero():
            return kfield.zero
        if valuation(x, place) < 0:
            raise PreconditionError(f"{x} has a pole at {place}")
        num = x.num.map_field(kfield, embed)(theta)
        den = x.den.map_field(kfield, embed)(theta)
        return kfield.div(num, den)

    return Residue(place, kfield, theta, reduce_fin)


# ---------------------------------------------------------------------------
# parsing: integer coefficients, T, + - * / ^, parentheses


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, 1, self.pos + 1)

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self) -> str:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of input")
        self.pos += 1
        return ch

    def take_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])


def parse_rational(ctx: FieldContext, text: str) -> RationalFunction:
    """Parse e.g. ``(T^2+1)/(T)``; integer coefficients reduce mod p."""
    tk = _Tokenizer(text)
    value = _parse_sum(ctx, tk)
    if tk.peek() is not None:
        tk.error(f"unexpected character {tk.peek()!r}")
    return value


def _parse_sum(ctx, tk) -> RationalFunction:
    value = _parse_product(ctx, tk)
    while tk.peek() in ("+", "-"):
        op = tk.take()
        rhs = _parse_product(ctx, tk)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_product(ctx, tk) -> RationalFunction:
    value = _parse_power(ctx, tk)
    while True:
        ch = tk.peek()
        if ch in ("*", "/"):
            tk.take()
            rhs = _parse_power(ctx, tk)
            if ch == "/":
                if rhs.is_zero():
                    tk.error("division by zero")
                value = value / rhs
            else:
                value = value * rhs
        elif ch is not None and (ch.isdigit() or ch in ("T", "(")):
            value = value * _parse_power(ctx, tk)  # implicit product, e.g. 3T
        else:
            return value


def _parse_power(ctx, tk) -> RationalFunction:
    base = _parse_atom(ctx, tk)
    while tk.peek() == "^":
        tk.take()
        exp = tk.take_int()
        base = base**exp
    return base


def _parse_atom(ctx, tk) -> RationalFunction:
    ch = tk.peek()
    if ch is None:
        tk.error("unexpected end of input")
    if ch == "(":
        tk.take()
        value = _parse_sum(ctx, tk)
        if tk.peek() != ")":
            tk.error("expected ')'")
        tk.take()
        return value
    if ch == "-":
        tk.take()
        return -_parse_atom(ctx, tk)
    if ch == "+":
        tk.take()
        return _parse_atom(ctx, tk)
    if ch == "T":
        tk.take()
        return ctx.T
    if ch.isdigit():
        return ctx.constant(tk.take_int())
    tk.error(f"unexpected character {ch!r}")
