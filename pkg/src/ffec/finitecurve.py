"""Elliptic curves over the residue fields: group law, counting, torsion.

Curves live over any finite field from ffield (cardinality capped at
10^6: counting is naive enumeration).  Points are None (the identity) or
(x, y) tuples of field elements.  The Weil pairing is computed by
Miller-style evaluation of the functions with divisor n(P) - n(O) at
translated divisors, retrying with fresh auxiliary points whenever an
evaluation lands on a zero or pole.

The module also hosts the two division-polynomial tests over F_q(T)
itself (l = 2, 3): rational-root search decides reducibility of the
l-torsion module, and the splitting type of the 2-division cubic gives
the Galois tag of the 2-torsion field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import fpoly
from .curve import WeierstrassCurve
from .errors import PreconditionError
from .fpoly import Poly, extension, factor
from .funfield import Place, RationalFunction
from .localred import local_reduction

COUNTING_CAP = 10**6

Point = tuple | None  # affine (x, y) or None for the identity


class FiniteCurve:
    """y^2 = x^3 + a x + b over a finite field of characteristic > 3."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        four_a3 = field.mul(field.from_int(4), field.power(a, 3))
        b2 = field.mul(b, b)
        disc = field.add(four_a3, field.mul(field.from_int(27), b2))
        if disc == field.zero:
            raise PreconditionError("singular curve: 4a^3 + 27b^2 = 0")
        self.field = field
        self.a = a
        self.b = b

    def rhs(self, x):
        f = self.field
        return f.add(f.add(f.power(x, 3), f.mul(self.a, x)), self.b)

    def on_curve(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return self.field.mul(y, y) == self.rhs(x)

    # -- group law -------------------------------------------------------

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        return (P[0], self.field.neg(P[1]))

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        f = self.field
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if f.add(y1, y2) == f.zero:
                return None
            lam = f.div(
                f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a),
                f.mul(f.from_int(2), y1),
            )
        else:
            lam = f.div(f.sub(y2, y1), f.sub(x2, x1))
        x3 = f.sub(f.sub(f.mul(lam, lam), x1), x2)
        y3 = f.sub(f.mul(lam, f.sub(x1, x3)), y1)
        return (x3, y3)

    def smul(self, n: int, P: Point) -> Point:
        if n < 0:
            return self.smul(-n, self.neg(P))
        R: Point = None
        Q = P
        while n:
            if n & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            n >>= 1
        return R

    def order_of(self, P: Point, group_order: int | None = None) -> int:
        if P is None:
            return 1
        if group_order is not None:
            # the order divides the group order: factor it out
            n = group_order
            for ell in _prime_factors(group_order):
                while n % ell == 0 and self.smul(n // ell, P) is None:
                    n //= ell
            return n
        n, Q = 1, P
        while Q is not None:
            Q = self.add(Q, P)
            n += 1
        return n

    # -- enumeration --------------------------------------------------------

    def points(self) -> list[Point]:
        if self.field.card > COUNTING_CAP:
            raise PreconditionError(f"field size {self.field.card} above counting cap")
        f = self.field
        table: dict = {}
        for y in f.elements():
            table.setdefault(f.mul(y, y), []).append(y)
        pts: list[Point] = [None]
        for x in f.elements():
            for y in table.get(self.rhs(x), ()):
                pts.append((x, y))
        return pts

    def point_count(self) -> int:
        if self.field.card > COUNTING_CAP:
            raise PreconditionError(f"field size {self.field.card} above counting cap")
        f = self.field
        counts: dict = {}
        for y in f.elements():
            sq = f.mul(y, y)
            counts[sq] = counts.get(sq, 0) + 1
        total = 1  # the identity
        for x in f.elements():
            total += counts.get(self.rhs(x), 0)
        q = f.card
        a = q + 1 - total
        assert a * a <= 4 * q, "Hasse bound violated (counting bug)"
        return total

    def random_point(self, rng: random.Random) -> Point:
        f = self.field
        while True:
            x = f.from_index(rng.randrange(f.card))
            y = field_sqrt(f, self.rhs(x))
            if y is not None:
                return (x, y if rng.randrange(2) else f.neg(y))

    def __repr__(self):
        return f"FiniteCurve({self.field!r}, a={self.a}, b={self.b})"


def field_sqrt(field, a):
    """A square root of a, or None if a is not a square (Tonelli-Shanks)."""
    if a == field.zero:
        return a
    card = field.card
    if field.power(a, (card - 1) // 2) != field.one:
        return None
    if card % 4 == 3:
        return field.power(a, (card + 1) // 4)
    # write card - 1 = m 2^e with m odd, find a non-square z
    m, e = card - 1, 0
    while m % 2 == 0:
        m //= 2
        e += 1
    z = None
    for i in range(1, card):
        cand = field.from_index(i)
        if field.power(cand, (card - 1) // 2) != field.one:
            z = cand
            break
    c = field.power(z, m)
    t = field.power(a, m)
    r = field.power(a, (m + 1) // 2)
    while t != field.one:
        t2, i = t, 0
        while t2 != field.one:
            t2 = field.mul(t2, t2)
            i += 1
        b = field.power(c, 1 << (e - i - 1))
        r = field.mul(r, b)
        c = field.mul(b, b)
        t = field.mul(t, c)
        e = i
    return r


def _prime_factors(n: int) -> list[int]:
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


# ---------------------------------------------------------------------------
# reduction of a curve over F_q(T) at a good place


@dataclass(frozen=True)
class FrobeniusData:
    place: Place
    norm: int  # size of the residue field
    trace: int  # norm + 1 - #points


def reduce_curve(E: WeierstrassCurve, place: Place) -> FiniteCurve:
    """The reduction of a place-minimal model of E at a good place."""
    data = local_reduction(E, place)
    if data.kodaira != "I0":
        raise PreconditionError(f"{place} is a place of bad reduction ({data.kodaira})")
    a, b = E.a, E.b
    if data.scale:
        pi = (
            RationalFunction(place.poly)
            if not place.is_infinite
            else E.ctx.T.inverse()
        )
        a = a * pi ** (-4 * data.scale)
        b = b * pi ** (-6 * data.scale)
    res = E.ctx.residue(place)
    return FiniteCurve(res.field, res.reduce(a), res.reduce(b))


def frobenius_data(E: WeierstrassCurve, place: Place) -> FrobeniusData:
    """Residue field size and Frobenius trace at a good place."""
    C = reduce_curve(E, place)
    norm = C.field.card
    count = C.point_count()
    return FrobeniusData(place, norm, norm + 1 - count)


# ---------------------------------------------------------------------------
# division polynomials and torsion over F_q(T)


def division_polynomial(curve, ell: int):
    """The l-division polynomial in x for l = 2, 3.

    For a WeierstrassCurve the coefficients are rational functions; for a
    FiniteCurve they are field elements (a Poly over the field).
    """
    if ell not in (2, 3):
        raise PreconditionError("only l = 2 and l = 3 are supported")
    if isinstance(curve, WeierstrassCurve):
        a, b = curve.a, curve.b
        ctx = curve.ctx
        c = ctx.constant
        if ell == 2:
            return [b, a, c(0), c(1)]
        return [c(-1) * a * a, c(12) * b, c(6) * a, c(0), c(3)]
    field = curve.field
    a, b = curve.a, curve.b
    if ell == 2:
        return Poly(field, [b, a, field.zero, field.one])
    return Poly(
        field,
        [
            field.neg(field.mul(a, a)),
            field.mul(field.from_int(12), b),
            field.mul(field.from_int(6), a),
            field.zero,
            field.from_int(3),
        ],
    )


def _monic_divisors(f: Poly) -> list[Poly]:
    out = [Poly.one(f.field)]
    for g, m in factor(f):
        new = []
        for d in out:
            power = Poly.one(f.field)
            for _ in range(m + 1):
                new.append(d * power)
                power = power * g
        out = new
    return out


def rational_roots(coeffs: list[RationalFunction]) -> list[RationalFunction]:
    """All roots in F_q(T) of sum coeffs[i] x^i, by u/w candidate search."""
    if all(c.is_zero() for c in coeffs):
        raise PreconditionError("zero polynomial")
    field = coeffs[0].field
    # clear denominators: multiply by the product of them all
    denom = Poly.one(field)
    for c in coeffs:
        denom = denom * c.den
    cleared = []
    for c in coeffs:
        num = c.num * (denom // c.den)
        cleared.append(num)
    while cleared and cleared[-1].is_zero():
        cleared.pop()
    roots: set[RationalFunction] = set()
    while cleared[0].is_zero():  # x = 0 divides out
        roots.add(RationalFunction(Poly.zero(field)))
        cleared = cleared[1:]
    lead = cleared[-1]
    const = cleared[0]
    constants = [c for c in field.elements() if c != field.zero]
    u_divs = _monic_divisors(const) if const.degree > 0 else [Poly.one(field)]
    w_divs = _monic_divisors(lead) if lead.degree > 0 else [Poly.one(field)]
    rf_coeffs = [RationalFunction(c) for c in cleared]
    for u in u_divs:
        for w in w_divs:
            if fpoly.gcd(u, w).degree > 0:
                continue
            base = RationalFunction(u, w)
            for cst in constants:
                cand = base * RationalFunction(Poly.constant(field, cst))
                if cand in roots:
                    continue
                acc = RationalFunction(Poly.zero(field))
                for c in reversed(rf_coeffs):
                    acc = acc * cand + c
                if acc.is_zero():
                    roots.add(cand)
    return sorted(roots, key=lambda r: (r.num.index(), r.den.index()))


def torsion_reducible(E: WeierstrassCurve, ell: int) -> bool:
    """True iff the l-torsion Galois module has an invariant line,
    i.e. the l-division polynomial has a root in F_q(T)."""
    return bool(rational_roots(division_polynomial(E, ell)))


def _is_square_rational(x: RationalFunction) -> bool:
    """x = c g^2 test: even valuations everywhere and square constant."""
    if x.is_zero():
        return True
    for _, m in factor(x.num) if x.num.degree > 0 else []:
        if m % 2:
            return False
    for _, m in factor(x.den) if x.den.degree > 0 else []:
        if m % 2:
            return False
    field = x.field
    c = field.div(x.num.lc(), x.den.lc())
    return field.power(c, (field.card - 1) // 2) == field.one


def two_division_galois(E: WeierstrassCurve) -> str:
    """Splitting tag of the 2-division cubic: trivial, C2, C3 or S3."""
    n_roots = len(rational_roots(division_polynomial(E, 2)))
    if n_roots >= 2:
        return "trivial"
    if n_roots == 1:
        return "C2"
    # irreducible cubic x^3 + ax + b: discriminant -4a^3 - 27b^2
    disc = E.a**3 * (-4) - E.b**2 * 27
    return "C3" if _is_square_rational(disc) else "S3"


# ---------------------------------------------------------------------------
# torsion bases and the Weil pairing over a finite field


def torsion_points(C: FiniteCurve, n: int) -> list[Point]:
    """All rational points with n P = O.

    For n = 2, 3 the x-coordinates come from the division polynomial, so
    this stays fast over large fields; other n fall back to a full scan.
    """
    if n == 1:
        return [None]
    f = C.field
    if n in (2, 3):
        pts: list[Point] = [None]
        for x in fpoly.roots(division_polynomial(C, n)):
            y = field_sqrt(f, C.rhs(x))
            if y is None:
                continue
            pts.append((x, y))
            if y != f.zero:
                pts.append((x, f.neg(y)))
        return pts
    return [P for P in C.points() if C.smul(n, P) is None]


def torsion_basis(C: FiniteCurve, n: int) -> tuple[Point, Point]:
    """A basis (P, Q) of the full n-torsion with primitive pairing value.

    The full n-torsion must be rational over the curve's field; extend
    the field first (see torsion_field) if it is not.
    """
    if n == 1:
        return (None, None)
    if n % C.field.p == 0:
        raise PreconditionError("n must be prime to the characteristic")
    tors = torsion_points(C, n)
    if len(tors) != n * n:
        raise PreconditionError(
            f"full {n}-torsion is not rational here ({len(tors)} of {n * n} points)"
        )
    gens = [P for P in tors if P is not None and C.order_of(P, n * n) == n]
    gens.sort(key=lambda P: (C.field.index(P[0]), C.field.index(P[1])))
    P = gens[0]
    mults = {P}
    acc = P
    for _ in range(n - 1):
        acc = C.add(acc, P)
        if acc is not None:
            mults.add(acc)
    for Q in gens:
        if Q not in mults:
            zeta = weil_pairing(C, P, Q, n)
            if _root_of_unity_order(C.field, zeta) == n:
                return (P, Q)
    raise AssertionError("no independent torsion point found")


def torsion_field(E: WeierstrassCurve, place: Place, n: int, max_degree: int = 24) -> FiniteCurve:
    """Reduce E at a good place, then extend the residue field until the
    full n-torsion is rational; returns the extended curve.

    Candidate degrees are screened with the Weil recurrence for the point
    counts (n^2 must divide the count and n the unit-group order), so no
    large field is ever enumerated.
    """
    C0 = reduce_curve(E, place)
    k0 = C0.field
    q0 = k0.card
    a1 = q0 + 1 - C0.point_count()
    a_prev, a_d = 2, a1  # traces over the degree-0 and degree-1 extensions
    card_d = 1
    for d in range(1, max_degree + 1):
        card_d *= q0
        if card_d > COUNTING_CAP:
            break
        count_d = card_d + 1 - a_d
        if (card_d - 1) % n == 0 and count_d % (n * n) == 0:
            k = extension(k0, d)
            embed = (lambda c: c) if d == 1 else k.embed
            C = FiniteCurve(k, embed(C0.a), embed(C0.b))
            if len(torsion_points(C, n)) == n * n:
                return C
        a_prev, a_d = a_d, a1 * a_d - q0 * a_prev
    raise PreconditionError(
        f"no extension of degree <= {max_degree} within the counting cap "
        f"carries the full {n}-torsion"
    )


class _Degenerate(Exception):
    pass


def _line_value(C: FiniteCurve, A: Point, B: Point, X: Point):
    """Value at X of the line through A and B (tangent if A = B)."""
    f = C.field
    if A is None and B is None:
        return f.one
    if A is None:
        A, B = B, A
    if B is None:  # vertical line through A
        val = f.sub(X[0], A[0])
        if val == f.zero:
            raise _Degenerate
        return val
    x1, y1 = A
    x2, y2 = B
    if x1 == x2:
        if f.add(y1, y2) == f.zero:  # vertical
            val = f.sub(X[0], x1)
            if val == f.zero:
                raise _Degenerate
            return val
        lam = f.div(f.add(f.mul(f.from_int(3), f.mul(x1, x1)), C.a), f.mul(f.from_int(2), y1))
    else:
        lam = f.div(f.sub(y2, y1), f.sub(x2, x1))
    val = f.sub(f.sub(X[1], y1), f.mul(lam, f.sub(X[0], x1)))
    if val == f.zero:
        raise _Degenerate
    return val


def _miller(C: FiniteCurve, P: Point, X: Point, n: int):
    """f_{n,P}(X) where div(f_{n,P}) = n(P) - n(O); X must avoid supports."""
    if P is None or X is None:
        raise _Degenerate
    f = C.field
    value = f.one
    Z = P
    for bit in bin(n)[3:]:
        num = _line_value(C, Z, Z, X)
        Z2 = C.add(Z, Z)
        den = _line_value(C, Z2, None, X) if Z2 is not None else f.one
        value = f.mul(f.mul(value, value), f.div(num, den))
        Z = Z2
        if bit == "1":
            num = _line_value(C, Z, P, X)
            ZP = C.add(Z, P)
            den = _line_value(C, ZP, None, X) if ZP is not None else f.one
            value = f.mul(value, f.div(num, den))
            Z = ZP
    if Z is not None:
        raise _Degenerate  # nP != O would leave a dangling point
    return value


def _root_of_unity_order(field, zeta) -> int:
    k, cur = 1, zeta
    while cur != field.one:
        cur = field.mul(cur, zeta)
        k += 1
        if k > field.card:
            raise AssertionError("not a root of unity")
    return k


def weil_pairing(C: FiniteCurve, P: Point, Q: Point, n: int, rng: random.Random | None = None):
    """e_n(P, Q): bilinear, alternating, Galois-equivariant pairing value.

    Evaluates f_P at (Q+S) - (S) and f_Q at (P-S) - (-S) for a random
    auxiliary S, retrying on degenerate intersections.
    """
    f = C.field
    if n < 1 or n % f.p == 0:
        raise PreconditionError("n must be positive and prime to the characteristic")
    if (f.card - 1) % n:
        raise PreconditionError("the field does not contain the n-th roots of unity")
    if C.smul(n, P) is not None or C.smul(n, Q) is not None:
        raise PreconditionError("both points must be n-torsion")
    if P is None or Q is None:
        return f.one
    if rng is None:
        seed = (f.card, f.index(P[0]), f.index(P[1]), f.index(Q[0]), f.index(Q[1]), n)
        rng = random.Random(hash(seed))
    for attempt in range(40):
        S = C.random_point(rng)
        try:
            qs = C.add(Q, S)
            ps = C.add(P, C.neg(S))
            if qs is None or ps is None:
                continue
            num = f.div(_miller(C, P, qs, n), _miller(C, P, S, n))
            den = f.div(_miller(C, Q, ps, n), _miller(C, Q, C.neg(S), n))
            zeta = f.div(num, den)
            assert f.power(zeta, n) == f.one
            return zeta
        except (_Degenerate, ZeroDivisionError):
            continue
    # too few points avoid the divisor supports (tiny curve): compute over a
    # quadratic extension; the value lies in mu_n, hence in the base field
    up = extension(f, 2)
    lift = up.embed
    Cu = FiniteCurve(up, lift(C.a), lift(C.b))
    zeta = weil_pairing(
        Cu, (lift(P[0]), lift(P[1])), (lift(Q[0]), lift(Q[1])), n, rng
    )
    assert all(c == f.zero for c in zeta[1:]), "pairing value escaped the base field"
    return zeta[0]


def frobenius_point(C: FiniteCurve, P: Point, power: int) -> Point:
    """Apply x -> x^power coordinatewise (power = size of the base field)."""
    if P is None:
        return None
    f = C.field
    return (f.power(P[0], power), f.power(P[1], power))
