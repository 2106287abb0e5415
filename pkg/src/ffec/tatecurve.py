"""Exact q-expansions of the Tate curve and their local consequences.

The model is y^2 + xy = x^3 + a4(q) x + a6(q) with

    a4(q) = -5 sum n^3 q^n/(1-q^n),
    a6(q) = -(1/12) sum (7n^5 + 5n^3) q^n/(1-q^n),

whose q-coefficients are exact integers: 7n^5 + 5n^3 is always divisible
by 12, so every series here is computed over Z first and only then
optionally reduced into a finite field.  The parametrizing series

    x(u,q) = u/(1-u)^2 + sum_m q^m sum_{k|m} k (u^k + u^-k - 2)
    y(u,q) = u^2/(1-u)^3 + sum_m q^m sum_{k|m} (C(k,2) u^k - C(k+1,2) u^-k + k)

come from expanding the double sums over the group generated by q.  On
top of the expansions the module recovers the period q from a
non-integral j by Newton iteration, decides the largest p-power index of
a Laurent unit within its declared precision, and reads off the
guaranteed unipotent depth v_ell(-v(j)) at a pole of j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import WeierstrassCurve
from .errors import PrecisionError, PreconditionError
from .ffield import is_prime
from .fpoly import factor
from .funfield import Place, valuation
from .series import Series

DEFAULT_PRECISION = 32


@dataclass(frozen=True)
class IntSeries:
    """q-expansion with exact integer coefficients for q^start, q^start+1, ..."""

    start: int
    coeffs: tuple[int, ...]

    @property
    def absprec(self) -> int:
        return self.start + len(self.coeffs)

    def coeff(self, m: int) -> int:
        if not self.start <= m < self.absprec:
            raise PrecisionError(f"coefficient of q^{m} not stored")
        return self.coeffs[m - self.start]

    def derivative(self) -> "IntSeries":
        out = [(self.start + i) * c for i, c in enumerate(self.coeffs)]
        return IntSeries(self.start - 1, tuple(out))


# -- integer list helpers (index i holds the coefficient of q^i) ------------


def _mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0 or i >= n:
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _pow_trunc(a: list[int], e: int, n: int) -> list[int]:
    result = [0] * n
    result[0] = 1
    base = a[:n] + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = _mul_trunc(result, base, n)
        e >>= 1
        if e:
            base = _mul_trunc(base, base, n)
    return result


def _inv_unit(u: list[int], n: int) -> list[int]:
    """Invert a unit power series with u[0] = 1, exactly over Z."""
    assert u[0] == 1
    b = [0] * n
    b[0] = 1
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(u) - 1) + 1):
            if u[i]:
                acc += u[i] * b[k - i]
        b[k] = -acc
    return b


# -- the four expansions -----------------------------------------------------


def a4_series(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    """a4(q) = -5 sum_{n>=1} n^3 q^n/(1-q^n), expanded geometrically."""
    if n_coeffs < 1:
        raise PreconditionError("need at least one coefficient")
    n = n_coeffs + 1
    acc = [0] * n
    for m in range(1, n):
        c = m * m * m
        for e in range(m, n, m):
            acc[e] += c
    return IntSeries(1, tuple(-5 * v for v in acc[1:]))


def a6_series(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    """a6(q) = -(1/12) sum (7n^5+5n^3) q^n/(1-q^n); each term is divisible by 12."""
    if n_coeffs < 1:
        raise PreconditionError("need at least one coefficient")
    n = n_coeffs + 1
    acc = [0] * n
    for m in range(1, n):
        w = 7 * m**5 + 5 * m**3
        assert w % 12 == 0
        c = w // 12
        for e in range(m, n, m):
            acc[e] += c
    return IntSeries(1, tuple(-v for v in acc[1:]))


def c4_series(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    a4 = a4_series(n_coeffs)
    out = [1] + [-48 * c for c in a4.coeffs[: n_coeffs - 1]]
    return IntSeries(0, tuple(out))


def c6_series(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    a4, a6 = a4_series(n_coeffs), a6_series(n_coeffs)
    out = [-1] + [
        72 * a4.coeffs[i] - 864 * a6.coeffs[i] for i in range(n_coeffs - 1)
    ]
    return IntSeries(0, tuple(out))


def delta_series(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    """Delta(q) = q prod_{n>=1} (1 - q^n)^24."""
    if n_coeffs < 1:
        raise PreconditionError("need at least one coefficient")
    n = n_coeffs
    euler = [0] * n
    euler[0] = 1
    for k in range(1, n):
        # multiply by (1 - q^k) in place
        for i in range(n - 1, k - 1, -1):
            euler[i] -= euler[i - k]
    prod = _pow_trunc(euler, 24, n)
    return IntSeries(1, tuple(prod))


def delta_from_invariants(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    """(c4^3 - c6^2)/1728, exact integer division coefficient by coefficient."""
    n = n_coeffs + 1
    c4 = list(c4_series(n + 1).coeffs)
    c6 = list(c6_series(n + 1).coeffs)
    num = _mul_trunc(_mul_trunc(c4, c4, n), c4, n)
    sq = _mul_trunc(c6, c6, n)
    out = []
    for i in range(1, n):
        d = num[i] - sq[i]
        assert d % 1728 == 0
        out.append(d // 1728)
    assert num[0] - sq[0] == 0
    return IntSeries(1, tuple(out))


def j_series(n_coeffs: int = DEFAULT_PRECISION) -> IntSeries:
    """j(q) = c4^3/Delta = q^-1 + 744 + 196884 q + ..., exact over Z."""
    n = n_coeffs
    c4 = list(c4_series(n + 1).coeffs)
    num = _mul_trunc(_mul_trunc(c4, c4, n), c4, n)
    unit = list(delta_series(n + 1).coeffs)  # Delta/q, a unit with constant 1
    inv = _inv_unit(unit, n)
    return IntSeries(-1, tuple(_mul_trunc(num, inv, n)))


# -- evaluation of integer expansions at a concrete series -------------------


def eval_int_series(s: IntSeries, q: Series) -> Series:
    """Substitute a Laurent series with positive valuation into s."""
    e = q.lower_bound()
    if e < 1:
        raise PreconditionError("substitution needs v(q) >= 1")
    ring = q.ring
    # tail beyond s.absprec contributes O(q^absprec) = O(t^(absprec*e))
    horizon = s.absprec * e
    out = Series.zero(ring, q.absprec + (s.absprec - 1) * e)
    top = s.absprec - 1
    acc = Series.constant(ring, ring.from_int(s.coeff(top)), out.absprec)
    for m in range(top - 1, max(s.start, 0) - 1, -1):
        acc = acc * q
        c = s.coeff(m)
        if c:
            acc = acc + Series.constant(ring, ring.from_int(c), acc.absprec)
    if s.start > 0:
        acc = acc * q**s.start
    out = acc
    if s.start < 0:
        qinv = q.inverse()
        power = qinv
        for m in range(-1, s.start - 1, -1):
            c = s.coeff(m)
            if c:
                out = out + power.scale(ring.from_int(c))
            if m > s.start:
                power = power * qinv
    return out.truncate(min(out.absprec, horizon))


# -- the uniformization ------------------------------------------------------


def x_u_coefficients(n_coeffs: int) -> list[dict[int, int]]:
    """For m = 1..n_coeffs-1 the Laurent polynomial in u at q^m of x(u,q)."""
    out = []
    for m in range(1, n_coeffs):
        row: dict[int, int] = {}
        for k in range(1, m + 1):
            if m % k == 0:
                row[k] = row.get(k, 0) + k
                row[-k] = row.get(-k, 0) + k
                row[0] = row.get(0, 0) - 2 * k
        out.append(row)
    return out


def y_u_coefficients(n_coeffs: int) -> list[dict[int, int]]:
    """For m = 1..n_coeffs-1 the Laurent polynomial in u at q^m of y(u,q)."""
    out = []
    for m in range(1, n_coeffs):
        row: dict[int, int] = {}
        for k in range(1, m + 1):
            if m % k == 0:
                row[k] = row.get(k, 0) + (k * (k - 1)) // 2
                row[-k] = row.get(-k, 0) - (k * (k + 1)) // 2
                row[0] = row.get(0, 0) + k
        out.append(row)
    return out


def sigma1_series(n_coeffs: int) -> IntSeries:
    """sum_{n>=1} n q^n/(1-q^n) = sum_m sigma_1(m) q^m."""
    n = n_coeffs + 1
    acc = [0] * n
    for m in range(1, n):
        for e in range(m, n, m):
            acc[e] += m
    return IntSeries(1, tuple(acc[1:]))


def uniformize(u: Series, q: Series, prec: int | None = None) -> tuple[Series, Series]:
    """The point (x(u,q), y(u,q)) for u outside the group generated by q.

    u and q are Laurent series over the same coefficient field and q has
    positive valuation.  Each summand q^n u is expanded geometrically on
    the side where it is small; the single class representative with
    valuation 0 (if the valuation of u is a multiple of that of q)
    contributes its closed form.  If that representative is 1 to working
    precision, u lies in the period group and maps to the identity point,
    which has no affine coordinates: rejected.
    """
    if u.ring is not q.ring and u.ring != q.ring:
        raise PreconditionError("u and q must share a coefficient ring")
    ring = u.ring
    e = q.valuation
    if e is None or e < 1:
        raise PreconditionError("the period q must have positive valuation")
    if u.valuation is None:
        raise PreconditionError("u must be nonzero")
    w = u.valuation
    if prec is None:
        prec = q.absprec - e + min(0, w) + 1
    horizon = prec
    x = Series.zero(ring, horizon + abs(w) + e)
    y = Series.zero(ring, x.absprec)

    if w % e == 0:
        n0 = -(w // e)
        z = u * q**n0 if n0 else u
        one = Series.constant(ring, ring.one, z.absprec)
        if (z - one).is_zero_to_precision():
            raise PreconditionError("u lies in <q> (to precision): the identity point")
        g = (one - z).inverse()
        x = x + z * g * g
        y = y + z * z * g * g * g

    u_inv = u.inverse()
    n_span = (horizon + abs(w)) // e + 2
    for n in range(-n_span, n_span + 1):
        wn = n * e + w
        if wn == 0 or abs(wn) >= horizon:
            continue
        if wn > 0:
            base = (q**n if n else None)
            base = base * u if base is not None else u
            sign = 1
        else:
            base = q ** (-n) * u_inv
            sign = -1
        power = base
        k = 1
        while k * abs(wn) < horizon and power.lower_bound() < horizon:
            x = x + power.scale(ring.from_int(k))
            if sign > 0:
                cy = (k * (k - 1)) // 2
            else:
                cy = -((k * (k + 1)) // 2)
            if cy:
                y = y + power.scale(ring.from_int(cy))
            k += 1
            power = power * base

    s1 = eval_int_series(sigma1_series(max(1, -(-horizon // e))), q)
    x = x + s1.scale(ring.from_int(-2))
    y = y + s1
    return x.truncate(min(x.absprec, horizon)), y.truncate(min(y.absprec, horizon))


def weierstrass_residual(x: Series, y: Series, q: Series) -> Series:
    """y^2 + xy - x^3 - a4(q) x - a6(q); zero to precision on the curve."""
    n = max(2, -(-min(x.absprec, y.absprec) // max(1, q.lower_bound())) + 1)
    a4 = eval_int_series(a4_series(n), q)
    a6 = eval_int_series(a6_series(n), q)
    return y * y + x * y - x * x * x - a4 * x - a6


# -- period recovery ---------------------------------------------------------


def period_from_j(j0: Series, n_coeffs: int | None = None) -> Series:
    """The unique q with positive valuation and j(q) = j0, for v(j0) < 0.

    Newton iteration on j(q) - j0; the derivative has an invertible
    leading term -q^-2, so the iteration is regular in any characteristic
    different from the residue one.
    """
    v = j0.valuation
    if v is None or v >= 0:
        raise PreconditionError("a Tate period needs v(j0) < 0")
    e = -v
    ring = j0.ring
    target = j0.absprec + 2 * e  # dq ~ q^2 dj
    if n_coeffs is None:
        n_coeffs = max(4, -(-(target + 2 * e) // e) + 2)
    jint = j_series(n_coeffs)
    jder = jint.derivative()
    q = j0.inverse()
    for _ in range(64):
        jq = eval_int_series(jint, q)
        diff = jq - j0.truncate(jq.absprec)
        if diff.is_zero_to_precision():
            break
        corr = diff * eval_int_series(jder, q).inverse()
        q = (q - corr).truncate(target)
    else:
        raise AssertionError("Newton iteration failed to stabilize")
    assert q.valuation == e
    return q.truncate(target)


# -- p-power index and unipotent depth ---------------------------------------


def p_power_index(q: Series) -> int:
    """Smallest k with q outside the p^k-th powers of the Laurent field.

    q = t^e u is a p^m-th power iff p^m | e and every nonzero coefficient
    index of the unit u is divisible by p^m (coefficients themselves are
    automatically p-th powers in a finite field).  The decision uses the
    coefficients the series actually carries, so a minimum precision of
    p^2 v(q) unit coefficients is demanded up front.
    """
    p = getattr(q.ring, "p", 0)
    if not p:
        raise PreconditionError("p-power index needs finite-field coefficients")
    v = q.valuation
    if v is None or v <= 0:
        raise PreconditionError("need v(q) > 0")
    unit = q.shift(-v)
    if unit.absprec < p * p * v:
        raise PrecisionError(
            f"insufficient precision: {unit.absprec} unit coefficients known, "
            f"need at least p^2 v(q) = {p * p * v}"
        )
    indices = sorted(unit.coeffs)
    m = 1
    while True:
        pm = p**m
        if v % pm != 0:
            return m
        if any(i % pm for i in indices):
            return m
        m += 1


def multiplicative_places(E: WeierstrassCurve) -> list[Place]:
    """Places where j has a pole, in canonical order (may be empty)."""
    j = E.j
    out = []
    if j.den.degree > 0:
        out.extend(Place(g) for g, _ in factor(j.den))
    if j.num.degree > j.den.degree:
        out.append(Place.infinity())
    return sorted(out, key=Place.sort_key)


def unipotent_depth(E: WeierstrassCurve, ell: int) -> int:
    """v_ell(e) with e = -v(j) at the designated pole of j.

    This is the guaranteed depth of the unipotent subgroup
    (1, ell^depth Z_ell; 0, 1) in the local image at that place; depth 0
    means the full unipotent line is present.
    """
    p = E.ctx.p
    if ell == p:
        raise PreconditionError("ell must differ from the characteristic")
    if not is_prime(ell):
        raise PreconditionError(f"{ell} is not prime")
    places = multiplicative_places(E)
    if not places:
        raise PreconditionError(
            "no place with v(j) < 0: Tate theory does not apply (isotrivial or integral j)"
        )
    e = -valuation(E.j, places[0])
    depth = 0
    while e % ell == 0:
        e //= ell
        depth += 1
    return depth
