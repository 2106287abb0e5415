"""Truncated Laurent series over an exact coefficient field.

A Series knows its coefficients for all exponents below ``absprec`` and
nothing beyond; every operation propagates that bound pessimistically, so
a result is only ever as precise as its inputs warrant.  Coefficients
live in an exact field given by a small ring object: either QQ below
(Fraction arithmetic) or any finite field from ffield, which already
speaks the same protocol (zero/one/add/sub/mul/neg/inv/from_int and a
characteristic attribute p).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecisionError, PreconditionError


class RationalCoefficients:
    """The rationals as a coefficient ring (characteristic 0)."""

    p = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    def __repr__(self):
        return "QQ"


QQ = RationalCoefficients()


class Series:
    """Laurent series known below ``absprec`` in the uniformizer t."""

    __slots__ = ("ring", "coeffs", "absprec")

    def __init__(self, ring, coeffs: dict, absprec: int):
        self.ring = ring
        self.coeffs = {
            e: c for e, c in coeffs.items() if e < absprec and c != ring.zero
        }
        self.absprec = absprec

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring, absprec: int) -> "Series":
        return cls(ring, {}, absprec)

    @classmethod
    def constant(cls, ring, c, absprec: int) -> "Series":
        return cls(ring, {0: c}, absprec)

    @classmethod
    def monomial(cls, ring, exp: int, absprec: int, coeff=None) -> "Series":
        return cls(ring, {exp: ring.one if coeff is None else coeff}, absprec)

    @classmethod
    def from_list(cls, ring, start: int, values, absprec: int | None = None) -> "Series":
        values = list(values)
        if absprec is None:
            absprec = start + len(values)
        return cls(ring, {start + i: v for i, v in enumerate(values)}, absprec)

    # -- structure ---------------------------------------------------------

    @property
    def valuation(self) -> int | None:
        """The least known exponent, or None if zero to precision."""
        return min(self.coeffs) if self.coeffs else None

    def lower_bound(self) -> int:
        """A lower bound for the true valuation."""
        v = self.valuation
        return self.absprec if v is None else v

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int):
        if e >= self.absprec:
            raise PrecisionError(f"coefficient of t^{e} beyond precision {self.absprec}")
        return self.coeffs.get(e, self.ring.zero)

    def known_coeffs(self) -> list[tuple[int, object]]:
        return sorted(self.coeffs.items())

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Series"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise PreconditionError("coefficient rings differ")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        absprec = min(self.absprec, other.absprec)
        out = dict(self.coeffs)
        ring = self.ring
        for e, c in other.coeffs.items():
            out[e] = ring.add(out.get(e, ring.zero), c)
        return Series(ring, out, absprec)

    def __sub__(self, other: "Series") -> "Series":
        self._check(other)
        absprec = min(self.absprec, other.absprec)
        out = dict(self.coeffs)
        ring = self.ring
        for e, c in other.coeffs.items():
            out[e] = ring.sub(out.get(e, ring.zero), c)
        return Series(ring, out, absprec)

    def __neg__(self) -> "Series":
        ring = self.ring
        return Series(ring, {e: ring.neg(c) for e, c in self.coeffs.items()}, self.absprec)

    def __mul__(self, other: "Series") -> "Series":
        self._check(other)
        absprec = min(
            self.absprec + other.lower_bound(), other.absprec + self.lower_bound()
        )
        ring = self.ring
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= absprec:
                    continue
                prod = ring.mul(c1, c2)
                out[e] = ring.add(out.get(e, ring.zero), prod) if e in out else prod
        return Series(ring, out, absprec)

    def scale(self, c) -> "Series":
        ring = self.ring
        return Series(ring, {e: ring.mul(c, v) for e, v in self.coeffs.items()}, self.absprec)

    def shift(self, k: int) -> "Series":
        return Series(self.ring, {e + k: c for e, c in self.coeffs.items()}, self.absprec + k)

    def truncate(self, absprec: int) -> "Series":
        if absprec >= self.absprec:
            return self
        return Series(self.ring, self.coeffs, absprec)

    def inverse(self) -> "Series":
        v = self.valuation
        if v is None:
            raise ZeroDivisionError("inverse of a series that is zero to precision")
        n = self.absprec - v  # relative precision, preserved by inversion
        ring = self.ring
        u = [self.coeffs.get(v + i, ring.zero) for i in range(n)]
        b0 = ring.inv(u[0])
        b = [b0]
        for k in range(1, n):
            acc = ring.zero
            for i in range(1, k + 1):
                if u[i] != ring.zero and b[k - i] != ring.zero:
                    acc = ring.add(acc, ring.mul(u[i], b[k - i]))
            b.append(ring.neg(ring.mul(b0, acc)))
        return Series.from_list(ring, -v, b)

    def __truediv__(self, other: "Series") -> "Series":
        return self * other.inverse()

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return Series.constant(self.ring, self.ring.one, self.absprec - self.lower_bound())
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def eq_to_precision(self, other: "Series", through: int | None = None) -> bool:
        """Equal on all exponents below min(absprec) (or below ``through``)."""
        diff = self - other
        if through is not None:
            if diff.absprec < through:
                raise PrecisionError(
                    f"cannot compare through t^{through}: precision {diff.absprec}"
                )
            diff = diff.truncate(through)
        return diff.is_zero_to_precision()

    def __repr__(self):
        if not self.coeffs:
            return f"O(t^{self.absprec})"
        parts = [f"{c}*t^{e}" for e, c in self.known_coeffs()]
        return " + ".join(parts) + f" + O(t^{self.absprec})"
