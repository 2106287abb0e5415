"""Short Weierstrass models y^2 = x^3 + a x + b over F_q(T), p > 3.

Quadratic twists, the standard invariants and the two predicates that
drive everything else: isotriviality (constant j) and admissibility
(j neither constant nor a p-th power).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .funfield import FieldContext, RationalFunction, is_pth_power


@dataclass(frozen=True)
class CurveInvariants:
    c4: RationalFunction
    c6: RationalFunction
    delta: RationalFunction
    j: RationalFunction


class WeierstrassCurve:
    """y^2 = x^3 + a x + b with a, b in F_q(T) and nonzero discriminant."""

    __slots__ = ("ctx", "a", "b", "_inv")

    def __init__(self, ctx: FieldContext, a: RationalFunction, b: RationalFunction):
        delta = (a**3 * 4 + b**2 * 27) * (-16)
        if delta.is_zero():
            raise PreconditionError("singular model: -16(4a^3 + 27b^2) = 0")
        self.ctx = ctx
        self.a = a
        self.b = b
        self._inv = None

    def invariants(self) -> CurveInvariants:
        if self._inv is None:
            a, b = self.a, self.b
            c4 = a * (-48)
            c6 = b * (-864)
            delta = (a**3 * 4 + b**2 * 27) * (-16)
            j = c4**3 / delta
            self._inv = CurveInvariants(c4, c6, delta, j)
        return self._inv

    @property
    def delta(self) -> RationalFunction:
        return self.invariants().delta

    @property
    def j(self) -> RationalFunction:
        return self.invariants().j

    def quadratic_twist(self, d: RationalFunction) -> "WeierstrassCurve":
        """The twist y^2 = x^3 + a d^2 x + b d^3 (same j; delta scales by d^6)."""
        if d.is_zero():
            raise PreconditionError("twisting parameter must be nonzero")
        return WeierstrassCurve(self.ctx, self.a * d**2, self.b * d**3)

    def is_isotrivial(self) -> bool:
        """True iff j is a constant of F_q(T)."""
        return self.j.is_constant()

    def is_admissible(self) -> bool:
        """True iff j is nonconstant and not a p-th power in F_q(T)."""
        j = self.j
        return not j.is_constant() and not is_pth_power(j)

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassCurve)
            and other.ctx == self.ctx
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash((self.ctx, self.a, self.b))

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})x + ({self.b}) over {self.ctx}"

    def __repr__(self):
        return str(self)


def curve_from_j(ctx: FieldContext, j: RationalFunction) -> WeierstrassCurve:
    """Some curve with the requested j-invariant (j != 0, 1728)."""
    c1728 = ctx.constant(1728)
    if j.is_zero():
        return WeierstrassCurve(ctx, ctx.constant(0), ctx.constant(1))
    if j == c1728:
        return WeierstrassCurve(ctx, ctx.constant(1), ctx.constant(0))
    # with c4 = (j-1728)/j and c6 = c4^2 one gets 1728*c4^3/(c4^3-c6^2) = j
    c4 = (j - c1728) / j
    c6 = c4 * c4
    a = c4 / ctx.constant(-48)
    b = c6 / ctx.constant(-864)
    E = WeierstrassCurve(ctx, a, b)
    assert E.j == j
    return E
