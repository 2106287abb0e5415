"""Local reduction data, conductors, Faltings heights and the height bound.

Everything is valuation-based.  At a place with uniformizer pi the model
(a, b) is minimal after the rescaling (a, b) -> (pi^-4k a, pi^-6k b) with
k = min(floor(v(a)/4), floor(v(b)/6)); the Kodaira type then follows from
(v(c4), v(Delta)) by the residue-characteristic >= 5 lookup table, and the
conductor exponent is 0 / 1 / 2 for good / multiplicative / additive
fibers (no wild part since p > 3).  The place at infinity needs no
special coordinates: its valuation is deg(den) - deg(num), which is
exactly what the S = 1/T substitution computes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .curve import WeierstrassCurve
from .errors import PreconditionError
from .fpoly import Poly, factor
from .funfield import (
    Divisor,
    FieldContext,
    Place,
    RationalFunction,
    height,
    valuation,
)


@dataclass(frozen=True)
class LocalReductionData:
    place: Place
    kodaira: str
    v_delta_min: int
    v_c4_min: int | None  # None encodes +infinity (c4 = 0, i.e. a = 0)
    conductor_exp: int
    scale: int  # the k used in the minimalizing rescaling


@dataclass(frozen=True)
class GlobalCurveData:
    disc_divisor: Divisor  # sum of v(Delta_min) over bad places
    conductor: Divisor
    h_faltings: Fraction  # deg(disc divisor) / 12
    h_geometric: Fraction  # height of j / 12
    local_data: tuple[LocalReductionData, ...]  # the bad places


@dataclass(frozen=True)
class HeightConjectureReport:
    lhs: Fraction  # Faltings height
    rhs: Fraction  # deg(conductor)/2 - 1   (genus 0)
    holds: bool


@dataclass(frozen=True)
class CasePlaceReport:
    place: Place
    case: str  # "j=0", "j=1728", "j=inf" or "other"
    v_delta: int
    ram_index: int | None  # None when only the bound e >= 1 is available
    coefficient: Fraction  # 1/6 v(Delta) - c*e + 1, an upper bound if "other"
    conductor_exp: int
    ok: bool
    bounded_only: bool


def _classify_kodaira(v_c4: int | None, v_delta: int) -> tuple[str, int]:
    """(Kodaira symbol, conductor exponent) from minimal valuations, p >= 5."""
    if v_delta == 0:
        return "I0", 0
    if v_c4 == 0:
        return f"I{v_delta}", 1
    if v_delta == 2:
        return "II", 2
    if v_delta == 3:
        return "III", 2
    if v_delta == 4:
        return "IV", 2
    if v_delta == 6 and (v_c4 is None or v_c4 >= 2):
        return "I0*", 2
    if v_c4 == 2 and v_delta >= 7:
        return f"I{v_delta - 6}*", 2
    if v_delta == 8:
        return "IV*", 2
    if v_delta == 9:
        return "III*", 2
    if v_delta == 10:
        return "II*", 2
    raise AssertionError(
        f"impossible minimal valuation pair (v_c4={v_c4}, v_delta={v_delta})"
    )


def local_reduction(E: WeierstrassCurve, place: Place) -> LocalReductionData:
    """Minimal model valuations and fiber type of E at one place."""
    va = None if E.a.is_zero() else valuation(E.a, place)
    vb = None if E.b.is_zero() else valuation(E.b, place)
    ks = []
    if va is not None:
        ks.append(va // 4)  # Python // floors, also for negatives
    if vb is not None:
        ks.append(vb // 6)
    k = min(ks)
    v_delta = valuation(E.delta, place) - 12 * k
    v_c4 = None if va is None else va - 4 * k
    assert v_delta >= 0 and (v_c4 is None or v_c4 >= 0)
    kodaira, f_exp = _classify_kodaira(v_c4, v_delta)
    return LocalReductionData(place, kodaira, v_delta, v_c4, f_exp, k)


def _candidate_bad_places(E: WeierstrassCurve) -> list[Place]:
    seen: dict[Place, None] = {Place.infinity(): None}

    def add_support(f: Poly):
        if f.degree > 0:
            for g, _ in factor(f):
                seen.setdefault(Place(g), None)

    add_support(E.delta.num)
    add_support(E.a.den)
    add_support(E.b.den)
    return sorted(seen, key=Place.sort_key)


def global_data(E: WeierstrassCurve) -> GlobalCurveData:
    """Minimal discriminant divisor, conductor and both Faltings heights."""
    disc: dict[Place, int] = {}
    cond: dict[Place, int] = {}
    bad = []
    for place in _candidate_bad_places(E):
        data = local_reduction(E, place)
        if data.v_delta_min > 0:
            disc[place] = data.v_delta_min
            cond[place] = data.conductor_exp
            bad.append(data)
    disc_div = Divisor(disc)
    return GlobalCurveData(
        disc_divisor=disc_div,
        conductor=Divisor(cond),
        h_faltings=Fraction(disc_div.degree(), 12),
        h_geometric=Fraction(height(E.j) if not E.j.is_zero() else 0, 12),
        local_data=tuple(bad),
    )


def check_height_conjecture(
    E: WeierstrassCurve, data: GlobalCurveData | None = None
) -> HeightConjectureReport:
    """h(E) <= deg(conductor)/2 - 1 for admissible E (genus 0 base)."""
    if not E.is_admissible():
        raise PreconditionError("height bound requires an admissible curve")
    if data is None:
        data = global_data(E)
    lhs = data.h_faltings
    rhs = Fraction(data.conductor.degree(), 2) - 1
    return HeightConjectureReport(lhs, rhs, lhs <= rhs)


def verify_case_table(
    E: WeierstrassCurve, data: GlobalCurveData | None = None
) -> list[CasePlaceReport]:
    """Per bad place: the ramification-index coefficient against f.

    With e the ramification index over the j-line, the coefficient
    1/6 v(Delta) - c e + 1 must not exceed the conductor exponent, where
    c = 1/6 when j reduces to infinity, 1/3 at j = 0, 1/2 at j = 1728.
    Places whose j-value avoids {0, 1728, inf} only admit the bound
    e >= 1 and are reported as bounded-only checks.
    """
    if not E.is_admissible():
        raise PreconditionError("case table requires an admissible curve")
    if data is None:
        data = global_data(E)
    j = E.j
    j_minus_1728 = j - E.ctx.constant(1728)
    reports = []
    for local in data.local_data:
        place = local.place
        vj = valuation(j, place)
        if vj < 0:
            case, e, c = "j=inf", -vj, Fraction(1, 6)
        elif vj > 0:
            case, e, c = "j=0", vj, Fraction(1, 3)
        else:
            v1728 = valuation(j_minus_1728, place)
            if v1728 > 0:
                case, e, c = "j=1728", v1728, Fraction(1, 2)
            else:
                case, e, c = "other", None, Fraction(1, 1)
        coeff = Fraction(local.v_delta_min, 6) - c * (e if e is not None else 1) + 1
        reports.append(
            CasePlaceReport(
                place=place,
                case=case,
                v_delta=local.v_delta_min,
                ram_index=e,
                coefficient=coeff,
                conductor_exp=local.conductor_exp,
                ok=coeff <= local.conductor_exp,
                bounded_only=case == "other",
            )
        )
    return reports


def enumerate_good_twists(
    E: WeierstrassCurve, S: set[Place] | list[Place]
) -> list[RationalFunction]:
    """Representatives d (mod squares) with E_d of good reduction outside S.

    Candidates are squarefree products of the finite-place polynomials of
    S times a constant class representative (1 or the smallest
    non-square); each candidate is kept only if every place outside S
    stays good, checked through local_reduction.
    """
    S = set(S)
    data = global_data(E)
    bad = {local.place for local in data.local_data}
    missing = bad - S
    if missing:
        raise PreconditionError(
            f"S must contain all bad places; missing {sorted(map(str, missing))}"
        )
    ctx = E.ctx
    finite_polys = sorted(
        (pl.poly for pl in S if not pl.is_infinite), key=Poly.index
    )
    constants = [ctx.constant(1), RationalFunction(Poly.constant(ctx.field, ctx.nonsquare()))]
    out = []
    for picks in product((0, 1), repeat=len(finite_polys)):
        d_poly = ctx.constant(1)
        for take, g in zip(picks, finite_polys):
            if take:
                d_poly = d_poly * RationalFunction(g)
        for const in constants:
            d = const * d_poly
            twisted = E.quadratic_twist(d)
            bad_twist = {local.place for local in global_data(twisted).local_data}
            if bad_twist <= S:
                out.append(d)
    return out


@dataclass
class SweepReport:
    total_pairs: int
    curves: int
    admissible: int
    geometric_violations: int  # h_geometric > h_faltings
    conjecture_violations: int  # admissible curve violating the bound
    case_table_violations: int
    structural_violations: int  # effectivity / support / exponent failures


def sweep(ctx: FieldContext, deg_bound: int, cap: int = 10**6) -> SweepReport:
    """Exhaustive verification over all models with polynomial a, b of
    degree <= deg_bound: both height inequalities, the case table and the
    structural divisor facts."""
    from .errors import ResourceCapError

    n_coeff = deg_bound + 1
    total = (ctx.q**n_coeff) ** 2
    if total > cap:
        raise ResourceCapError(f"{total} coefficient pairs exceed the cap {cap}")
    field = ctx.field
    report = SweepReport(total, 0, 0, 0, 0, 0, 0)
    all_polys = []
    for m in range(ctx.q**n_coeff):
        digits = []
        i = m
        for _ in range(n_coeff):
            i, r = divmod(i, ctx.q)
            digits.append(field.from_index(r))
        all_polys.append(RationalFunction(Poly(field, digits)))
    for a in all_polys:
        for b in all_polys:
            try:
                E = WeierstrassCurve(ctx, a, b)
            except PreconditionError:
                continue
            report.curves += 1
            data = global_data(E)
            if not (
                data.disc_divisor.is_effective()
                and data.conductor.is_effective()
                and set(data.conductor.support) == set(data.disc_divisor.support)
                and all(local.conductor_exp in (1, 2) for local in data.local_data)
            ):
                report.structural_violations += 1
            if data.h_geometric > data.h_faltings:
                report.geometric_violations += 1
            if E.is_admissible():
                report.admissible += 1
                if not check_height_conjecture(E, data).holds:
                    report.conjecture_violations += 1
                if not all(r.ok for r in verify_case_table(E, data)):
                    report.case_table_violations += 1
    return report
