"""Weierstrass models, invariants, twists and curve predicates."""

import random

import pytest

from ffec.curve import WeierstrassCurve, curve_from_j
from ffec.errors import PreconditionError
from ffec.funfield import FieldContext, RationalFunction

CTX = FieldContext(5)
T = CTX.T


def random_curve(rng, ctx=CTX, max_deg=3) -> WeierstrassCurve:
    while True:
        a = ctx.poly([rng.randrange(ctx.q) for _ in range(rng.randrange(1, max_deg + 2))])
        b = ctx.poly([rng.randrange(ctx.q) for _ in range(rng.randrange(1, max_deg + 2))])
        try:
            return WeierstrassCurve(ctx, RationalFunction(a), RationalFunction(b))
        except PreconditionError:
            continue


def test_singular_rejected():
    with pytest.raises(PreconditionError):
        WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(0))


def test_invariants_j_zero():
    E = WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1))
    assert E.j == CTX.constant(0)


def test_invariants_j_1728():
    E = WeierstrassCurve(CTX, CTX.constant(1), CTX.constant(0))
    inv = E.invariants()
    assert inv.delta == CTX.constant(-64)
    assert inv.j == CTX.constant(1728)


def test_invariants_worked_curve():
    E = WeierstrassCurve(CTX, CTX.constant(1), T)
    inv = E.invariants()
    assert inv.delta == CTX.parse("3T^2+1")
    assert inv.j == CTX.parse("1/(T^2+2)")


def test_invariant_identity_random():
    rng = random.Random(99)
    c1728 = CTX.constant(1728)
    for _ in range(1000):
        inv = random_curve(rng).invariants()
        assert c1728 * inv.delta == inv.c4**3 - inv.c6**2
        assert inv.j == inv.c4**3 / inv.delta


def test_twist_identity_element():
    E = WeierstrassCurve(CTX, CTX.constant(1), T)
    Ed = E.quadratic_twist(CTX.constant(1))
    assert (Ed.a, Ed.b) == (E.a, E.b)


def test_twist_of_1728_curve_by_T():
    # direct expansion: (a d^2, b d^3) with b = 0 keeps b = 0
    E = WeierstrassCurve(CTX, CTX.constant(1), CTX.constant(0))
    Ed = E.quadratic_twist(T)
    assert (Ed.a, Ed.b) == (T**2, CTX.constant(0))
    assert Ed.delta == CTX.constant(-64) * T**6


def test_twist_preserves_j_and_scales_delta():
    rng = random.Random(21)
    for _ in range(100):
        E = random_curve(rng)
        d = CTX.poly([rng.randrange(5) for _ in range(rng.randrange(1, 4))])
        d = RationalFunction(d)
        if d.is_zero():
            continue
        Ed = E.quadratic_twist(d)
        assert Ed.j == E.j
        assert Ed.delta == E.delta * d**6


def test_twist_square_compatibility():
    rng = random.Random(8)
    E = random_curve(rng)
    d, e = T + CTX.constant(1), T**2 + CTX.constant(2)
    direct = E.quadratic_twist(d * e**2)
    assert direct.j == E.quadratic_twist(d).j
    assert direct.delta == E.quadratic_twist(d).delta * e**12


def test_twist_zero_rejected():
    E = WeierstrassCurve(CTX, CTX.constant(1), T)
    with pytest.raises(PreconditionError):
        E.quadratic_twist(CTX.constant(0))


def test_isotriviality():
    assert WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1)).is_isotrivial()
    assert not WeierstrassCurve(CTX, CTX.constant(1), T).is_isotrivial()
    assert not WeierstrassCurve(CTX, T**4, T**5).is_isotrivial()


def test_admissibility():
    E = WeierstrassCurve(CTX, CTX.constant(1), T)
    assert E.is_admissible()
    assert not WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1)).is_admissible()


def test_pth_power_j_not_admissible():
    # a curve whose j is a nonconstant function of T^5
    j = T**5 / (T**5 + CTX.constant(1))
    E = curve_from_j(CTX, j)
    assert E.j == j
    assert not E.is_isotrivial()
    assert not E.is_admissible()


def test_admissible_implies_nonisotrivial():
    rng = random.Random(77)
    for _ in range(200):
        E = random_curve(rng)
        if E.is_admissible():
            assert not E.is_isotrivial()


def test_curve_from_j_round_trip():
    rng = random.Random(4)
    for _ in range(30):
        num = CTX.poly([rng.randrange(5) for _ in range(rng.randrange(1, 4))])
        den = CTX.poly([rng.randrange(5) for _ in range(rng.randrange(1, 4))])
        if num.is_zero() or den.is_zero():
            continue
        j = RationalFunction(num, den)
        if j == CTX.constant(1728) or j.is_zero():
            continue
        assert curve_from_j(CTX, j).j == j
