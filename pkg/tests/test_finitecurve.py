"""Point counting, torsion, division polynomials and the Weil pairing."""

import random

import pytest

from ffec.curve import WeierstrassCurve
from ffec.errors import PreconditionError
from ffec.finitecurve import (
    FiniteCurve,
    division_polynomial,
    field_sqrt,
    frobenius_data,
    frobenius_point,
    reduce_curve,
    torsion_basis,
    torsion_field,
    torsion_points,
    torsion_reducible,
    two_division_galois,
    weil_pairing,
)
from ffec.fpoly import GF, extension, roots
from ffec.funfield import FieldContext, Place

CTX = FieldContext(5)
T = CTX.T
WORKED = WeierstrassCurve(CTX, CTX.constant(1), T)
P_T = Place(CTX.poly([0, 1]))


def test_point_count_examples():
    assert FiniteCurve(GF(7), 1, 0).point_count() == 8  # trace 0, supersingular
    assert FiniteCurve(GF(5), 0, 1).point_count() == 6


def test_hasse_bound_random():
    rng = random.Random(42)
    for _ in range(40):
        p = rng.choice([5, 7, 11, 13])
        F = GF(p)
        try:
            C = FiniteCurve(F, rng.randrange(p), rng.randrange(p))
        except PreconditionError:
            continue
        a = p + 1 - C.point_count()
        assert a * a <= 4 * p


def test_group_law_axioms():
    C = FiniteCurve(GF(7), 2, 3)
    pts = C.points()
    rng = random.Random(1)
    for _ in range(200):
        P, Q, R = (pts[rng.randrange(len(pts))] for _ in range(3))
        assert C.add(C.add(P, Q), R) == C.add(P, C.add(Q, R))
        assert C.add(P, C.neg(P)) is None
        assert C.add(P, None) == P
        assert C.on_curve(C.add(P, Q))


def test_norm_compatibility_degree_two():
    C = reduce_curve(WORKED, P_T)
    a = C.field.card + 1 - C.point_count()
    k2 = extension(C.field, 2)
    C2 = FiniteCurve(k2, k2.embed(C.a), k2.embed(C.b))
    q = C.field.card
    assert C2.point_count() == q * q + 1 - (a * a - 2 * q)


def test_field_sqrt():
    for field in (GF(5), GF(7), extension(GF(5), 2), GF(13)):
        squares = {field.mul(x, x) for x in field.elements()}
        for x in field.elements():
            y = field_sqrt(field, x)
            if x in squares:
                assert y is not None and field.mul(y, y) == x
            else:
                assert y is None


def test_frobenius_data_good_places():
    fd = frobenius_data(WORKED, P_T)
    assert (fd.norm, fd.trace) == (5, 2)
    fd2 = frobenius_data(WORKED, Place(CTX.poly([3, 0, 1])))
    assert fd2.norm == 25
    assert fd2.trace * fd2.trace <= 4 * 25


def test_frobenius_data_rejects_bad_place():
    with pytest.raises(PreconditionError):
        frobenius_data(WORKED, Place(CTX.poly([2, 0, 1])))


def test_reduce_curve_at_infinity():
    # (T^-4, T^-6) is good at infinity after rescaling
    E = WeierstrassCurve(CTX, T**-4, T**-6)
    C = reduce_curve(E, Place.infinity())
    assert (C.a, C.b) == (1, 1)


def test_division_polynomial_shapes():
    E = WeierstrassCurve(CTX, CTX.constant(1), CTX.constant(0))
    psi2 = division_polynomial(E, 2)
    assert [str(c) for c in psi2] == ["0", "1", "0", "1"]  # x^3 + x
    E01 = WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1))
    psi3 = division_polynomial(E01, 3)
    # 3x^4 + 12x with coefficients reduced mod 5
    assert [str(c) for c in psi3] == ["0", "2", "0", "0", "3"]
    with pytest.raises(PreconditionError):
        division_polynomial(E, 5)


def test_division_polynomial_roots_are_two_torsion():
    C = FiniteCurve(GF(5), 1, 0)
    xs = sorted(roots(division_polynomial(C, 2)))
    brute = sorted({P[0] for P in C.points() if P and C.smul(2, P) is None})
    assert xs == brute


def test_torsion_reducible():
    E01 = WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1))
    assert torsion_reducible(E01, 2)  # x^3 + 1 has the root -1
    assert not torsion_reducible(WORKED, 2)
    E0T = WeierstrassCurve(CTX, CTX.constant(0), T)
    assert torsion_reducible(E0T, 3)  # x = 0


def test_two_division_galois_tags():
    assert two_division_galois(WORKED) == "S3"
    assert two_division_galois(WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1))) == "C2"
    ctx7 = FieldContext(7)
    assert two_division_galois(
        WeierstrassCurve(ctx7, ctx7.constant(0), ctx7.constant(1))
    ) == "trivial"
    # tags are always subgroups of S3
    rng = random.Random(23)
    for _ in range(30):
        a = CTX.poly([rng.randrange(5) for _ in range(2)])
        b = CTX.poly([rng.randrange(5) for _ in range(2)])
        try:
            E = WeierstrassCurve(CTX, CTX.rational(a), CTX.rational(b))
        except PreconditionError:
            continue
        assert two_division_galois(E) in ("trivial", "C2", "C3", "S3")


def test_reducibility_matches_galois_tag():
    rng = random.Random(31)
    for _ in range(40):
        a = CTX.poly([rng.randrange(5) for _ in range(3)])
        b = CTX.poly([rng.randrange(5) for _ in range(3)])
        try:
            E = WeierstrassCurve(CTX, CTX.rational(a), CTX.rational(b))
        except PreconditionError:
            continue
        tag = two_division_galois(E)
        assert torsion_reducible(E, 2) == (tag in ("trivial", "C2"))


def test_torsion_basis_trivial():
    C = reduce_curve(WORKED, P_T)
    assert torsion_basis(C, 1) == (None, None)


def test_torsion_basis_two():
    C = torsion_field(WORKED, P_T, 2)
    P, Q = torsion_basis(C, 2)
    assert C.order_of(P) == C.order_of(Q) == 2
    assert weil_pairing(C, P, Q, 2) == C.field.from_int(-1)


def test_torsion_basis_three():
    C = torsion_field(WORKED, P_T, 3)
    tors = torsion_points(C, 3)
    assert len(tors) == 9
    P, Q = torsion_basis(C, 3)
    zeta = weil_pairing(C, P, Q, 3)
    f = C.field
    assert zeta != f.one and f.power(zeta, 3) == f.one


def test_torsion_basis_requires_full_torsion():
    C = reduce_curve(WORKED, P_T)  # only the trivial 3-torsion over F_5
    with pytest.raises(PreconditionError):
        torsion_basis(C, 3)


def test_weil_pairing_properties():
    for n, placepoly in ((2, [0, 1]), (3, [0, 1]), (3, [1, 1])):
        C = torsion_field(WORKED, Place(CTX.poly(placepoly)), n)
        f = C.field
        tors = torsion_points(C, n)
        P, Q = torsion_basis(C, n)
        for A in tors:
            assert weil_pairing(C, A, A, n) == f.one
            for B in tors:
                ab = weil_pairing(C, A, B, n)
                ba = weil_pairing(C, B, A, n)
                assert f.mul(ab, ba) == f.one
        # bilinearity on the basis span
        for A in (P, Q, C.add(P, Q)):
            for B in (P, Q):
                lhs = weil_pairing(C, C.add(A, B), Q, n)
                rhs = f.mul(weil_pairing(C, A, Q, n), weil_pairing(C, B, Q, n))
                assert lhs == rhs


def test_weil_pairing_galois_equivariance():
    C = torsion_field(WORKED, P_T, 3)
    k0_card = 5  # the reduced curve is defined over the residue field F_5
    P, Q = torsion_basis(C, 3)
    zeta = weil_pairing(C, P, Q, 3)
    phiP, phiQ = frobenius_point(C, P, k0_card), frobenius_point(C, Q, k0_card)
    assert weil_pairing(C, phiP, phiQ, 3) == C.field.power(zeta, k0_card)


def test_weil_pairing_rejects_non_torsion():
    C = FiniteCurve(GF(5), 0, 1)  # 6 points, so there is a point of order 6
    P = next(Q for Q in C.points() if Q is not None and C.order_of(P=Q) == 6)
    with pytest.raises(PreconditionError):
        weil_pairing(C, P, P, 2)
