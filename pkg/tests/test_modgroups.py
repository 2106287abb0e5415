"""Matrix group orders, class distributions, BFS lemmas and surveys."""

import math
from fractions import Fraction

import pytest

from ffec.curve import WeierstrassCurve
from ffec.errors import PreconditionError, ResourceCapError
from ffec.funfield import FieldContext
from ffec.modgroups import (
    IDENTITY,
    bfs_subgroup,
    check_commutator_lemma,
    check_unipotent_lemma,
    count_det_in_subgroup,
    frobenius_survey,
    gamma_charpoly_distribution,
    gamma_spec,
    generating_set,
    h_subgroup,
    isotriviality_contrast,
    mat_inv,
    mat_mul,
    psl2_simplicity,
    sl2_kernel_elements,
    sl2_order,
)


def test_gamma_spec_examples():
    assert gamma_spec(3, 2).gamma_order == 6  # H trivial, |SL2(Z/2)| = 6
    spec = gamma_spec(5, 3)
    assert (spec.h_order, spec.gamma_order) == (2, 48)  # full GL2(F_3)
    assert gamma_spec(7, 3).gamma_order == 24


def test_gamma_spec_rejects_non_units():
    with pytest.raises(PreconditionError):
        gamma_spec(5, 10)


def test_gamma_order_brute_force_cross_check():
    for n in range(2, 9):
        for r in (5, 7, 11, 13):
            if math.gcd(r, n) != 1:
                continue
            assert gamma_spec(r, n).gamma_order == count_det_in_subgroup(r, n)


def test_sl2_order_formula():
    assert sl2_order(2) == 6
    assert sl2_order(3) == 24
    assert sl2_order(5) == 120
    assert sl2_order(8) == 384
    assert sl2_order(6) == 144


def test_charpoly_distribution_sl2_f2():
    dist = gamma_charpoly_distribution(5, 2)
    # enumeration of the six matrices of SL2(F_2): identity plus three
    # involutions have trace 0, the two 3-cycles have trace 1
    assert dist.freq[(0, 1)] == Fraction(2, 3)
    assert dist.freq[(1, 1)] == Fraction(1, 3)
    assert dist.total() == 1


def test_charpoly_distribution_support_and_mass():
    for r, ell in ((5, 3), (7, 3), (5, 7)):
        dist = gamma_charpoly_distribution(r, ell)
        H = h_subgroup(r, ell)
        assert {d for _, d in dist.support()} == H
        assert dist.total() == 1


def test_bfs_identity():
    assert bfs_subgroup([IDENTITY], 7).order == 1


def test_bfs_unipotent_pair_generates_sl2():
    group = bfs_subgroup([(1, 1, 0, 1), (1, 0, 1, 1)], 5)
    assert group.order == 120
    assert group.contains((2, 0, 0, 3))  # det 1
    assert not group.contains((2, 0, 0, 1))  # det 2


def test_bfs_order_divides_gl2_order():
    n = 6
    gl2_order = sum(
        1
        for a in range(n)
        for b in range(n)
        for c in range(n)
        for d in range(n)
        if math.gcd((a * d - b * c) % n, n) == 1
    )
    for gens in ([(1, 1, 0, 1)], [(1, 1, 0, 1), (5, 0, 0, 5)], [(0, 1, 5, 0)]):
        assert gl2_order % bfs_subgroup(gens, n).order == 0


def test_bfs_cap():
    with pytest.raises(ResourceCapError):
        bfs_subgroup([(1, 1, 0, 1), (1, 0, 1, 1)], 5, cap=50)


def test_kernel_sizes():
    for ell, m, n in ((2, 4, 2), (3, 3, 1), (2, 5, 3), (2, 7, 6)):
        assert len(sl2_kernel_elements(ell, m, n)) == ell ** (3 * (m - n))


def test_kernel_cap():
    with pytest.raises(ResourceCapError):
        sl2_kernel_elements(3, 7, 2)


def test_generating_set_regenerates():
    kernel = sl2_kernel_elements(2, 4, 2)
    gens = generating_set(kernel, 16)
    assert bfs_subgroup(gens, 16).order == len(kernel)


def test_commutator_lemma_reference_case():
    assert check_commutator_lemma(2, 2) is True


def test_commutator_lemma_vacuous_modulus():
    assert check_commutator_lemma(2, 2, modulus_exp=5) is True


def test_commutator_lemma_cap_exceeded():
    with pytest.raises(ResourceCapError):
        check_commutator_lemma(3, 2)


def test_unipotent_lemma():
    assert check_unipotent_lemma(3, 4) is True
    assert check_unipotent_lemma(3, 2) is True  # trivial kernel
    assert check_unipotent_lemma(2, 4) is True


def test_psl2_simplicity():
    assert psl2_simplicity(5) is True
    assert psl2_simplicity(7) is True
    assert psl2_simplicity(2) is False  # S_3 has a normal A_3


CTX = FieldContext(5)
WORKED = WeierstrassCurve(CTX, CTX.constant(1), CTX.T)


def test_survey_hard_guarantees():
    rep = frobenius_survey(WORKED, 3, 2)
    assert rep.all_det_in_h
    assert rep.subset_of_gamma
    assert 0 <= rep.tv_distance <= 1
    assert rep.n_places == 14  # 5 + 10 degree <= 2 places minus the bad one


def test_survey_rejects_isotrivial_and_p():
    iso = WeierstrassCurve(CTX, CTX.constant(0), CTX.constant(1))
    with pytest.raises(PreconditionError):
        frobenius_survey(iso, 3, 2)
    with pytest.raises(PreconditionError):
        frobenius_survey(WORKED, 5, 2)
    with pytest.raises(PreconditionError):
        frobenius_survey(WORKED, 3, 5)


def test_isotriviality_contrast_f7():
    ctx7 = FieldContext(7)
    iso = WeierstrassCurve(ctx7, ctx7.constant(0), ctx7.constant(1))
    rep = isotriviality_contrast(iso, 5, 2)
    assert rep.two_division_tag == "trivial"
    assert rep.tag_abelian
    assert rep.all_det_in_h
    assert rep.proper_subset
    with pytest.raises(PreconditionError):
        isotriviality_contrast(WORKED, 3, 2)


def test_mat_helpers():
    n = 11
    m = (3, 1, 4, 6)  # det 14 = 3 mod 11
    assert mat_mul(m, mat_inv(m, n), n) == IDENTITY
    with pytest.raises(PreconditionError):
        mat_inv((3, 1, 4, 5), n)  # det 11 = 0 mod 11
