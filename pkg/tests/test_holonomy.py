"""Riccati normal forms, holonomy presentations and the I_p classification."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import QI
from pencils.errors import AlphaOutsideField, DegYTooLarge, NonSplitP2, NotAFibration, NotFlat
from pencils.field import QQ, Scalar, quadratic_field
from pencils.holonomy import (
    AFFINE,
    ALL_OF_IS,
    FINITE,
    MULTIPLICATIVE,
    QCOSET,
    IpClassification,
    ScaledPeriod,
    affine,
    classify_ip,
    conjugate,
    group_is_finite,
    holonomy_generators,
    multiplicative,
    partial_fraction_poles,
    reparametrize,
    riccati_normal_form,
    side_conditions_report,
)
from pencils.parser import parse_one_form, parse_poly, parse_rational_function
from pencils.pencil import Pencil

P = parse_poly
SQRT2 = quadratic_field(0, 2)
THETA = Scalar.gen(SQRT2)
I = Scalar.gen(QI)


def pencil(w, e, field=QQ):
    return Pencil(parse_one_form(w, field), parse_one_form(e, field))


def presentation(w, e, field=QQ):
    return holonomy_generators(riccati_normal_form(pencil(w, e, field)))


def test_riccati_xy_pencil():
    R = riccati_normal_form(pencil("x dy", "y dx"))
    assert R.kind == MULTIPLICATIVE
    assert R.a == parse_rational_function("1/x")
    assert [(p.c, p.order, p.residue) for p in R.poles] == [(0, 1, 1)]
    assert R.infinity_residue == -1
    H = holonomy_generators(R)
    assert [(g.mu, g.nu) for g in H.generators] == [(-1, 0)]


def test_two_poles_mu_list():
    H = presentation("x*(x-1) dy", "y*(3*x-1) dx")  # a = 1/x + 2/(x-1)
    assert [g.mu for g in H.generators] == [-1, -2]
    assert H.infinity_residue == -3
    assert sum((p.residue for p in H.poles), Scalar(0)) + H.infinity_residue == 0


def test_affine_generator():
    H = presentation("x dy", "3 dx")
    assert H.kind == AFFINE
    (g,) = H.generators
    assert g.lam == 1 and g.a == ScaledPeriod(Scalar(-3)) and g.b == 0


def test_non_split_quadratic():
    with pytest.raises(NonSplitP2):
        riccati_normal_form(pencil("x dy", "(y^2+1) dx"))
    R = riccati_normal_form(pencil("x dy", "(y^2+1) dx", QI))
    assert R.kind == MULTIPLICATIVE and R.field == QI


def test_double_root_is_affine():
    R = riccati_normal_form(pencil("x dy", "(y-1)^2 dx"))
    assert R.kind == AFFINE


def test_preconditions():
    with pytest.raises(NotAFibration):
        riccati_normal_form(pencil("x dy", "y dy + dx"))
    with pytest.raises(DegYTooLarge):
        riccati_normal_form(pencil("x dy", "y^3 dx"))
    with pytest.raises(NotFlat):
        riccati_normal_form(pencil("y dx + dy", "x dx"))


def test_twist_gives_nu():
    H = presentation("x dy - 1/2*y dx", "y dx")
    assert [(g.mu, g.nu) for g in H.generators] == [(-1, Fraction(1, 2))]


def test_partial_fractions():
    poles = partial_fraction_poles(parse_rational_function("(3*x+1)/(x^2*(x-2))"))
    assert [(p.c, p.order) for p in poles] == [(0, 2), (2, 1)]
    assert sum((p.residue for p in poles), Scalar(0)) == 0  # degree gap >= 2


def test_group_is_finite_examples():
    H = multiplicative([-1])
    cert = group_is_finite(H, Fraction(3, 7))
    assert cert.finite and cert.order == 7
    assert not group_is_finite(multiplicative([-1], field=SQRT2), THETA)
    A = affine([1], [1], [0])
    assert group_is_finite(A, 0) and not group_is_finite(A, 1)
    with pytest.raises(AlphaOutsideField):
        group_is_finite(H, I)


def test_affine_rotation_finiteness():
    # z -> i z + 2 pi i (alpha): finite for every alpha (conjugate to a rotation)
    A = affine([I], [1], [0], field=QI)
    assert group_is_finite(A, 5).order == 4
    # two rotations with different fixed points generate an infinite group
    B = affine([I, -1], [1, 0], [0, 1], field=QI)
    assert not group_is_finite(B, 0)


def test_classify_examples():
    c = classify_ip(multiplicative([-1]))
    assert c.verdict == QCOSET and c.lam == -1 and c.beta == 0
    c = classify_ip(multiplicative([1, 2], [0, Fraction(1, 3)]))
    assert c.verdict == QCOSET and c.contains(Fraction(5, 2)) and c.beta == 0
    assert classify_ip(multiplicative([1, THETA])).verdict == FINITE
    assert classify_ip(presentation("x dy", "3 dx")).verdict == FINITE


def test_trichotomy():
    assert classify_ip(multiplicative([0, 0], [Fraction(1, 2), 3])).verdict == ALL_OF_IS
    assert classify_ip(multiplicative([0, 0], [Fraction(1, 2), THETA])).verdict == FINITE
    assert classify_ip(multiplicative([1, THETA], [0, 0])).verdict == FINITE
    assert classify_ip(affine([1], [0], [0])).verdict == ALL_OF_IS


def test_qcoset_with_irrational_base_point():
    c = classify_ip(multiplicative([1], [I]))
    assert c.verdict == QCOSET and c.beta == -I
    assert c.contains(Fraction(2, 3) - I) and not c.contains(Fraction(2, 3))


@pytest.mark.parametrize("c", [2, Fraction(-1, 3)])
def test_qcoset_covariance(c):
    for H in (multiplicative([-1]), multiplicative([1, 2], [I, 2 * I]), multiplicative([Fraction(3, 2)], [I])):
        old = classify_ip(H)
        new = classify_ip(reparametrize(H, c))
        assert new.verdict == QCOSET
        expected = IpClassification(QCOSET, old.lam / c, old.beta / c)
        assert new.same_coset(expected)
        for q in (Fraction(1, 5), Fraction(-7, 2)):
            alpha = old.lam * q + old.beta
            assert new.contains(alpha / c)


def test_conjugation_preserves_finiteness():
    H = multiplicative([-1, 2], [Fraction(1, 3), 0])
    Hi = conjugate(H, "inversion")
    for alpha in (Fraction(1, 2), 3, Fraction(-2, 5)):
        assert group_is_finite(H, alpha).finite == group_is_finite(Hi, alpha).finite
    A = affine([I], [1], [0], field=QI)
    At = conjugate(A, "translation", ScaledPeriod(Scalar(2, 0, QI)))
    As = conjugate(A, "scaling", 3)
    for alpha in (0, 1, I):
        assert group_is_finite(A, alpha).finite == group_is_finite(At, alpha).finite
        assert group_is_finite(A, alpha).finite == group_is_finite(As, alpha).finite
    assert classify_ip(At).verdict == classify_ip(A).verdict


def test_side_conditions():
    P_ = pencil("x dy", "y dx")
    rep = side_conditions_report(P_, 1, {"axis": P("x")})
    assert rep.components[0]["invariant"] and rep.components[0]["Z_at_least_1"]
    origin = [s for s in rep.singularities if s["point"].chart == 1][0]
    assert origin["eigenvalue_ratio"] == -1 and origin["local_first_integral"] == "holds"
    rep = side_conditions_report(P_, 2)
    origin = [s for s in rep.singularities if s["point"].chart == 1][0]
    assert origin["eigenvalue_ratio"] == -2 and origin["local_first_integral"] == "holds"
    rep = side_conditions_report(pencil("x^2 dy", "y dx"), 1)  # saddle-node at origin
    origin = [s for s in rep.singularities if s["point"].chart == 1][0]
    assert origin["local_first_integral"] == "unknown"


# -- properties ---------------------------------------------------------------------

fracs = st.fractions(min_value=-9, max_value=9, max_denominator=9)


@given(st.lists(fracs.filter(bool), min_size=1, max_size=3), st.lists(fracs, min_size=3, max_size=3),
       st.lists(fracs, min_size=10, max_size=10), st.lists(fracs.filter(bool), min_size=10, max_size=10))
def test_qcoset_consistent_with_group_is_finite(mus, base, qs, offs):
    nus = [m * base[0] for m in mus]  # beta = -base[0] works rationally
    H = multiplicative([Scalar(m, 0, QI) for m in mus], [Scalar(n, 0, QI) for n in nus], field=QI)
    c = classify_ip(H)
    assert c.verdict == QCOSET
    for q in qs:
        assert group_is_finite(H, c.lam * q + c.beta).finite
    for o in offs:
        assert not group_is_finite(H, c.lam * Scalar(0, o, QI) + c.beta).finite


@given(st.lists(fracs, min_size=2, max_size=4))
def test_residue_sum_vanishes(residues):
    # a = sum r_j/(x - j): mu_j = -r_j and the infinity residue balances them
    num = " + ".join(f"({r})/(x - {j})" for j, r in enumerate(residues))
    a = parse_rational_function(num)
    poles = partial_fraction_poles(a)
    assert sum((p.residue for p in poles), Scalar(0)) == sum(residues)
