from fractions import Fraction

import pytest
import sympy

from k3cert import weierstrass as w


def curve(p, q):
    return w.WeierstrassCurve(p, q)


def test_singular_curve_rejected():
    with pytest.raises(w.CurveError):
        curve(-3, 2)  # 4*(-27) + 27*4 = 0
    with pytest.raises(w.CurveError):
        curve(0, 0)


def test_contains():
    e = curve(0, 1)
    assert e.contains(w.CurvePoint.affine(2, 3))
    assert e.contains(w.O)
    assert not e.contains(w.CurvePoint.affine(1, 1))


def test_addition_worked_example():
    e = curve(0, 1)
    p, q = w.CurvePoint.affine(2, 3), w.CurvePoint.affine(0, 1)
    assert w.chord_tangent_add(e, p, q) == w.CurvePoint.affine(-1, 0)


def test_identity_and_inverse_laws():
    e = curve(0, 1)
    p = w.CurvePoint.affine(2, 3)
    assert w.chord_tangent_add(e, p, w.O) == p
    assert w.chord_tangent_add(e, w.O, p) == p
    assert w.chord_tangent_add(e, p, e.neg(p)) == w.O


def test_doubling():
    e = curve(0, 17)
    p = w.CurvePoint.affine(2, 5)
    d = w.chord_tangent_add(e, p, p)
    assert e.contains(d)
    assert d == w.CurvePoint.affine(Fraction(-64, 25), Fraction(59, 125))


def test_off_curve_rejected():
    e = curve(0, 1)
    with pytest.raises(w.CurveError):
        w.chord_tangent_add(e, w.CurvePoint.affine(1, 1), w.O)


def test_group_law_oracle_properties():
    ok, details = w.check_group_law_oracle()
    assert ok, details


def test_translation_map_worked_example():
    phi = w.translation_map(0, 1)
    assert phi.apply(w.CurvePoint.affine(2, 3)) == w.CurvePoint.affine(-1, 0)
    with pytest.raises(w.CurveError):
        phi.apply(w.CurvePoint.affine(0, 5))  # on the excluded line s = a


def test_map_degree_bound():
    ok, details = w.check_forward_map()
    assert ok, details


def test_inverse_is_exact_identity():
    a, b = sympy.symbols("a b")
    inv = w.invert_translation_map(a, b)
    fwd = w.translation_map(a, b)
    assert fwd.compose(inv).is_identity()
    assert inv.compose(fwd).is_identity()


def test_inverse_round_trip_numeric():
    inv = w.invert_translation_map(0, 1)
    assert inv.apply(w.CurvePoint.affine(-1, 0)) == w.CurvePoint.affine(2, 3)


def test_finite_automorphism_orders():
    (cx, cy), order = w.finite_automorphism(2, -2, 1)
    assert (cx, cy, order) == (1, -1, 2)
    (cx, cy), order = w.finite_automorphism(4, 5, 0)
    assert order == 4 and cy == sympy.I
    (cx, cy), order = w.finite_automorphism(6, 0, 7)
    assert order == 6
    assert sympy.simplify(cx ** 3 - 1) == 0
    assert sympy.simplify(cx - 1) != 0


def test_finite_automorphism_shape_errors():
    with pytest.raises(w.CurveError):
        w.finite_automorphism(4, 1, 1)
    with pytest.raises(w.CurveError):
        w.finite_automorphism(6, 1, 1)
    with pytest.raises(w.CurveError):
        w.finite_automorphism(3, 0, 1)


def test_restriction_convention_uniform():
    e = curve(0, 1)
    samples = w._sample_points(e, w.CurvePoint.affine(2, 3))
    convention, n = w.restriction_agreement(e, w.CurvePoint.affine(0, 1), samples)
    assert convention == "addition-then-negation"
    assert n >= 20


def test_restriction_requires_on_curve_translation():
    e = curve(0, 1)
    with pytest.raises(w.CurveError):
        w.restriction_agreement(e, w.CurvePoint.affine(1, 1), [])


def test_full_certificate():
    report = w.full_weierstrass_certificate()
    assert report.ok
    restriction = next(it for it in report.items
                       if it.id == "thm-2.2-restriction")
    assert "addition-then-negation" in restriction.details
