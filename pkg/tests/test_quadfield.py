from fractions import Fraction

import pytest

from k3cert.quadfield import QuadExt, is_square, quadratic_roots, serialize, sign_of


def test_is_square():
    assert is_square(0) and is_square(49)
    assert not is_square(-4) and not is_square(35)


def test_construction_rejects_square_d():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 9)
    with pytest.raises(ValueError):
        QuadExt(1, 1, -5)


def test_field_operations():
    x = QuadExt(Fraction(1, 2), Fraction(3), 5)
    y = QuadExt(2, -1, 5)
    assert x + y == QuadExt(Fraction(5, 2), 2, 5)
    assert x - y == QuadExt(Fraction(-3, 2), 4, 5)
    assert (x * y).a == Fraction(1) - 15 and (x * y).b == Fraction(11, 2)
    assert x * (1 / x) == 1
    assert (x / y) * y == x
    assert 2 + x == x + 2
    assert x ** 3 == x * x * x
    assert x ** -2 == 1 / (x * x)


def test_mixed_discriminants_rejected():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 5) + QuadExt(1, 1, 7)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadExt(1, 1, 5) / QuadExt(0, 0, 5)


def test_norm_and_conjugate():
    x = QuadExt(3, 2, 5)
    assert x.norm() == 9 - 20
    assert x * x.conjugate() == x.norm()
    assert x.conjugate().conjugate() == x


def test_sign_exact_near_cancellation():
    # 2889/1292 is a convergent-level approximation of sqrt(5)
    close = QuadExt(Fraction(2889, 1292), -1, 5)
    assert close.sign() == (1 if 2889 * 2889 > 5 * 1292 * 1292 else -1)
    assert QuadExt(0, 0, 5).sign() == 0
    assert QuadExt(0, -1, 5).sign() == -1
    assert QuadExt(-3, 1, 5).sign() == -1   # sqrt(5) < 3
    assert QuadExt(-2, 1, 5).sign() == 1    # sqrt(5) > 2
    # exact boundary: a^2 == b^2 d
    assert QuadExt(5, -1, 25 * 5).sign() != 0  # 25 != 125
    assert QuadExt(Fraction(5), Fraction(-1), 5).sign() == 1


def test_comparisons():
    r = QuadExt.sqrt_of(2)
    assert 1 < r < 2
    assert r <= r
    assert not (r > r)
    assert sign_of(r - 1) == 1
    assert sign_of(Fraction(-1, 3)) == -1
    assert sign_of(0) == 0


def test_quadratic_roots_irrational():
    pair = quadratic_roots(3)
    assert not pair.rational
    alpha, beta = pair.alpha, pair.beta
    assert alpha * beta == 1
    assert alpha + beta == 3
    assert alpha * alpha - 3 * alpha + 1 == 0
    assert alpha > beta


def test_quadratic_roots_rational_branch():
    pair = quadratic_roots(2)
    assert pair.rational
    assert (pair.alpha, pair.beta) == (1, 1)
    with pytest.raises(ValueError):
        quadratic_roots(1)
    pair = quadratic_roots(-2)
    assert pair.rational and pair.alpha == -1


def test_serialize():
    assert serialize(QuadExt(Fraction(1, 2), Fraction(-3, 4), 5)) == "1/2-3/4√5"
    assert serialize(QuadExt(2, 0, 5)) == "2"
    assert str(QuadExt(0, 1, 35)) == "0+1√35"
