import random
from fractions import Fraction

import pytest

from k3cert.lattice import (
    DimensionMismatch,
    IntegerLattice,
    LatticeError,
    NotABasis,
    change_basis,
    coordinates_in_basis,
    det_int,
    discriminant_group,
    is_dual_vector,
    mat_mul,
    reduce_mod_lattice,
    smith_normal_form,
    solve_norm_system,
    solve_pairing_norm,
)

GRAM3 = ((4, 1, 1), (1, -2, 0), (1, 0, -2))


@pytest.fixture
def lat3():
    return IntegerLattice(gram=GRAM3, labels=("H", "L", "M"))


def test_gram_validation():
    with pytest.raises(LatticeError):
        IntegerLattice(gram=((1, 0), (0, 2)))  # odd diagonal
    with pytest.raises(LatticeError):
        IntegerLattice(gram=((2, 1), (0, 2)))  # not symmetric
    with pytest.raises(LatticeError):
        IntegerLattice(gram=((2, 2), (2, 2)))  # degenerate
    with pytest.raises(LatticeError):
        IntegerLattice(gram=GRAM3, labels=("a", "b"))


def test_inner_products(lat3):
    assert lat3.norm((1, 0, 0)) == 4
    assert lat3.inner((1, 0, 0), (0, 1, 0)) == 1
    assert lat3.norm((0, 1, 0)) == -2
    assert lat3.determinant() == 20
    with pytest.raises(DimensionMismatch):
        lat3.norm((1, 0))


def test_det_int_matches_fraction_elimination():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        # cofactor expansion as an independent reference
        def cof(a):
            if len(a) == 1:
                return a[0][0]
            total = 0
            for j in range(len(a)):
                minor = [row[:j] + row[j + 1:] for row in a[1:]]
                total += (-1) ** j * a[0][j] * cof(minor)
            return total
        assert det_int(m) == cof(m)


def test_smith_normal_form_properties():
    rng = random.Random(11)
    for _ in range(30):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        m = tuple(tuple(rng.randint(-8, 8) for _ in range(cols))
                  for _ in range(rows))
        u, d, v = smith_normal_form(m)
        assert abs(det_int(u)) == 1 and abs(det_int(v)) == 1
        assert mat_mul(u, mat_mul(m, v)) == d
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            assert a >= 0
            if a != 0:
                assert b % a == 0


def test_discriminant_group_z20(lat3):
    disc = discriminant_group(lat3)
    assert disc.invariant_factors == (20,)
    assert disc.order == 20
    v20 = tuple(Fraction(c, 20) for c in (-6, 7, -3))
    assert disc.element_order(v20) == 20
    assert is_dual_vector(lat3, v20)
    assert not is_dual_vector(lat3, (Fraction(1, 3), 0, 0))


def test_discriminant_group_rank2():
    lat = IntegerLattice(gram=((4, 24), (24, 4)))
    disc = discriminant_group(lat)
    assert disc.invariant_factors == (4, 140)
    assert disc.order == 560 == abs(lat.determinant())


def test_reduce_mod_lattice():
    assert reduce_mod_lattice((Fraction(7, 4), Fraction(-1, 4))) == \
        (Fraction(3, 4), Fraction(3, 4))
    assert reduce_mod_lattice((Fraction(2), Fraction(0))) == (0, 0)


def test_change_basis(lat3):
    new, t = change_basis(lat3, [(1, -1, 0), (1, -1, 1), (-6, 7, -3)])
    assert new.gram == ((0, 1, 0), (1, 0, 0), (0, 0, -20))
    assert abs(det_int(t)) == 1
    with pytest.raises(NotABasis):
        change_basis(lat3, [(1, 0, 0), (2, 0, 0), (0, 0, 1)])
    with pytest.raises(NotABasis, match="sublattice"):
        change_basis(lat3, [(2, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_coordinates_in_basis(lat3):
    _, t = change_basis(lat3, [(1, -1, 0), (1, -1, 1), (-6, 7, -3)])
    assert coordinates_in_basis(lat3, t, (0, 0, 1)) == (-1, 1, 0)
    assert coordinates_in_basis(lat3, t, (1, 0, 0)) == (4, 3, 1)


def test_solve_norm_system(lat3):
    sols = solve_norm_system(lat3, [((1, 0, 0), 1)], -2, 20)
    assert sols == [(0, 0, 1), (0, 1, 0)]
    with pytest.raises(LatticeError):
        solve_norm_system(lat3, [], -2, 0)


def test_solve_pairing_norm_complete(lat3):
    assert solve_pairing_norm(lat3, (1, 0, 0), 1, -2) == [(0, 0, 1), (0, 1, 0)]
    # agreement with the boxed route on a batch of random targets
    rng = random.Random(3)
    for _ in range(15):
        pairing = rng.randint(-6, 6)
        norm = 2 * rng.randint(-6, 3)
        complete = solve_pairing_norm(lat3, (1, 0, 0), pairing, norm)
        boxed = solve_norm_system(lat3, [((1, 0, 0), pairing)], norm, 40)
        inside = [x for x in complete if all(abs(c) <= 40 for c in x)]
        assert boxed == inside
    with pytest.raises(LatticeError):
        solve_pairing_norm(lat3, (0, 1, 0), 1, -2)  # negative-norm anchor


def test_solve_pairing_norm_rank2():
    lat = IntegerLattice(gram=((4, 24), (24, 4)))
    assert solve_pairing_norm(lat, (1, 0), 4, 4) == [(1, 0)]
    assert solve_pairing_norm(lat, (1, 0), 1, 4) == []


def test_json_roundtrip(lat3):
    again = IntegerLattice.from_json(lat3.to_json())
    assert again == lat3
