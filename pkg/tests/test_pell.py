from fractions import Fraction

import pytest

from k3cert import pell
from k3cert.quadfield import QuadExt


@pytest.fixture(scope="module")
def ctx6():
    return pell.build_context(6)


@pytest.fixture(scope="module")
def res6(ctx6):
    return pell.isometry_search(ctx6)


def test_context_validation():
    with pytest.raises(pell.PellError, match="l > 5"):
        pell.build_context(5)
    with pytest.raises(pell.PellError):
        pell.build_context(0)
    ctx = pell.build_context(6)
    assert ctx.lattice.gram == ((4, 24), (24, 4))
    assert ctx.d == 35


def test_rays(ctx6):
    ok, details = pell.check_rays(ctx6)
    assert ok, details
    assert pell.quad_inner(ctx6.lattice, ctx6.v1, ctx6.v1) == 0


def test_representation(ctx6):
    ok, details = pell.check_representation(ctx6, box=60)
    assert ok, details


def test_discriminant(ctx6):
    ok, details = pell.check_discriminant(ctx6)
    assert ok, details


def test_pell_columns_match_bruteforce():
    # the recurrence route must equal a direct scan for small bounds
    for ell in (6, 7):
        lat = pell.build_context(ell).lattice
        bound = 40
        direct = sorted(
            (a, b)
            for a in range(-bound, bound + 1)
            for b in range(-bound, bound + 1)
            if lat.norm((a, b)) == 4)
        assert pell._pell_columns(ell, bound) == direct


def test_raw_isometries_include_identities(ctx6):
    raw = pell._raw_isometries(ctx6, 20)
    mats = {g.matrix for g in raw}
    assert ((1, 0), (0, 1)) in mats
    assert ((-1, 0), (0, -1)) in mats
    assert ((0, 1), (1, 0)) in mats  # the ray swap


def test_generator_search(ctx6, res6):
    assert res6.g0.matrix == ((-143, -1704), (1704, 20305))
    assert res6.trace_a == 20162
    assert res6.alpha == QuadExt(10081, 1704, 35)
    assert res6.bound_used >= 300
    reasons = {r for _, r in res6.filtered_out}
    assert "ray-swapping" in reasons
    assert "cone-swapping" in reasons
    assert "discriminant-other" in reasons


def test_search_without_escalation_raises(ctx6):
    with pytest.raises(pell.PellError, match="larger bound"):
        pell.isometry_search(ctx6, entry_bound=300, auto_escalate=False)


def test_alpha_homomorphism(ctx6, res6):
    ok, details = pell.check_alpha_homomorphism(ctx6, res6)
    assert ok, details
    beta = pell._eigen_ratio(ctx6, res6.g0.matrix, ctx6.v2)
    assert res6.alpha * beta == 1


def test_orbit(ctx6, res6):
    ok, details, orbit = pell.check_H_orbit(ctx6, res6, k_bound=5)
    assert ok, details
    assert len(orbit) == 11
    assert (1, 0) in orbit


def test_takahashi_obstruction(ctx6):
    ok, details = pell.takahashi_obstruction(ctx6, (1, 0))
    assert ok, details
    assert "560" in details
    with pytest.raises(pell.PellError):
        pell.takahashi_obstruction(ctx6, (1, 1))  # norm != 4


def test_independent_class_scan_finds_planted_case():
    # sanity-check the exhaustive route against a lattice that does have
    # independent low-degree classes: ell would need to violate l > 5, so
    # drive the helper directly on a small-determinant relative
    from k3cert.lattice import IntegerLattice
    ctx = pell.build_context(6)
    found = pell._independent_low_degree_classes(ctx, (1, 0), 16)
    assert found == []
    # with a much higher cap the slab must eventually contain h2
    wide = pell._independent_low_degree_classes(ctx, (1, 0), 25)
    assert (0, 1) in wide


def test_full_certificate_small_range():
    report = pell.full_section4_certificate(ell_range=[7], k_bound=2)
    assert report.ok
    ids = {it.id for it in report.items}
    assert "lemma-4.6-ell-7" in ids
    g0_item = next(it for it in report.items if it.id == "lemma-4.6-ell-7")
    assert "-195" in g0_item.details  # the generator matrix is reported
