import random

import pytest

from toricy.hypersurfaces import (
    crepant_rays,
    discrepancy,
    family_datum,
    quasismooth_general_wps,
    regularity_report,
    wellformed_wps_gcd,
)
from toricy.polytopes import hull, polar
from toricy.toric import (
    ToricError,
    anticanonical_polytope,
    variety_from_polytope,
    weighted_monomials,
    wps,
)


def quintic_polar_simplex():
    return hull([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                 (-1, -1, -1, -1)])


# ---------------------------------------------------------------------------
# family data

def test_family_datum_defaults():
    x = wps((1, 1, 1))
    fd = family_datum(x)
    assert len(fd.support) == 10
    assert fd.newton == anticanonical_polytope(x)


def test_family_datum_rejects_oversized_newton():
    x = wps((1, 1, 1))
    with pytest.raises(ToricError):
        family_datum(x, hull([(5, 0), (0, 5), (-5, -5)]))


def test_family_datum_rejects_undersized_support():
    x = wps((1, 1, 1))
    theta = anticanonical_polytope(x)
    with pytest.raises(ToricError):
        family_datum(x, theta, support=[(0, 0)])


# ---------------------------------------------------------------------------
# regularity reports

def test_p2_full_family_is_regular():
    x = wps((1, 1, 1))
    fd = family_datum(x)
    rep = regularity_report(fd)
    assert rep.irreducible and rep.well_formed
    assert rep.normal_sufficient == "yes"
    assert rep.canonical_newton
    assert rep.conjectural_witnesses == ()
    assert rep.offending_pairs == ()


def test_p2_cross_family_is_regular():
    x = wps((1, 1, 1))
    cross = hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
    rep = regularity_report(family_datum(x, cross))
    assert rep.irreducible and rep.well_formed
    assert rep.normal_sufficient == "yes"
    assert rep.canonical_newton


def test_112333_canonical_hull():
    x = wps((1, 1, 2, 3, 3, 3))
    fd = family_datum(x)
    rep = regularity_report(fd)
    assert rep.canonical_newton
    flags = fd.newton.classify()
    assert flags.is_canonical and not flags.is_reflexive
    q = quasismooth_general_wps((1, 1, 2, 3, 3, 3),
                                weighted_monomials((1, 1, 2, 3, 3, 3), 13))
    assert not q.is_quasismooth


def test_111112_canonical_hull_no_witnesses():
    x = wps((1, 1, 1, 1, 1, 2))
    rep = regularity_report(family_datum(x))
    assert rep.canonical_newton
    assert rep.conjectural_witnesses == ()


# ---------------------------------------------------------------------------
# discrepancies and crepant rays

def test_discrepancy_at_polar_vertex_is_zero():
    x = variety_from_polytope(polar(quintic_polar_simplex()))
    fd = family_datum(x)
    # newton is the quintic Newton simplex; its polar is the small simplex
    for n in quintic_polar_simplex().vertices:
        assert discrepancy(fd, n) == 0


def test_discrepancy_of_sum_vector():
    x = variety_from_polytope(polar(quintic_polar_simplex()))
    fd = family_datum(x)
    assert discrepancy(fd, (1, 1, 1, 1)) == 3


def test_discrepancy_rejects_zero_and_imprimitive():
    x = wps((1, 1, 1))
    fd = family_datum(x)
    with pytest.raises(ToricError):
        discrepancy(fd, (0, 0))
    with pytest.raises(ToricError):
        discrepancy(fd, (2, 0))


def test_crepant_rays_batyrev_case():
    x = wps((1, 1, 1))
    fd = family_datum(x)
    rays = crepant_rays(fd)
    theta_polar = x.fan_polytope
    expected = [p for p in theta_polar.lattice_points() if any(c != 0 for c in p)]
    assert sorted(rays) == sorted(expected)


def test_crepant_rays_p2_cross():
    x = wps((1, 1, 1))
    cross = hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
    fd = family_datum(x, cross)
    rays = crepant_rays(fd)
    # polar of the cross is the square; its 8 nonzero lattice points
    assert len(rays) == 8
    for r in x.rays:
        assert r in rays


def test_crepant_rays_quintic():
    x = variety_from_polytope(polar(quintic_polar_simplex()))
    fd = family_datum(x)
    assert len(crepant_rays(fd)) == 5


# ---------------------------------------------------------------------------
# quasismoothness

def test_quasismooth_fermat_cubic():
    res = quasismooth_general_wps((1, 1, 1), weighted_monomials((1, 1, 1), 3))
    assert res.is_quasismooth


def test_not_quasismooth_11134():
    res = quasismooth_general_wps((1, 1, 1, 3, 4),
                                  weighted_monomials((1, 1, 1, 3, 4), 10))
    assert not res.is_quasismooth
    assert res.witness == frozenset({4})


def test_quasismooth_111112():
    res = quasismooth_general_wps((1, 1, 1, 1, 1, 2),
                                  weighted_monomials((1, 1, 1, 1, 1, 2), 7))
    assert res.is_quasismooth


def test_not_quasismooth_112333_witness():
    res = quasismooth_general_wps((1, 1, 2, 3, 3, 3),
                                  weighted_monomials((1, 1, 2, 3, 3, 3), 13))
    assert not res.is_quasismooth
    assert res.witness == frozenset({3, 4, 5})


def test_quasismooth_rejects_mixed_degrees():
    with pytest.raises(ToricError):
        quasismooth_general_wps((1, 1, 1), [(3, 0, 0), (1, 1, 0)])


def test_quasismooth_monotone_in_support():
    rng = random.Random(404)
    w = (1, 1, 1, 3, 4)
    full = weighted_monomials(w, 10)
    for _ in range(200):
        k = rng.randint(1, len(full))
        sub = rng.sample(full, k)
        small = quasismooth_general_wps(w, sub)
        if small.is_quasismooth:
            bigger = rng.sample(full, min(len(full), k + rng.randint(0, 5)))
            merged = list({*map(tuple, sub), *map(tuple, bigger)})
            assert quasismooth_general_wps(w, merged).is_quasismooth


# ---------------------------------------------------------------------------
# well-formedness

def test_wellformed_gcd_examples():
    assert wellformed_wps_gcd((1, 1, 1, 1, 1, 2))
    assert wellformed_wps_gcd((1, 1, 2, 2))  # gcd 2 divides 6
    assert wellformed_wps_gcd((1, 1, 1))


def test_wellformed_gcd_matches_polytope_test():
    for w in [(1, 1, 1), (1, 1, 2), (1, 1, 2, 2), (1, 1, 1, 3, 4),
              (1, 1, 1, 1, 1, 2), (5, 5, 4, 4, 2), (1, 1, 2, 3, 3, 3),
              (1, 2, 2, 3, 4, 4), (1, 1, 1, 2, 3, 3)]:
        x = wps(w)
        fd = family_datum(x)
        rep = regularity_report(fd)
        assert rep.well_formed == wellformed_wps_gcd(w), w
