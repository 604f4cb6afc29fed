import random
from fractions import Fraction

import pytest

from helpers import (
    bv2_delta1,
    bv_ambient,
    cross_2d,
    p2_triangle,
    random_good_pair,
)
from toricy.goodpairs import (
    GoodPairError,
    families,
    good_pair,
    is_batyrev_case,
    polar_pair,
    shared_ambient_duals_agree,
)
from toricy.intlinalg import hnf_basis, invert_rational
from toricy.polytopes import hull, polar
from toricy.toric import anticanonical_polytope


# ---------------------------------------------------------------------------
# validation

def test_p2_cross_pair_is_good():
    gp = good_pair(cross_2d(), p2_triangle())
    assert gp.delta1 == cross_2d()


def test_batyrev_pair_is_good():
    t = p2_triangle()
    gp = good_pair(t, t)
    assert is_batyrev_case(gp)


def test_non_lattice_vertex_rejected():
    bad = hull([(Fraction(1, 2), 0), (0, 1), (-1, 0), (0, -1)])
    with pytest.raises(GoodPairError) as exc:
        good_pair(bad, p2_triangle())
    assert "non-lattice" in exc.value.clause


def test_inclusion_failure_diagnosed():
    big = hull([(3, 0), (0, 3), (-3, -3)])
    with pytest.raises(GoodPairError) as exc:
        good_pair(big, p2_triangle())
    assert exc.value.clause == "delta1 not contained in delta2"
    assert "vertex" in exc.value.witness


def test_non_reflexive_delta2_rejected():
    # delta2 whose polar has rational vertices
    d2 = hull([(1, 0), (0, 1), (-1, -2)])
    with pytest.raises(GoodPairError) as exc:
        good_pair(cross_2d(), hull([(2, -1), (-1, 2), (-2, -1)]))
    assert "polar" in exc.value.clause or "lattice" in exc.value.clause


# ---------------------------------------------------------------------------
# polar involution

def test_polar_pair_p2_example():
    gp = good_pair(cross_2d(), p2_triangle())
    dual = polar_pair(gp)
    assert dual.delta1 == hull([(1, 0), (0, 1), (-1, -1)])
    assert dual.delta2 == hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    back = polar_pair(dual)
    assert back.delta1 == gp.delta1 and back.delta2 == gp.delta2


def test_polar_pair_batyrev():
    t = p2_triangle()
    dual = polar_pair(good_pair(t, t))
    assert dual.delta1 == dual.delta2 == polar(t)


def test_polar_pair_involution_random():
    rng = random.Random(1234)
    for _ in range(500):
        rank = rng.choice((2, 2, 3, 3, 4))
        gp = random_good_pair(rng, rank)
        back = polar_pair(polar_pair(gp))
        assert back.delta1.vertices == gp.delta1.vertices
        assert back.delta2.vertices == gp.delta2.vertices


def test_good_pair_survives_finite_index_sublattice():
    # when the vertices of delta1 lie in a finite-index sublattice, the pair
    # read in that sublattice is still good
    rng = random.Random(88)
    for _ in range(40):
        rank = rng.choice((2, 3))
        gp = random_good_pair(rng, rank)
        d = rng.choice((2, 3))
        gens = [list(v) for v in gp.delta1.vertices]
        gens += [[d * int(i == j) for j in range(rank)] for i in range(rank)]
        basis = hnf_basis(gens)
        binv = invert_rational([list(b) for b in basis])

        def to_sub(pt):
            return tuple(sum(Fraction(pt[j]) * binv[j][i] for j in range(rank))
                         for i in range(rank))

        d1 = hull([to_sub(v) for v in gp.delta1.vertices])
        d2 = hull([to_sub(v) for v in gp.delta2.vertices])
        good_pair(d1, d2)  # must validate


# ---------------------------------------------------------------------------
# families

def test_p2_families():
    gp = good_pair(cross_2d(), p2_triangle())
    primal, dual = families(gp)
    assert len(primal.support) == 5
    assert len(dual.support) == 4
    assert primal.general_member_calabi_yau
    assert dual.general_member_calabi_yau
    # dual ambient is P1 x P1: four rays, free class group of rank 2
    assert dual.ambient.n_rays == 4
    assert dual.ambient.class_group.free_rank == 2
    assert dual.ambient.class_group.is_free


def test_batyrev_families_are_full_anticanonical():
    t = p2_triangle()
    primal, dual = families(good_pair(t, t))
    assert set(primal.support) == set(t.lattice_points())
    assert set(dual.support) == set(polar(t).lattice_points())


def test_bv2_primal_support_point_count():
    x = bv_ambient()
    d1 = bv2_delta1(x)
    gp = good_pair(d1, anticanonical_polytope(x))
    primal, _ = families(gp)
    # cross-checked in exponent coordinates: the hull of the eight defining
    # monomials holds 43 lattice points (it contains e.g. the midpoint
    # monomial x2^2 x5^5), among them the origin and all eight generators
    assert len(primal.support) == 43
    assert (0, 0, 0, 0) in primal.support
    for v in d1.vertices:
        assert v in primal.support


def test_families_swap_under_polar_pair():
    rng = random.Random(7)
    for _ in range(25):
        gp = random_good_pair(rng, rng.choice((2, 3)))
        primal, dual = families(gp)
        dprimal, ddual = families(polar_pair(gp))
        assert set(dprimal.support) == set(dual.support)
        assert set(ddual.support) == set(primal.support)
        assert set(dprimal.ambient.rays) == set(dual.ambient.rays)
        assert set(ddual.ambient.rays) == set(primal.ambient.rays)


# ---------------------------------------------------------------------------
# batyrev detection and shared-ambient check

def test_batyrev_iff_reflexive_delta1():
    rng = random.Random(55)
    for _ in range(60):
        gp = random_good_pair(rng, rng.choice((2, 3)))
        if is_batyrev_case(gp):
            assert gp.delta1.classify().is_reflexive


def test_shared_ambient_duals_agree():
    t = p2_triangle()
    gp1 = good_pair(cross_2d(), t)
    gp2 = good_pair(hull([(1, 0), (0, 1), (-1, -1)]), t)
    assert shared_ambient_duals_agree(gp1, gp2)
    assert shared_ambient_duals_agree(gp1, gp1)
    # both dual supports are the four lattice points of the polar triangle
    assert len(families(gp1)[1].support) == 4


def test_shared_ambient_requires_same_delta2():
    gp1 = good_pair(cross_2d(), p2_triangle())
    sq = hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    gp2 = good_pair(cross_2d(), sq)
    with pytest.raises(GoodPairError):
        shared_ambient_duals_agree(gp1, gp2)
