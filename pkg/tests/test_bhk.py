import random
from fractions import Fraction
from math import lcm

import pytest

from helpers import (
    BV2_MONOMIALS,
    BV_MONOMIALS,
    bv2_delta1,
    bv_ambient,
    bv_delta1,
    cross_2d,
    p2_triangle,
    quintic_newton_simplex,
    quintic_polar_simplex,
    random_good_pair,
)
from toricy.bhk import (
    bhk_datum,
    bhk_pair,
    classical_dual_weights,
    datum_equivalent,
    datum_from_matrix,
    exponent_matrix,
    group_elements,
    intermediate_lattices,
    recover_variety,
    symmetry_group,
    transpose,
    transposition_is_polar_duality,
)
from toricy.goodpairs import good_pair, polar_pair
from toricy.intlinalg import AbelianGroup, hnf_basis
from toricy.polytopes import hull, polar
from toricy.toric import (
    ToricError,
    anticanonical_polytope,
    monomial_point,
    variety_from_polytope,
    wps,
)


def bv_datum(m_g=None):
    x = bv_ambient()
    return bhk_datum(x, [monomial_point(x, e) for e in BV_MONOMIALS], m_g=m_g)


def bv2_datum():
    x = bv_ambient()
    return bhk_datum(x, [monomial_point(x, e) for e in BV2_MONOMIALS])


def fermat_quintic_datum():
    x = variety_from_polytope(polar(quintic_polar_simplex()))
    pts = [monomial_point(x, tuple(5 * int(i == j) for j in range(5)))
           for i in range(5)]
    return bhk_datum(x, pts)


def phase_multiset(g):
    return sorted(g)


# ---------------------------------------------------------------------------
# construction

def test_datum_rows_are_exponents():
    bd = bv_datum()
    rows = sorted(bd.a_matrix)
    assert rows == sorted([(3, 1, 0, 0, 0), (0, 4, 0, 0, 0), (0, 0, 5, 0, 0),
                           (0, 0, 0, 5, 0), (0, 0, 0, 0, 10)])


def test_datum_p2_pair_matrix():
    gp = good_pair(cross_2d(), p2_triangle())
    bd = exponent_matrix(gp)
    assert sorted(sorted(r) for r in bd.a_matrix) == \
        sorted(sorted(r) for r in [(2, 1, 0), (1, 2, 0), (0, 1, 2), (1, 0, 2)])


def test_datum_fermat_quintic_is_five_identity():
    bd = fermat_quintic_datum()
    assert sorted(sorted(r) for r in bd.a_matrix) == \
        sorted(sorted(r) for r in [tuple(5 * int(i == j) for j in range(5))
                                   for i in range(5)])


def test_datum_rejects_torsion_ambient():
    x = variety_from_polytope(polar(quintic_polar_simplex()))
    from toricy.toric import finite_quotient
    xq, _ = finite_quotient(x, [(Fraction(1, 5), Fraction(4, 5), 0, 0)])
    theta = anticanonical_polytope(xq)
    with pytest.raises(ToricError):
        bhk_datum(xq, hull(theta.lattice_points()).vertices)


def test_datum_rejects_non_vertex_points():
    x = bv_ambient()
    pts = [monomial_point(x, e) for e in BV_MONOMIALS]
    pts.append((0, 0, 0, 0))
    with pytest.raises(ToricError):
        bhk_datum(x, pts)


# ---------------------------------------------------------------------------
# classical dual weights

def test_bv_dual_weights():
    dw = classical_dual_weights(bv_datum().a_matrix)
    assert sorted(dw.weights.weights) == [3, 5, 6, 6, 10]
    assert sum(dw.qstar) == 1


def test_fermat_dual_weights():
    dw = classical_dual_weights([[5 * int(i == j) for j in range(5)]
                                 for i in range(5)])
    assert dw.weights.weights == (1, 1, 1, 1, 1)
    assert all(q == Fraction(1, 5) for q in dw.qstar)


def test_dual_weights_reject_singular():
    with pytest.raises(ToricError):
        classical_dual_weights([[1, 1], [1, 1]])


def test_barycentric_identity_random_square_data():
    rng = random.Random(5150)
    found = 0
    while found < 30:
        gp = random_good_pair(rng, rng.choice((2, 3)))
        try:
            bd = exponent_matrix(gp)
        except ToricError:
            continue
        s, r = len(bd.a_matrix), len(bd.a_matrix[0])
        if s != r:
            continue
        try:
            dw = classical_dual_weights(bd.a_matrix)
        except ToricError:
            continue
        found += 1
        assert sum(dw.qstar) == 1
        # sum q*_i u_i = 0
        acc = [Fraction(0)] * bd.ambient.rank
        for q, u in zip(dw.qstar, bd.points):
            for k in range(len(u)):
                acc[k] += q * u[k]
        assert all(c == 0 for c in acc)


# ---------------------------------------------------------------------------
# symmetry groups

def test_bv_symmetry_group_is_z5():
    g = symmetry_group(bv_datum())
    assert g.structure == AbelianGroup(0, (5,))
    assert len(g.generators) == 1


def test_fermat_quintic_symmetry_group():
    g = symmetry_group(fermat_quintic_datum())
    assert g.structure == AbelianGroup(0, (5, 5, 5))
    # products of generator pairs stay special linear
    for a in g.generators:
        for b in g.generators:
            s = sum(x + y for x, y in zip(a, b))
            assert Fraction(s).denominator == 1


def test_bv2_symmetry_group_trivial():
    g = symmetry_group(bv2_datum())
    assert g.structure.is_trivial
    assert g.generators == ()


# ---------------------------------------------------------------------------
# intermediate lattices

def test_bv_intermediate_lattices():
    bd = bv_datum()
    lats = intermediate_lattices(bd)
    assert len(lats) == 2  # subgroups of Z/5
    idx = sorted(abs_det(b) for b in lats)
    assert idx == [1, 5]


def abs_det(basis):
    from toricy.intlinalg import det
    return abs(det([list(r) for r in basis]))


def test_trivial_quotient_single_lattice():
    bd = bv2_datum()
    lats = intermediate_lattices(bd)
    assert len(lats) == 1
    assert abs_det(lats[0]) == 1


def test_fermat_lattice_count_matches_subgroup_count():
    # subgroups of (Z/5)^3: 1 + 31 + 31 + 1 by the Gaussian binomials
    bd = fermat_quintic_datum()
    lats = intermediate_lattices(bd)
    assert len(lats) == 64


def test_intermediate_lattice_cap():
    bd = fermat_quintic_datum()
    with pytest.raises(ToricError):
        intermediate_lattices(bd, cap=5)


# ---------------------------------------------------------------------------
# ambient recovery

def test_recover_bv_ambient():
    bd = bv_datum()
    x = recover_variety(bd.a_matrix)
    assert x.class_group == AbelianGroup(free_rank=1)
    assert sorted(x.grading[0]) == [2, 4, 4, 5, 5] or \
        sorted(-g for g in x.grading[0]) == [2, 4, 4, 5, 5]


def test_recover_five_identity_gives_p4():
    x = recover_variety([[5 * int(i == j) for j in range(5)]
                         for i in range(5)])
    assert x.rank == 4 and x.n_rays == 5
    assert x.class_group == AbelianGroup(free_rank=1)
    assert sorted(abs(g) for g in x.grading[0]) == [1, 1, 1, 1, 1]
    # fan polytope is unimodularly equivalent to the standard simplex:
    # 5 vertices, reflexive, 6 lattice points
    assert len(x.fan_polytope.lattice_points()) == 6
    assert x.fan_polytope.classify().is_reflexive


def test_recover_row_selection_independent():
    rng = random.Random(21)
    bd = bv2_datum()
    a = [list(r) for r in bd.a_matrix]
    base = recover_variety(a)
    base_canon = hnf_basis([list(r) for r in zip(*base.rays)])
    for _ in range(8):
        perm = list(range(len(a)))
        rng.shuffle(perm)
        x = recover_variety([a[i] for i in perm])
        canon = hnf_basis([list(r) for r in zip(*x.rays)])
        # rays are recovered up to a unimodular change of coordinates only
        assert canon == base_canon


def test_datum_from_matrix_round_trip():
    bd = bv_datum()
    bd2 = datum_from_matrix(bd.a_matrix)
    assert datum_equivalent(bd, bd2)


# ---------------------------------------------------------------------------
# transposition

def test_bv_transpose_dual_monomials():
    bd = bv_datum()
    bdt = transpose(bd)
    # expected dual monomials up to variable permutation
    expected = sorted(sorted(r) for r in
                      [(3, 0, 0, 0, 0), (1, 4, 0, 0, 0), (0, 0, 5, 0, 0),
                       (0, 0, 0, 5, 0), (0, 0, 0, 0, 10)])
    assert sorted(sorted(r) for r in bdt.a_matrix) == expected


def test_bv_transpose_dual_weights_and_group():
    bd = bv_datum()
    bdt = transpose(bd)
    assert bdt.ambient.class_group == AbelianGroup(free_rank=1)
    assert sorted(bdt.ambient.grading[0]) == [3, 5, 6, 6, 10]
    g = group_elements(bdt)
    assert g.structure == AbelianGroup(0, (5,))
    gen = g.generators[0]
    # phases (0, 1/5, 4/5, 0, 0) up to permutation and group automorphism
    target = sorted([Fraction(0), Fraction(0), Fraction(0),
                     Fraction(1, 5), Fraction(4, 5)])
    matches = []
    for k in range(1, 5):
        powered = sorted(Fraction(k * c) % 1 for c in gen)
        matches.append(powered == target)
    assert any(matches)


def test_p2_pair_transpose_monomials():
    gp = good_pair(cross_2d(), p2_triangle())
    bd = exponent_matrix(gp)
    bdt = transpose(bd)
    got = sorted(sorted(r) for r in bdt.a_matrix)
    want = sorted(sorted(r) for r in [(2, 1, 0, 1), (1, 2, 1, 0), (0, 0, 2, 2)])
    assert got == want


def test_transpose_involution_examples():
    for bd in (bv_datum(), bv2_datum(), fermat_quintic_datum(),
               exponent_matrix(good_pair(cross_2d(), p2_triangle()))):
        assert datum_equivalent(transpose(transpose(bd)), bd)


# ---------------------------------------------------------------------------
# pairs and the duality

def test_bv_pair_trivial_group():
    bd = bv_datum()
    gp = bhk_pair(bd)
    assert gp.delta1.classify().is_reflexive
    assert gp.delta2.classify().is_reflexive
    assert gp.delta2 == anticanonical_polytope(bd.ambient)


def test_bv_pair_full_group():
    bd = bv_datum()
    lats = intermediate_lattices(bd)
    full_group_lattice = next(b for b in lats if abs_det(b) == 5)
    bd5 = bv_datum(m_g=full_group_lattice)
    gp = bhk_pair(bd5)
    # same polytopes reread in the finer dual lattice: still a good pair
    assert gp.delta1.has_origin_interior()
    assert transposition_is_polar_duality(bd5)


def test_fermat_pair_is_quintic_data():
    bd = fermat_quintic_datum()
    gp = bhk_pair(bd)
    assert len(gp.delta1.vertices) == 5
    assert len(gp.delta2.vertices) == 5
    assert gp.delta1.classify().is_reflexive


def test_duality_on_worked_examples():
    gp = good_pair(cross_2d(), p2_triangle())
    for bd in (bv_datum(), bv2_datum(), fermat_quintic_datum(),
               exponent_matrix(gp)):
        assert transposition_is_polar_duality(bd)


# ---------------------------------------------------------------------------
# randomized duality suite

def random_bhk_datum(rng):
    while True:
        gp = random_good_pair(rng, rng.choice((2, 2, 3, 3, 4)))
        try:
            bd = exponent_matrix(gp)
        except ToricError:
            continue
        s, r = len(bd.a_matrix), len(bd.a_matrix[0])
        if s > 8 or r > 8:
            continue
        if bd.monomial_index > 1 and rng.random() < 0.5 and bd.monomial_index <= 64:
            lats = intermediate_lattices(bd)
            choice = rng.choice(lats)
            bd = bhk_datum(bd.ambient, bd.points, m_g=choice)
        return bd


def test_duality_and_involution_random_suite():
    rng = random.Random(20240607)
    for _ in range(200):
        bd = random_bhk_datum(rng)
        assert transposition_is_polar_duality(bd)
        assert datum_equivalent(transpose(transpose(bd)), bd)
