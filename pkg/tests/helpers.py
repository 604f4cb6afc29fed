"""Shared fixtures: seed polytopes and seeded random generators.

The random generators are the documented recipe for reproducible property
suites: sample a reflexive seed, then shrink its lattice-point set while
the origin stays interior; hulls of such sets are canonical automatically.
"""

from itertools import product

from toricy.goodpairs import GoodPair, good_pair
from toricy.polytopes import Polytope, PolytopeError, hull, polar
from toricy.toric import ToricVariety, monomial_point, wps


def p2_triangle() -> Polytope:
    return hull([(2, -1), (-1, 2), (-1, -1)])


def cross_2d() -> Polytope:
    return hull([(1, 0), (0, 1), (-1, 0), (0, -1)])


def quintic_polar_simplex() -> Polytope:
    """conv(e1..e4, -1): the fan polytope of projective 4-space."""
    return hull([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
                 (-1, -1, -1, -1)])


def quintic_newton_simplex() -> Polytope:
    return polar(quintic_polar_simplex())


def bv_ambient() -> ToricVariety:
    return wps((5, 5, 4, 4, 2))


BV_MONOMIALS = [
    (3, 1, 0, 0, 0),   # x1^3 x2
    (0, 4, 0, 0, 0),   # x2^4
    (0, 0, 5, 0, 0),   # x3^5
    (0, 0, 0, 5, 0),   # x4^5
    (0, 0, 0, 0, 10),  # x5^10
]

BV2_MONOMIALS = BV_MONOMIALS + [
    (2, 0, 0, 0, 5),   # x1^2 x5^5
    (2, 0, 0, 2, 1),   # x1^2 x4^2 x5
    (2, 0, 2, 0, 1),   # x1^2 x3^2 x5
]


def bv_delta1(x=None) -> Polytope:
    x = x or bv_ambient()
    return hull([monomial_point(x, e) for e in BV_MONOMIALS])


def bv2_delta1(x=None) -> Polytope:
    x = x or bv_ambient()
    return hull([monomial_point(x, e) for e in BV2_MONOMIALS])


def reflexive_seeds(rank: int) -> list[Polytope]:
    seeds = {
        2: [p2_triangle(), cross_2d(),
            hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])],
        3: [hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]),
            hull(list(product((-1, 1), repeat=3)))],
        4: [quintic_polar_simplex(), quintic_newton_simplex()],
    }
    return seeds[rank]


def random_canonical_polytope(rng, rank: int) -> Polytope:
    seed = rng.choice(reflexive_seeds(rank))
    pts = list(seed.lattice_points())
    rng.shuffle(pts)
    keep = list(pts)
    for pt in pts:
        if all(c == 0 for c in pt) or rng.random() < 0.5:
            continue
        trial = [q for q in keep if q != pt]
        if len(trial) <= rank:
            continue
        try:
            h = hull(trial)
        except PolytopeError:
            continue
        if h.is_full_dimensional and h.has_origin_interior():
            keep = trial
    return hull(keep)


def random_good_pair(rng, rank: int) -> GoodPair:
    """delta2 is a reflexive seed, delta1 a random canonical subpolytope of
    it (shrinking the lattice-point set preserves canonicity)."""
    delta2 = rng.choice(reflexive_seeds(rank))
    pts = list(delta2.lattice_points())
    rng.shuffle(pts)
    keep = list(pts)
    for pt in pts:
        if all(c == 0 for c in pt) or rng.random() < 0.45:
            continue
        trial = [q for q in keep if q != pt]
        if len(trial) <= rank:
            continue
        try:
            h = hull(trial)
        except PolytopeError:
            continue
        if h.is_full_dimensional and h.has_origin_interior():
            keep = trial
    return good_pair(hull(keep), delta2)
