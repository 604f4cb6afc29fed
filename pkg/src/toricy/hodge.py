"""Hodge numbers of anticanonical hypersurfaces over rank-4 reflexive
polytopes, and the topological mirror test for good pairs.

The combinatorial formula counts lattice points and relative-interior
points of faces of the polytope and its polar:

    h11 = l(P*) - 5 - sum over facets F of P* of l*(F)
        + sum over dim-2 faces F of P* of l*(F) * l*(F dual)

with h21 the same expression after swapping the polytope and its polar.
Only rank 4 is supported; other ranks raise instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .goodpairs import GoodPair, polar_pair
from .polytopes import Polytope, PolytopeError

__all__ = ["HodgePair", "MirrorTestResult", "batyrev_hodge", "pair_hodge",
           "mirror_test"]


class HodgePair(NamedTuple):
    h11: int
    h21: int


@dataclass(frozen=True)
class MirrorTestResult:
    passes: bool
    primal: HodgePair
    dual: HodgePair


def _check_rank4_reflexive(delta: Polytope, role: str):
    if delta.ambient_dim != 4 or not delta.is_full_dimensional:
        raise PolytopeError(
            f"{role}: hodge numbers are only supported in rank 4")
    if not delta.classify().is_reflexive:
        raise PolytopeError(f"{role}: polytope is not reflexive")


def _correction_sum(p: Polytope, q: Polytope) -> int:
    """sum of l*(F) * l*(F dual) over the dim-2 faces F of p (dual faces
    taken on q = polar(p))."""
    fl = p.face_lattice()
    total = 0
    for f in fl.faces(2):
        lf = p.relint_count(f)
        if lf == 0:
            continue
        dual = fl.dual_face(f)
        total += lf * q.relint_count(dual)
    return total


def _hodge_side(p: Polytope, q: Polytope) -> int:
    """l(p) - 5 - sum l*(facets of p) + correction; with p = polar(delta)
    this is h11 of the hypersurface with Newton polytope delta."""
    fl = p.face_lattice()
    total = len(p.lattice_points()) - 5
    total -= sum(p.relint_count(f) for f in fl.faces(3))
    total += _correction_sum(p, q)
    return total


def batyrev_hodge(delta: Polytope) -> HodgePair:
    """Hodge numbers (h11, h21) of the general anticanonical hypersurface
    with Newton polytope ``delta`` (rank-4 reflexive).

    By construction ``h11(delta) == h21(polar(delta))`` and vice versa.
    """
    _check_rank4_reflexive(delta, "batyrev_hodge")
    q = delta.polar()
    h11 = _hodge_side(q, delta)
    h21 = _hodge_side(delta, q)
    assert h11 >= 0 and h21 >= 0
    return HodgePair(h11=h11, h21=h21)


def pair_hodge(gp: GoodPair) -> HodgePair:
    """Hodge numbers of the general member of the primal family of a good
    pair of rank-4 reflexive polytopes.

    The family with Newton polytope ``delta1`` inside the ambient of
    ``delta2`` has the same Hodge numbers as the full anticanonical family
    over ``delta1`` itself, so only ``delta1`` enters the formula; both
    polytopes must still be reflexive for the reduction to apply.
    """
    _check_rank4_reflexive(gp.delta1, "pair_hodge delta1")
    _check_rank4_reflexive(gp.delta2, "pair_hodge delta2")
    return batyrev_hodge(gp.delta1)


def mirror_test(gp: GoodPair) -> MirrorTestResult:
    """Topological mirror test: the pair passes when the Hodge numbers of
    the dual family are the mirror-swapped Hodge numbers of the primal."""
    primal = pair_hodge(gp)
    dual = pair_hodge(polar_pair(gp))
    return MirrorTestResult(
        passes=(primal.h11, primal.h21) == (dual.h21, dual.h11),
        primal=primal,
        dual=dual,
    )
