"""Good pairs of polytopes and the induced hypersurface-family duality.

A good pair is a nested pair ``delta1 <= delta2`` such that ``delta1`` and
``polar(delta2)`` are canonical; equivalently both are lattice polytopes
with the origin interior.  Taking polars swaps and dualizes the pair, which
is the involution behind the family-level duality.  When the two polytopes
coincide the pair is the classical reflexive (Batyrev) situation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polytopes import OriginNotInteriorError, Polytope, polar
from .toric import ToricVariety, variety_from_polytope

__all__ = [
    "GoodPair",
    "GoodPairError",
    "FamilyDescription",
    "good_pair",
    "polar_pair",
    "families",
    "is_batyrev_case",
    "shared_ambient_duals_agree",
]


class GoodPairError(ValueError):
    """Validation failure, carrying the failed clause and a witness."""

    def __init__(self, clause: str, witness=None):
        self.clause = clause
        self.witness = witness
        super().__init__(f"not a good pair: {clause}"
                         + (f" (witness {witness})" if witness is not None else ""))


@dataclass(frozen=True)
class GoodPair:
    delta1: Polytope
    delta2: Polytope


@dataclass(frozen=True)
class FamilyDescription:
    """One side of the duality: an ambient variety and the monomial support
    of the family inside its anticanonical system."""

    ambient: ToricVariety
    support: tuple[tuple[int, ...], ...]
    dual: bool
    general_member_calabi_yau: bool


def good_pair(d1: Polytope, d2: Polytope) -> GoodPair:
    """Validate a pair of polytopes, diagnosing the first failed clause."""
    if d1.ambient_dim != d2.ambient_dim:
        raise GoodPairError("ambient rank mismatch",
                            (d1.ambient_dim, d2.ambient_dim))

    for v in d1.vertices:
        if not all(isinstance(c, int) for c in v):
            raise GoodPairError("non-lattice vertex of delta1", v)
    if not d1.has_origin_interior():
        raise GoodPairError("origin not interior to delta1")

    if not d2.is_full_dimensional:
        raise GoodPairError("delta2 not full-dimensional")
    for v in d1.vertices:
        for n, b in d2.facets:
            if sum(x * y for x, y in zip(n, v)) < b:
                raise GoodPairError("delta1 not contained in delta2",
                                    {"vertex": v, "facet": (n, b)})
    try:
        q = polar(d2)
    except OriginNotInteriorError as exc:
        raise GoodPairError("origin not interior to delta2",
                            exc.separating_facet) from exc
    for v in q.vertices:
        if not all(isinstance(c, int) for c in v):
            raise GoodPairError("non-lattice vertex of polar(delta2)", v)

    # canonicity of delta1 and polar(delta2) follows from the clauses above;
    # an extra interior lattice point here would be a library bug
    bad = next((p for p in d1.interior_lattice_points() if any(p)), None)
    assert bad is None, ("delta1 has an extra interior lattice point", bad)
    bad = next((p for p in q.interior_lattice_points() if any(p)), None)
    assert bad is None, ("polar(delta2) has an extra interior lattice point", bad)
    return GoodPair(delta1=d1, delta2=d2)


def polar_pair(gp: GoodPair) -> GoodPair:
    """The dual good pair ``(polar(delta2), polar(delta1))``; an involution."""
    return good_pair(gp.delta2.polar(), gp.delta1.polar())


def is_batyrev_case(gp: GoodPair) -> bool:
    """True when the two polytopes coincide; then both are reflexive and the
    family is the full anticanonical system."""
    return gp.delta1 == gp.delta2


def families(gp: GoodPair) -> tuple[FamilyDescription, FamilyDescription]:
    """The two hypersurface families attached to a good pair.

    The primal family lives on the variety with anticanonical polytope
    ``delta2`` and is supported on the lattice points of ``delta1``; the
    dual family lives on the variety with anticanonical polytope
    ``polar(delta1)`` with support on ``polar(delta2)``.  Both Newton
    polytopes are canonical, so the general members are Calabi-Yau; the
    flag records the verified classification.
    """
    primal_ambient = variety_from_polytope(gp.delta2)
    primal_cy = gp.delta1.classify().is_canonical
    primal = FamilyDescription(
        ambient=primal_ambient,
        support=tuple(gp.delta1.lattice_points()),
        dual=False,
        general_member_calabi_yau=primal_cy,
    )
    dual_newton = gp.delta2.polar()
    dual_ambient = variety_from_polytope(gp.delta1.polar())
    dual = FamilyDescription(
        ambient=dual_ambient,
        support=tuple(dual_newton.lattice_points()),
        dual=True,
        general_member_calabi_yau=dual_newton.classify().is_canonical,
    )
    assert primal.general_member_calabi_yau and dual.general_member_calabi_yau
    return primal, dual


def shared_ambient_duals_agree(gp1: GoodPair, gp2: GoodPair) -> bool:
    """For two good pairs with the same ``delta2``, both dual families are
    linear systems spanned by the same monomials on the same torus; this
    checks that their support sets literally coincide."""
    if gp1.delta2 != gp2.delta2:
        raise GoodPairError("pairs do not share delta2",
                            (gp1.delta2, gp2.delta2))
    s1 = set(families(gp1)[1].support)
    s2 = set(families(gp2)[1].support)
    return s1 == s2
