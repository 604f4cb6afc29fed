"""Regularity analysis of general anticanonical hypersurfaces.

A :class:`FamilyDatum` fixes an ambient variety, the Newton polytope of the
family, and a monomial support; the analysis translates irreducibility,
well-formedness, normality and singularity bounds of the general member
into exact polytope tests.  The quasismoothness test for weighted
projective ambients is the standard general-member criterion over variable
subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .polytopes import ClassificationFlags, Polytope, hull
from .toric import ToricVariety, ToricError, WeightSystem, anticanonical_polytope

__all__ = [
    "FamilyDatum",
    "RegularityReport",
    "QuasismoothResult",
    "family_datum",
    "regularity_report",
    "discrepancy",
    "crepant_rays",
    "quasismooth_general_wps",
    "wellformed_wps_gcd",
]


@dataclass(frozen=True)
class FamilyDatum:
    """Family of anticanonical hypersurfaces with fixed Newton polytope.

    ``support`` lists the lattice points whose monomials may appear; it
    always contains the vertices of ``newton`` and defaults to all of its
    lattice points.
    """

    ambient: ToricVariety
    newton: Polytope
    support: tuple[tuple[int, ...], ...]


def family_datum(ambient: ToricVariety, newton: Optional[Polytope] = None,
                 support=None) -> FamilyDatum:
    """Validated family datum.

    With no Newton polytope, uses the hull of the lattice points of the
    anticanonical polytope (the general anticanonical hypersurface); with
    no support, uses all lattice points of the Newton polytope.
    """
    theta = anticanonical_polytope(ambient)
    if newton is None:
        newton = hull(theta.lattice_points())
    if not newton.is_lattice_polytope:
        raise ToricError("newton polytope must be a lattice polytope")
    if not newton.has_origin_interior():
        raise ToricError("newton polytope must contain the origin in its interior")
    for v in newton.vertices:
        if any(p < -1 for p in ambient.pairing(v)):
            raise ToricError("newton polytope exceeds the anticanonical polytope")
    if support is None:
        support = newton.lattice_points()
    support = tuple(sorted(tuple(int(c) for c in u) for u in support))
    for u in support:
        if any(p < -1 for p in ambient.pairing(u)):
            raise ToricError(f"support point {u} outside the anticanonical polytope")
    if hull(support).vertices != newton.vertices:
        raise ToricError("support does not span the newton polytope")
    return FamilyDatum(ambient=ambient, newton=newton, support=support)


@dataclass(frozen=True)
class RegularityReport:
    """Regularity of the general member, clause by clause.

    ``normal_sufficient`` is only ever "yes" or "unknown": the normality
    criterion is one-directional and a failure proves nothing.
    ``conjectural_witnesses`` lists nonzero interior lattice points of the
    polar of the Newton polytope; under the adjunction conjecture each one
    certifies a non-canonical singularity, hence the label.
    """

    irreducible: bool
    well_formed: bool
    normal_sufficient: str  # "yes" | "unknown"
    canonical_newton: bool
    conjectural_witnesses: tuple[tuple[int, ...], ...]
    offending_pairs: tuple[tuple[int, int, str], ...]


def _regularity_clauses(fd: FamilyDatum):
    """(irreducible, well_formed, normal_yes, offending) from ray pair tests."""
    ambient, newton = fd.ambient, fd.newton
    theta = anticanonical_polytope(ambient)
    rays = ambient.rays

    # a ray is interior to polar(newton) iff every newton vertex pairs > -1
    irreducible = True
    offending = []
    support_vals = [newton.support_value(r) for r in rays]
    for i, s in enumerate(support_vals):
        assert s >= -1, "newton polytope exceeds the anticanonical polytope"
        if s > -1:
            irreducible = False
            offending.append((i, i, "ray_interior_to_polar"))

    def common_facet(points, ri, rj):
        return any(
            sum(a * b for a, b in zip(v, ri)) == -1
            and sum(a * b for a, b in zip(v, rj)) == -1
            for v in points)

    well_formed = True
    normal_yes = True
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if not common_facet(theta.vertices, rays[i], rays[j]):
                continue  # empty stratum
            if common_facet(newton.vertices, rays[i], rays[j]):
                continue  # stratum not contained in the general member
            seg = tuple(a - b for a, b in zip(rays[j], rays[i]))
            g = 0
            for c in seg:
                g = gcd(g, c)
            if g != 1:
                well_formed = False
                offending.append((i, j, "lattice_point_on_segment"))
            s = newton.support_value(tuple(a + b for a, b in zip(rays[i], rays[j])))
            if s > -1:
                normal_yes = False
                offending.append((i, j, "ray_sum_interior_to_polar"))
    return irreducible, well_formed, normal_yes, tuple(offending)


def regularity_report(fd: FamilyDatum, *,
                      newton_classification: Optional[ClassificationFlags] = None
                      ) -> RegularityReport:
    """Full regularity report for the general member of the family."""
    irreducible, well_formed, normal_yes, offending = _regularity_clauses(fd)
    flags = newton_classification or fd.newton.classify()
    canonical_newton = flags.is_canonical
    witnesses = tuple(
        p for p in fd.newton.polar().interior_lattice_points()
        if any(c != 0 for c in p))
    if canonical_newton:
        # a canonical Newton polytope guarantees all three clauses
        assert irreducible and well_formed and normal_yes, (
            "canonical newton polytope with a failing regularity clause", fd)
        assert not witnesses
    return RegularityReport(
        irreducible=irreducible,
        well_formed=well_formed,
        normal_sufficient="yes" if normal_yes else "unknown",
        canonical_newton=canonical_newton,
        conjectural_witnesses=witnesses,
        offending_pairs=offending,
    )


def discrepancy(fd: FamilyDatum, n) -> int | object:
    """Discrepancy of the exceptional divisor with primitive ray ``n``:
    ``-1 - min over the Newton polytope of <u, n>``.

    Nonnegative exactly when ``n`` is not interior to the polar of the
    Newton polytope.
    """
    nn = tuple(int(c) for c in n)
    if all(c == 0 for c in nn):
        raise ToricError("discrepancy needs a nonzero vector")
    g = 0
    for c in nn:
        g = gcd(g, c)
    if g != 1:
        raise ToricError(f"{nn} is not primitive")
    return -1 - fd.newton.support_value(nn)


def crepant_rays(fd: FamilyDatum) -> list[tuple[int, ...]]:
    """Rays along which a toric morphism stays crepant for the family:
    exactly the nonzero lattice points of the polar of the Newton polytope."""
    out = [p for p in fd.newton.polar().lattice_points() if any(c != 0 for c in p)]
    for p in out:
        # all of them lie on the boundary, so the discrepancy vanishes
        assert fd.newton.support_value(p) == -1
    return out


class QuasismoothResult(NamedTuple):
    is_quasismooth: bool
    witness: Optional[frozenset]  # violating variable subset when False


def quasismooth_general_wps(weights, support: Sequence[Sequence[int]]
                            ) -> QuasismoothResult:
    """General-member quasismoothness over a weighted projective space.

    ``support`` holds exponent vectors of one common weighted degree.  The
    criterion runs over every nonempty variable subset I: either some
    monomial uses only variables in I, or there are ``|I|`` monomials of
    the shape (monomial in I) * x_e with ``|I|`` distinct external
    variables e.  On failure the violating subset is returned.
    """
    w = weights if isinstance(weights, WeightSystem) else WeightSystem(weights)
    n = w.n
    monos = [tuple(int(c) for c in m) for m in support]
    if not monos:
        raise ToricError("empty support")
    degs = {sum(wi * mi for wi, mi in zip(w.weights, m)) for m in monos}
    if len(degs) != 1:
        raise ToricError(f"support has mixed weighted degrees {sorted(degs)}")
    var_masks = []
    one_masks = []
    for m in monos:
        if len(m) != n:
            raise ToricError("exponent vector length does not match weights")
        vm = 0
        om = 0
        for k, c in enumerate(m):
            if c > 0:
                vm |= 1 << k
            if c == 1:
                om |= 1 << k
        var_masks.append(vm)
        one_masks.append(om)

    for subset in range(1, 1 << n):
        size = subset.bit_count()
        pure = False
        externals = 0
        for vm, om in zip(var_masks, one_masks):
            out = vm & ~subset
            if out == 0:
                pure = True
                break
            if out & (out - 1) == 0 and (om & out):
                externals |= out
        if pure:
            continue
        if externals.bit_count() < size:
            witness = frozenset(k for k in range(n) if subset & (1 << k))
            return QuasismoothResult(False, witness)
    return QuasismoothResult(True, None)


def wellformed_wps_gcd(weights) -> bool:
    """Well-formedness of the general anticanonical hypersurface in a
    weighted projective space, by the pairwise-gcd divisibility test."""
    w = weights if isinstance(weights, WeightSystem) else WeightSystem(weights)
    ws = w.weights
    total = sum(ws)
    n = len(ws)
    for i in range(n):
        for j in range(i + 1, n):
            rest = [ws[k] for k in range(n) if k != i and k != j]
            g = 0
            for x in rest:
                g = gcd(g, x)
            if g and total % g != 0:
                return False
    return True
