"""Q-Fano toric varieties from polytopes and weight systems.

A variety is stored through its exact combinatorial data: the primitive ray
generators, the ray matrix (rows are rays, the matrix of the lattice map
``M -> Z^r``), the class-group structure with its grading matrix, and the
fan polytope ``conv(rays)``.  Fans are always face fans of the fan
polytope, which is the only kind of fan this toolkit materializes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .intlinalg import (
    AbelianGroup,
    cokernel_map,
    det,
    hnf_basis,
    invert_rational,
    primitive_vector,
    snf,
    snf_diagonal,
)
from .polytopes import Polytope, PolytopeError, hull, polar

__all__ = [
    "WeightSystem",
    "ToricVariety",
    "ToricError",
    "StratumStatus",
    "wps",
    "variety_from_polytope",
    "anticanonical_polytope",
    "monomial_exponents",
    "finite_quotient",
    "stratum_status",
    "weighted_monomials",
    "direct_sum",
]


class ToricError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights of a normalized weighted projective space.

    Normalized means every ``(n-1)``-subset of the weights is coprime (in
    particular the full gcd is 1); this is exactly the condition for the
    ray images of the standard basis to stay primitive.
    """

    weights: tuple[int, ...]

    def __init__(self, weights):
        ws = tuple(int(x) for x in weights)
        if len(ws) < 2 or any(w <= 0 for w in ws):
            raise ToricError(f"invalid weights {ws}")
        for i in range(len(ws)):
            sub = ws[:i] + ws[i + 1:]
            g = 0
            for x in sub:
                g = gcd(g, x)
            if g != 1:
                raise ToricError(
                    f"weights {ws} are not normalized: dropping position {i} "
                    f"leaves gcd {g}")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def sorted_ascending(self) -> tuple[int, ...]:
        return tuple(sorted(self.weights))

    def __iter__(self):
        return iter(self.weights)

    def __str__(self):
        return "(" + ",".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class ToricVariety:
    """Toric variety given by the face fan over ``conv(rays)``.

    ``grading`` is the projection of ``Z^r`` onto the free part of the
    class group (one row per free generator); ``class_group`` is the full
    cokernel of the ray matrix.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    grading: tuple[tuple[int, ...], ...]
    class_group: AbelianGroup
    fan_polytope: Polytope

    @property
    def ray_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Rows are the rays: the matrix of ``M -> Z^r``, u -> (<u, n_i>)_i."""
        return self.rays

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def pairing(self, u) -> tuple:
        return tuple(sum(a * b for a, b in zip(n, u)) for n in self.rays)

    def anticanonical_polytope(self) -> Polytope:
        return anticanonical_polytope(self)

    def __repr__(self):
        return (f"ToricVariety(rank={self.rank}, rays={self.n_rays}, "
                f"class_group={self.class_group})")


def _make_variety(rays, fan_polytope=None) -> ToricVariety:
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    if not rays:
        raise ToricError("no rays")
    rank = len(rays[0])
    for r in rays:
        if all(x == 0 for x in r):
            raise ToricError("zero ray")
        if primitive_vector(r) != r:
            raise ToricError(f"ray {r} is not primitive")
    mat = [list(r) for r in rays]
    diag = snf_diagonal(mat)
    if sum(1 for d in diag if d != 0) != rank:
        raise ToricError("rays do not span")
    group, _tors, free = cokernel_map(mat)
    grading = []
    for row in free.tolist():
        r = [int(x) for x in row]
        # orient each grading row so the anticanonical degree is nonnegative
        if sum(r) < 0:
            r = [-x for x in r]
        grading.append(tuple(r))
    grading = tuple(grading)
    if fan_polytope is None:
        fan_polytope = hull(rays)
    return ToricVariety(rank=rank, rays=rays, grading=grading,
                        class_group=group, fan_polytope=fan_polytope)


# ---------------------------------------------------------------------------
# weighted projective spaces

def wps(weights) -> ToricVariety:
    """Weighted projective space as a toric variety.

    The cocharacter lattice is ``Z^n`` modulo the weight vector; the rays
    are the images of the standard basis under an SNF-adapted basis choice,
    so they satisfy ``sum w_i n_i = 0`` and are primitive.  The grading row
    equals the weight vector.
    """
    w = weights if isinstance(weights, WeightSystem) else WeightSystem(weights)
    n = w.n
    col = [[wi] for wi in w.weights]
    _s, u, _v = snf(col)
    # u @ w == e_1, so rows 2..n of u present Z^n / Z w
    proj = [[int(u[i, j]) for j in range(n)] for i in range(1, n)]
    rays = [tuple(proj[k][i] for k in range(n - 1)) for i in range(n)]
    for i, r in enumerate(rays):
        if primitive_vector(r) != r:  # normalization should prevent this
            raise ToricError(f"ray for weight {w.weights[i]} is not primitive")
    rel = [sum(w.weights[i] * rays[i][k] for i in range(n)) for k in range(n - 1)]
    assert all(x == 0 for x in rel)
    v = _make_variety(rays)
    assert v.class_group.free_rank == 1 and v.class_group.is_free
    # fix the sign so the grading row is the weight vector itself
    grading = v.grading
    if grading[0] != w.weights:
        flipped = tuple(-x for x in grading[0])
        assert flipped == w.weights
        v = ToricVariety(rank=v.rank, rays=v.rays, grading=(flipped,),
                         class_group=v.class_group, fan_polytope=v.fan_polytope)
    return v


def weighted_monomials(weights, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given weighted degree, sorted."""
    w = list(weights)
    out = []
    expo = [0] * len(w)

    def rec(i, left):
        if i == len(w) - 1:
            if left % w[i] == 0:
                expo[i] = left // w[i]
                out.append(tuple(expo))
            return
        for a in range(left // w[i] + 1):
            expo[i] = a
            rec(i + 1, left - a * w[i])

    if degree >= 0:
        rec(0, degree)
    return sorted(out)


# ---------------------------------------------------------------------------
# polytopes <-> varieties

def variety_from_polytope(delta2: Polytope, allow_noncanonical=False) -> ToricVariety:
    """Toric variety whose anticanonical polytope is ``delta2``.

    The fan is the face fan of ``polar(delta2)`` and the rays are its
    vertices.  The polar must be a canonical lattice polytope, otherwise
    the ambient would not have canonical singularities and the input is
    rejected; pass ``allow_noncanonical=True`` to build the fan anyway for
    exploratory use.
    """
    q = polar(delta2)
    flags = q.classify()
    if not flags.is_canonical:
        if not allow_noncanonical:
            raise ToricError(
                f"polar of the given polytope is not canonical: {flags.witnesses}")
        rays = [_primitive_direction(v) for v in q.vertices]
        return _make_variety(rays)
    return _make_variety(q.vertices, fan_polytope=q)


def _primitive_direction(v):
    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    return primitive_vector([int(c * den) for c in v])


def anticanonical_polytope(x: ToricVariety) -> Polytope:
    """The polytope ``{u : <u, n_i> >= -1 for all rays}``.

    Bounded exactly when the rays positively span, which for a fan polytope
    means the origin is interior to it.
    """
    if not x.fan_polytope.has_origin_interior():
        raise ToricError("rays do not positively span; polytope unbounded")
    return polar(x.fan_polytope)


def monomial_exponents(x: ToricVariety, u) -> tuple[int, ...]:
    """Exponents ``<u, n_i> + 1`` of the anticanonical monomial at a lattice
    point of the anticanonical polytope."""
    uu = tuple(int(c) for c in u)
    if any(c != uc for c, uc in zip(uu, u)):
        raise ToricError(f"{u} is not a lattice point")
    e = tuple(p + 1 for p in x.pairing(uu))
    if any(c < 0 for c in e):
        raise ToricError(f"{u} lies outside the anticanonical polytope")
    return e


def monomial_point(x: ToricVariety, exponents) -> tuple[int, ...]:
    """Lattice point of the anticanonical polytope whose monomial has the
    given exponents (inverse of :func:`monomial_exponents`)."""
    from .intlinalg import solve_rational

    e = tuple(int(c) for c in exponents)
    if len(e) != x.n_rays or any(c < 0 for c in e):
        raise ToricError(f"invalid exponent vector {exponents}")
    rhs = [c - 1 for c in e]
    sol = solve_rational([list(r) for r in x.rays], rhs)
    if sol is None or any(Fraction(c).denominator != 1 for c in sol):
        raise ToricError(f"{exponents} is not an anticanonical monomial")
    u = tuple(int(c) for c in sol)
    assert monomial_exponents(x, u) == e
    return u


# ---------------------------------------------------------------------------
# finite quotients

def direct_sum(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    """Direct sum in canonical invariant-factor form."""
    factors = list(a.invariant_factors) + list(b.invariant_factors)
    if not factors:
        return AbelianGroup(a.free_rank + b.free_rank)
    diag = [[0] * len(factors) for _ in range(len(factors))]
    for i, f in enumerate(factors):
        diag[i][i] = f
    facs = tuple(d for d in snf_diagonal(diag) if d > 1)
    return AbelianGroup(a.free_rank + b.free_rank, facs)


def finite_quotient(x: ToricVariety, superlattice_gens):
    """Quotient of ``x`` by the finite group ``N'/N``.

    ``superlattice_gens`` are rational vectors that, together with ``N``,
    generate the superlattice ``N'``.  Every ray must stay primitive in
    ``N'`` (otherwise the quotient is not compatible with the Cox ring and
    the offending ray is reported).  Returns ``(x', g)`` with ``x'`` the
    quotient variety written in ``N'`` coordinates and ``g = N'/N``; the
    class group of ``x'`` always equals ``Cl(x) + g`` when ``Cl(x)`` is
    torsion free.
    """
    rank = x.rank
    gens = [tuple(Fraction(c) for c in g) for g in superlattice_gens]
    if any(len(g) != rank for g in gens):
        raise ToricError("superlattice generator of wrong rank")
    den = 1
    for g in gens:
        for c in g:
            den = lcm(den, c.denominator)
    scaled = [[int(c * den) for c in g] for g in gens]
    scaled += [[den * int(i == j) for j in range(rank)] for i in range(rank)]
    basis_scaled = hnf_basis(scaled)
    if len(basis_scaled) != rank:
        raise ToricError("superlattice generators are degenerate")
    # change of basis: rows of C express the old basis in the new one
    binv = invert_rational(basis_scaled)
    c_rows = []
    for i in range(rank):
        row = [den * binv[i][j] for j in range(rank)]
        if any(r.denominator != 1 for r in row):  # pragma: no cover
            raise ToricError("superlattice does not contain N")
        c_rows.append([int(r) for r in row])
    index = abs(det(c_rows))
    group = AbelianGroup(
        free_rank=0,
        invariant_factors=tuple(d for d in snf_diagonal(c_rows) if d > 1),
    )
    assert group.order() == index
    new_rays = []
    for r in x.rays:
        nr = tuple(sum(r[j] * c_rows[j][k] for j in range(rank)) for k in range(rank))
        if primitive_vector(nr) != nr:
            raise ToricError(
                f"ray {r} becomes imprimitive in the superlattice; "
                "quotient construction does not apply")
        new_rays.append(nr)
    xq = _make_variety(new_rays)
    if x.class_group.is_free:
        expected = direct_sum(x.class_group, group)
        assert xq.class_group == expected, (xq.class_group, expected)
    return xq, group


# ---------------------------------------------------------------------------
# torus-invariant strata against a family

@dataclass(frozen=True)
class StratumStatus:
    """Fate of the stratum cut out by the rays in ``index_set`` (0-based)."""

    index_set: frozenset[int]
    status: str  # empty | contained_in_general_member | meets_general_member

    EMPTY = "empty"
    CONTAINED = "contained_in_general_member"
    MEETS = "meets_general_member"


def stratum_status(x: ToricVariety, delta: Polytope, i_set) -> StratumStatus:
    """Status of the stratum ``D_I`` against the family with Newton polytope
    ``delta``.

    ``D_I`` is nonempty exactly when the rays indexed by ``I`` lie in a
    common facet of the fan polytope; a nonempty stratum is contained in
    every member of the family exactly when those rays lie in no common
    facet of ``polar(delta)``.
    """
    idx = frozenset(int(i) for i in i_set)
    if not idx:
        raise ToricError("empty index set")
    if any(i < 0 or i >= x.n_rays for i in idx):
        raise ToricError("ray index out of range")
    theta = anticanonical_polytope(x)
    for v in delta.vertices:
        if not all(isinstance(c, int) for c in v):
            raise ToricError("newton polytope must be a lattice polytope")
        if any(p < -1 for p in x.pairing(v)):
            raise ToricError("newton polytope is not contained in the "
                             "anticanonical polytope")
    rays = [x.rays[i] for i in sorted(idx)]
    # facets of the fan polytope correspond to vertices of the anticanonical
    # polytope; the rays lie in a common facet iff some vertex pairs to -1
    # with all of them
    in_fan_facet = any(
        all(sum(a * b for a, b in zip(v, r)) == -1 for r in rays)
        for v in theta.vertices)
    if not in_fan_facet:
        return StratumStatus(idx, StratumStatus.EMPTY)
    in_delta_facet = any(
        all(sum(a * b for a, b in zip(v, r)) == -1 for r in rays)
        for v in delta.vertices)
    if not in_delta_facet:
        return StratumStatus(idx, StratumStatus.CONTAINED)
    return StratumStatus(idx, StratumStatus.MEETS)
