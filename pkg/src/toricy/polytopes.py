"""Exact rational polytopes.

A :class:`Polytope` carries both representations at once: a minimal vertex
list and the complete facet list ``{x : <normal, x> >= offset}`` with
primitive integer normals and rational offsets.  Construction goes through
:func:`hull`, which runs a double-description pass over the homogenized
points, so every facet is certified exactly; no floating point is involved
anywhere.

Lower-dimensional hulls keep their ambient vertex coordinates and record a
lattice-preserving chart onto a full-dimensional polytope, which is what
lattice-point routines use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .intlinalg import kernel_basis, primitive_vector, solve_integer

__all__ = [
    "Polytope",
    "PolytopeError",
    "OriginNotInteriorError",
    "ClassificationFlags",
    "Face",
    "FaceLattice",
    "hull",
    "polar",
    "support_value",
]


class PolytopeError(ValueError):
    pass


class OriginNotInteriorError(PolytopeError):
    """Raised when an operation needs the origin strictly inside the polytope.

    ``separating_facet`` is a facet ``(normal, offset)`` with ``offset >= 0``,
    certifying the failure.
    """

    def __init__(self, separating_facet):
        self.separating_facet = separating_facet
        super().__init__(
            f"origin is not interior; facet {separating_facet[0]} >= "
            f"{separating_facet[1]} excludes it"
        )


def _canon(x) -> int | Fraction:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f


def _canon_point(p) -> tuple:
    return tuple(_canon(x) for x in p)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _clear_denominators(points):
    """(integer points, common scale): point * scale is integral."""
    scale = 1
    for p in points:
        for x in p:
            if isinstance(x, Fraction):
                scale = lcm(scale, x.denominator)
    scaled = [tuple(int(x * scale) for x in p) for p in points]
    return scaled, scale


def _row_rank(rows) -> int:
    """Rank over Q of a small list of integer/rational rows."""
    basis = []
    for row in rows:
        r = [Fraction(x) for x in row]
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [x - f * y for x, y in zip(r, b)]
        p = next((j for j, x in enumerate(r) if x), None)
        if p is not None:
            pv = r[p]
            basis.append((p, [x / pv for x in r]))
    return len(basis)


def _independent_indices(rows, want: int) -> Optional[list[int]]:
    """Indices of `want` linearly independent rows, greedily (first found)."""
    basis = []
    chosen = []
    for idx, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [x - f * y for x, y in zip(r, b)]
        p = next((j for j, x in enumerate(r) if x), None)
        if p is not None:
            pv = r[p]
            basis.append((p, [x / pv for x in r]))
            chosen.append(idx)
            if len(chosen) == want:
                return chosen
    return None


def _det_int(rows) -> int:
    from .intlinalg import det

    return det(rows)


def _adjugate_int(rows):
    from .intlinalg import adjugate

    return adjugate(rows)


# ---------------------------------------------------------------------------
# double description: extreme rays of {y : c . y >= 0}

def _dual_cone_rays(constraints: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    dim = len(constraints[0])
    init = _independent_indices(constraints, dim)
    if init is None:
        raise PolytopeError("constraints do not span; dual cone not pointed")
    # far-out constraints first keeps the intermediate ray count small
    rest = sorted((i for i in range(len(constraints)) if i not in set(init)),
                  key=lambda i: -max(abs(x) for x in constraints[i]))
    order = init + rest
    cmat = [list(constraints[i]) for i in init]
    d = _det_int(cmat)
    adj = _adjugate_int(cmat)
    sign = 1 if d > 0 else -1
    rays = [primitive_vector([sign * adj[i][j] for i in range(dim)]) for j in range(dim)]
    # masks: bit k set <=> ray tight on the k-th processed constraint
    full = (1 << dim) - 1
    masks = [full & ~(1 << j) for j in range(dim)]

    for pos in range(dim, len(order)):
        c = constraints[order[pos]]
        vals = [_dot(c, r) for r in rays]
        if all(v >= 0 for v in vals):
            bit = 1 << pos
            for i, v in enumerate(vals):
                if v == 0:
                    masks[i] |= bit
            continue
        pos_i = [i for i, v in enumerate(vals) if v > 0]
        zero_i = [i for i, v in enumerate(vals) if v == 0]
        neg_i = [i for i, v in enumerate(vals) if v < 0]
        new_rays = []
        for ip in pos_i:
            mp, vp = masks[ip], vals[ip]
            rp = rays[ip]
            for im in neg_i:
                z = mp & masks[im]
                if z.bit_count() < dim - 2:
                    continue
                adjacent = True
                for io in range(len(rays)):
                    if io != ip and io != im and (masks[io] & z) == z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vm = vals[im]
                rm = rays[im]
                r_new = primitive_vector([vp * b - vm * a for a, b in zip(rp, rm)])
                new_rays.append(r_new)
        bit = 1 << pos
        kept_rays = [rays[i] for i in pos_i]
        kept_masks = [masks[i] for i in pos_i]
        for i in zero_i:
            kept_rays.append(rays[i])
            kept_masks.append(masks[i] | bit)
        processed = [constraints[order[k]] for k in range(pos + 1)]
        for r in new_rays:
            m = 0
            for k, ck in enumerate(processed):
                if _dot(ck, r) == 0:
                    m |= 1 << k
            kept_rays.append(r)
            kept_masks.append(m)
        rays, masks = kept_rays, kept_masks
    return rays


# ---------------------------------------------------------------------------
# the Polytope class

@dataclass(frozen=True)
class Face:
    """A face of a polytope, identified by its vertex-index set."""

    dim: int
    vertex_indices: frozenset[int]
    facet_indices: frozenset[int]

    def __le__(self, other: "Face") -> bool:
        return self.vertex_indices <= other.vertex_indices


class Polytope:
    """Bounded rational polytope with exact V- and H-representations.

    Instances are immutable; derived data (lattice points, face lattice,
    polar) is memoized behind idempotent computations, so concurrent readers
    are safe.
    """

    __slots__ = (
        "ambient_dim", "dim", "vertices", "facets",
        "_affine_origin", "_affine_basis", "_chart", "_cache",
    )

    def __init__(self, *, ambient_dim, dim, vertices, facets,
                 affine_origin=None, affine_basis=None, chart=None):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "_affine_origin", affine_origin)
        object.__setattr__(self, "_affine_basis", affine_basis)
        object.__setattr__(self, "_chart", chart)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Polytope is immutable")

    def __eq__(self, other):
        return (isinstance(other, Polytope)
                and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return (f"Polytope(dim={self.dim}, ambient={self.ambient_dim}, "
                f"vertices={len(self.vertices)}, facets={len(self.facets)})")

    # -- basic queries ------------------------------------------------------

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_lattice_polytope(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def contains(self, point) -> bool:
        p = _canon_point(point)
        if self.is_full_dimensional:
            return all(_dot(n, p) >= b for n, b in self.facets)
        if self.dim == 0:
            return p == self.vertices[0]
        t = self._chart_coords(p)
        return t is not None and self._full_dim().contains(t)

    def interior_contains(self, point) -> bool:
        """Strict containment; always False for non-full-dimensional polytopes."""
        if not self.is_full_dimensional:
            return False
        p = _canon_point(point)
        return all(_dot(n, p) > b for n, b in self.facets)

    def has_origin_interior(self) -> bool:
        return self.is_full_dimensional and all(b < 0 for _, b in self.facets)

    def support_value(self, y) -> int | Fraction:
        """min over the polytope of <x, y> (attained at a vertex)."""
        return _canon(min(_dot(v, y) for v in self.vertices))

    # -- lower-dimensional chart -------------------------------------------

    def _full_dim(self) -> "Polytope":
        """Full-dimensional copy in the coordinates of the affine-hull chart."""
        if self.is_full_dimensional:
            return self
        q = self._cache.get("full_dim")
        if q is None:
            pts = [self._chart_coords(v) for v in self.vertices]
            q = hull(pts)
            self._cache["full_dim"] = q
        return q

    def _chart_coords(self, p) -> Optional[tuple]:
        """Coordinates of an ambient point in the affine-hull chart, or None
        when the point is off the affine hull."""
        if self.dim == 0:
            return () if p == self.vertices[0] else None
        basis = self._affine_basis
        origin = self._affine_origin
        diff = [x - o for x, o in zip(p, origin)]
        chart = self._chart  # k x ambient rational matrix, chart @ diff = coords
        t = tuple(_canon(_dot(row, diff)) for row in chart)
        back = [sum(t[i] * basis[i][j] for i in range(len(basis)))
                for j in range(self.ambient_dim)]
        if any(_canon(b) != d for b, d in zip(back, diff)):
            return None
        return t

    def _from_chart(self, t) -> tuple:
        origin = self._affine_origin
        basis = self._affine_basis
        return tuple(_canon(origin[j] + sum(t[i] * basis[i][j] for i in range(len(basis))))
                     for j in range(self.ambient_dim))

    # -- lattice points -----------------------------------------------------

    def lattice_points(self) -> list[tuple[int, ...]]:
        """All integer points of the polytope, sorted lexicographically."""
        pts = self._cache.get("lattice_points")
        if pts is None:
            pts = self._compute_lattice_points(strict=False)
            self._cache["lattice_points"] = pts
        return list(pts)

    def interior_lattice_points(self) -> list[tuple[int, ...]]:
        """Integer points strictly inside every facet (empty when the
        polytope is not full-dimensional)."""
        pts = self._cache.get("interior_points")
        if pts is None:
            if not self.is_full_dimensional:
                pts = []
            else:
                pts = self._compute_lattice_points(strict=True)
            self._cache["interior_points"] = pts
        return list(pts)

    def relative_interior_lattice_points(self) -> list[tuple[int, ...]]:
        if self.is_full_dimensional:
            return self.interior_lattice_points()
        if self.dim == 0:
            v = self.vertices[0]
            return [v] if all(isinstance(x, int) for x in v) else []
        out = []
        for t in self._lattice_points_lower(strict=True):
            out.append(t)
        return sorted(out)

    def _compute_lattice_points(self, strict: bool) -> list[tuple[int, ...]]:
        if self.dim == 0:
            v = self.vertices[0]
            ok = all(isinstance(x, int) for x in v)
            return [v] if ok and not strict else ([v] if ok else [])
        if not self.is_full_dimensional:
            if strict:
                return []
            return self._lattice_points_lower(strict=False)
        ineqs = _integral_inequalities(self.facets, strict=strict)
        box = _coordinate_box(self.vertices, self.ambient_dim)
        pts = _enumerate_integer_points(ineqs, self.ambient_dim, box)
        return sorted(pts)

    def _lattice_points_lower(self, strict: bool) -> list[tuple[int, ...]]:
        # integer points of the affine hull form a coset z0 + (basis lattice)
        basis = self._affine_basis
        origin = self._affine_origin
        if all(isinstance(x, int) for x in origin):
            z0 = list(origin)
        else:
            # solve W x = W origin over Z, where W spans the orthogonal complement
            w = kernel_basis([list(b) for b in basis]).tolist() if basis else []
            w = [row for row in w]
            if not w:
                z0 = None
            else:
                rhs = [sum(Fraction(wi) * Fraction(oi) for wi, oi in zip(row, origin))
                       for row in w]
                z0 = solve_integer(w, rhs)
        if z0 is None:
            return []
        # chart centered at z0: lattice points of the hull <-> integer chart pts
        q = self._full_dim()
        t0 = self._chart_coords(tuple(z0))
        if t0 is None:  # pragma: no cover - z0 lies on the affine hull by construction
            return []
        shifted = [(n, b - _dot(n, t0)) for n, b in q.facets]
        ineqs = _integral_inequalities(shifted, strict=strict)
        shifted_verts = [tuple(x - y for x, y in zip(v, t0)) for v in q.vertices]
        box = _coordinate_box(shifted_verts, q.ambient_dim)
        sols = _enumerate_integer_points(ineqs, q.ambient_dim, box)
        out = []
        for s in sols:
            t = tuple(si + t0i for si, t0i in zip(s, t0))
            p = self._from_chart(t)
            if all(isinstance(x, int) for x in p):
                out.append(p)
        return sorted(out)

    # -- derived objects ----------------------------------------------------

    def polar(self) -> "Polytope":
        p = self._cache.get("polar")
        if p is None:
            p = polar(self)
            self._cache["polar"] = p
        return p

    def classify(self, candidate_lattice_points=None) -> "ClassificationFlags":
        return classify(self, candidate_lattice_points=candidate_lattice_points)

    def face_lattice(self) -> "FaceLattice":
        fl = self._cache.get("face_lattice")
        if fl is None:
            fl = FaceLattice(self)
            self._cache["face_lattice"] = fl
        return fl

    def relint_count(self, face: Face) -> int:
        return relint_count(self, face)


# ---------------------------------------------------------------------------
# construction

def hull(points: Iterable[Sequence]) -> Polytope:
    """Convex hull of finitely many rational points.

    Returns a :class:`Polytope` with minimal vertex list and the complete,
    irredundant facet list.  Lower-dimensional hulls record their affine
    hull together with a lattice-preserving chart.
    """
    pts = sorted({_canon_point(p) for p in points})
    if not pts:
        raise PolytopeError("hull of no points")
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise PolytopeError("points of mixed dimension")
    scaled, scale = _clear_denominators(pts)

    diffs = [tuple(x - y for x, y in zip(p, scaled[0])) for p in scaled[1:]]
    dim = _row_rank(diffs) if diffs else 0

    if dim == ambient:
        return _hull_full_dim(pts, scaled, scale, ambient)

    if dim == 0:
        return Polytope(ambient_dim=ambient, dim=0, vertices=(pts[0],), facets=())

    # affine-hull chart: saturated direction lattice via a double kernel
    w = kernel_basis(diffs)
    basis = kernel_basis(w.tolist()) if w.shape[0] else kernel_basis(
        [[0] * ambient])
    basis_rows = [tuple(int(x) for x in row) for row in basis.tolist()]
    assert len(basis_rows) == dim
    origin = pts[0]
    chart = _chart_matrix(basis_rows)
    proto = Polytope(
        ambient_dim=ambient, dim=dim, vertices=tuple(pts), facets=(),
        affine_origin=origin, affine_basis=tuple(basis_rows), chart=chart,
    )
    projected = [proto._chart_coords(p) for p in pts]
    if any(t is None for t in projected):  # pragma: no cover
        raise PolytopeError("affine projection failed")
    q = hull(projected)
    # true vertices are the preimages of the chart vertices
    verts = tuple(sorted(proto._from_chart(t) for t in q.vertices))
    return Polytope(
        ambient_dim=ambient, dim=dim, vertices=verts, facets=(),
        affine_origin=origin, affine_basis=tuple(basis_rows), chart=chart,
    )


def _chart_matrix(basis_rows):
    """Rational left inverse of basis^T: chart @ (x - origin) gives chart
    coordinates for points on the affine hull."""
    from .intlinalg import invert_rational

    k = len(basis_rows)
    gram = [[_dot(basis_rows[i], basis_rows[j]) for j in range(k)] for i in range(k)]
    ginv = invert_rational(gram)
    amb = len(basis_rows[0])
    return tuple(
        tuple(sum(ginv[i][l] * basis_rows[l][j] for l in range(k)) for j in range(amb))
        for i in range(k)
    )


def _hull_full_dim(pts, scaled, scale, ambient):
    cons = [(1, *p) for p in scaled]
    rays = _dual_cone_rays(cons)
    facets = []
    raw = []
    for ray in rays:
        b, a = ray[0], ray[1:]
        if all(x == 0 for x in a):  # pragma: no cover - impossible for bounded hulls
            raise PolytopeError("unbounded direction in hull")
        g = 0
        for x in a:
            g = gcd(g, x)
        normal = tuple(x // g for x in a)
        offset = _canon(Fraction(-b, g * scale))
        facets.append((normal, offset))
        raw.append((a, b))
    order = sorted(range(len(facets)), key=lambda i: facets[i])
    facets = [facets[i] for i in order]
    raw = [raw[i] for i in order]

    # vertex extraction: points tight on a spanning set of facet normals
    vertices = []
    for p_scaled, p in zip(scaled, pts):
        tight = []
        for a, b in raw:
            s = _dot(a, p_scaled) + b
            if s < 0:  # pragma: no cover - DD guarantees validity
                raise PolytopeError("hull inconsistency: point outside facet")
            if s == 0:
                tight.append(a)
        if len(tight) >= ambient and _row_rank(tight) == ambient:
            vertices.append(p)
    vertices = tuple(sorted(vertices))

    poly = Polytope(ambient_dim=ambient, dim=ambient,
                    vertices=vertices, facets=tuple(facets))
    _validate_full_dim(poly)
    return poly


def _validate_full_dim(p: Polytope):
    nv = len(p.vertices)
    for n, b in p.facets:
        tight = sum(1 for v in p.vertices if _dot(n, v) == b)
        if tight < p.dim:
            raise PolytopeError(
                f"facet {n} >= {b} is tight on {tight} < dim vertices")
    if nv < p.dim + 1:
        raise PolytopeError("too few vertices for a full-dimensional polytope")


# ---------------------------------------------------------------------------
# polar duality

def polar(p: Polytope) -> Polytope:
    """Polar polytope {y : <x, y> >= -1 for all x in p}.

    Requires the origin strictly inside ``p``.  Vertices of the polar are
    the facet normals of ``p`` rescaled to supporting value -1, facets of
    the polar come from the vertices of ``p``, so the involution
    ``polar(polar(p)) == p`` holds exactly.
    """
    if not p.is_full_dimensional:
        raise PolytopeError("polar needs a full-dimensional polytope")
    for n, b in p.facets:
        if b >= 0:
            raise OriginNotInteriorError((n, b))
    verts = []
    for n, b in p.facets:
        verts.append(tuple(_canon(Fraction(x, 1) / -b) for x in n))
    facets = []
    for v in p.vertices:
        den = 1
        for x in v:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        iv = [int(x * den) for x in v]
        g = 0
        for x in iv:
            g = gcd(g, x)
        facets.append((tuple(x // g for x in iv), _canon(Fraction(-den, g))))
    q = Polytope(
        ambient_dim=p.ambient_dim, dim=p.ambient_dim,
        vertices=tuple(sorted(verts)),
        facets=tuple(sorted(facets)),
    )
    _validate_full_dim(q)
    return q


def support_value(p: Polytope, y) -> int | Fraction:
    """min over p of <x, y>, the support function used for toric divisors."""
    return p.support_value(y)


# ---------------------------------------------------------------------------
# lattice point enumeration: slice coordinates from the last to the first,
# bounding each from the facet inequalities with the not-yet-fixed prefix
# relaxed to its exact vertex range.  Bounds are exact at the innermost
# level, so no candidate filtering is needed afterwards.


def _integral_inequalities(facets, strict: bool):
    """Facet list -> integer inequalities (coeffs, rhs) meaning
    coeffs . x >= rhs; `strict` turns each into coeffs . x >= rhs + 1,
    which is equivalent for integer points."""
    out = []
    for n, b in facets:
        f = Fraction(b)
        coeffs = tuple(x * f.denominator for x in n)
        rhs = f.numerator
        if strict:
            rhs += 1
        out.append((coeffs, rhs))
    return out


def _coordinate_box(vertices, d):
    box = []
    for j in range(d):
        vals = [v[j] for v in vertices]
        lo = Fraction(min(vals))
        hi = Fraction(max(vals))
        box.append((int(lo.__ceil__()), int(hi.__floor__())))
    return box


def _enumerate_integer_points(ineqs, d, box):
    if d == 0:
        return [()] if all(b <= 0 for _, b in ineqs) else []
    if any(lo > hi for lo, hi in box):
        return []
    rows = [(tuple(c), b) for c, b in ineqs]
    # prefix_slack[i][t]: largest value sum(c_j * x_j, j < t) can take over
    # the coordinate box; subtracting it relaxes a row to a valid bound
    prefix_slack = []
    for c, _ in rows:
        acc = [0] * (d + 1)
        for t in range(d):
            cj = c[t]
            lo, hi = box[t]
            acc[t + 1] = acc[t] + (cj * hi if cj > 0 else cj * lo)
        prefix_slack.append(acc)

    out = []
    point = [0] * d
    nrows = len(rows)
    residual = [b for _, b in rows]  # b - sum(c_j x_j, j > t) while descending

    def rec(t):
        lo_t, hi_t = box[t]
        lo, hi = lo_t, hi_t
        for i in range(nrows):
            ct = rows[i][0][t]
            r = residual[i] - prefix_slack[i][t]
            if ct > 0:
                v = -((-r) // ct)
                if v > lo:
                    lo = v
            elif ct < 0:
                v = r // ct
                if v < hi:
                    hi = v
            elif r > 0:
                return  # infeasible already without x_t
        if lo > hi:
            return
        if t == 0:
            for x in range(lo, hi + 1):
                point[0] = x
                out.append(tuple(point))
            return
        for x in range(lo, hi + 1):
            point[t] = x
            for i in range(nrows):
                ct = rows[i][0][t]
                if ct:
                    residual[i] -= ct * x
            rec(t - 1)
            for i in range(nrows):
                ct = rows[i][0][t]
                if ct:
                    residual[i] += ct * x
        return

    rec(d - 1)
    return out


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class ClassificationFlags:
    """The five lattice-polytope predicates, with witnesses for failures.

    Implications ``is_reflexive => is_canonical => is_qfano`` hold by
    construction and are asserted.
    """

    is_lattice: bool
    has_origin_interior: bool
    is_canonical: bool
    is_reflexive: bool
    is_qfano: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        assert not self.is_reflexive or self.is_canonical
        assert not self.is_canonical or self.is_qfano


def classify(p: Polytope, candidate_lattice_points=None) -> ClassificationFlags:
    """Classification flags of a polytope.

    ``candidate_lattice_points`` may supply a superset of the lattice points
    of ``p`` (for instance the lattice points of a polytope containing it);
    interior-point tests then filter that list instead of enumerating.
    """
    witnesses: dict = {}
    is_lattice = True
    for v in p.vertices:
        if not all(isinstance(x, int) for x in v):
            is_lattice = False
            witnesses["non_lattice_vertex"] = v
            break

    origin_interior = p.has_origin_interior()
    if not origin_interior:
        if not p.is_full_dimensional:
            witnesses["origin_not_interior"] = "polytope not full-dimensional"
        else:
            bad = next(((n, b) for n, b in p.facets if b >= 0), None)
            witnesses["origin_not_interior"] = bad

    extra_interior = None
    if is_lattice and origin_interior:
        if candidate_lattice_points is not None:
            for pt in candidate_lattice_points:
                if any(x != 0 for x in pt) and p.interior_contains(pt):
                    extra_interior = tuple(pt)
                    break
        else:
            for pt in p.interior_lattice_points():
                if any(x != 0 for x in pt):
                    extra_interior = pt
                    break
    is_canonical = bool(is_lattice and origin_interior and extra_interior is None)
    if extra_interior is not None:
        witnesses["interior_lattice_point"] = extra_interior

    is_qfano = bool(is_lattice and origin_interior)
    if is_qfano:
        for v in p.vertices:
            g = 0
            for x in v:
                g = gcd(g, x)
            if g != 1:
                is_qfano = False
                witnesses["non_primitive_vertex"] = v
                break

    is_reflexive = bool(is_lattice and origin_interior
                        and all(b == -1 for _, b in p.facets))
    if is_lattice and origin_interior and not is_reflexive:
        bad = next(((n, b) for n, b in p.facets if b != -1), None)
        witnesses["non_unit_facet"] = bad

    # canonical => qfano needs no separate scan: a non-primitive vertex m*v
    # forces the interior lattice point v, so is_canonical already failed
    if is_canonical and not is_qfano:  # pragma: no cover
        raise AssertionError("canonical polytope with imprimitive vertex")

    return ClassificationFlags(
        is_lattice=is_lattice,
        has_origin_interior=origin_interior,
        is_canonical=is_canonical,
        is_reflexive=is_reflexive,
        is_qfano=is_qfano,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# face lattice

class FaceLattice:
    """Complete face poset of a full-dimensional polytope.

    Faces are stored per dimension from -1 (empty face) to dim (the whole
    polytope).  For reflexive polytopes, :meth:`dual_face` maps a face to
    the complementary face of the polar, an inclusion-reversing bijection
    with ``dim F + dim F* = dim - 1``.
    """

    def __init__(self, p: Polytope):
        if not p.is_full_dimensional:
            raise PolytopeError("face lattice needs a full-dimensional polytope")
        self.polytope = p
        nv = len(p.vertices)
        tight = []
        for n, b in p.facets:
            tight.append(frozenset(i for i, v in enumerate(p.vertices)
                                   if _dot(n, v) == b))
        seen = {frozenset(range(nv))}
        queue = [frozenset(range(nv))]
        while queue:
            s = queue.pop()
            for t in tight:
                s2 = s & t
                if s2 not in seen:
                    seen.add(s2)
                    queue.append(s2)
        faces: dict[int, list[Face]] = {}
        for s in seen:
            if s:
                pts = [p.vertices[i] for i in s]
                diffs = [tuple(x - y for x, y in zip(q, pts[0])) for q in pts[1:]]
                d = _row_rank(diffs) if diffs else 0
            else:
                d = -1
            fs = frozenset(j for j, t in enumerate(tight) if s <= t and s)
            if not s:
                fs = frozenset(range(len(p.facets)))
            faces.setdefault(d, []).append(Face(d, s, fs))
        for d in faces:
            faces[d].sort(key=lambda f: sorted(f.vertex_indices))
        self._faces = faces
        self._by_vertex_set = {f.vertex_indices: f for fs in faces.values() for f in fs}

    def faces(self, d: int) -> tuple[Face, ...]:
        return tuple(self._faces.get(d, ()))

    def all_faces(self) -> list[Face]:
        return [f for d in sorted(self._faces) for f in self._faces[d]]

    def face_counts(self) -> dict[int, int]:
        return {d: len(fs) for d, fs in sorted(self._faces.items())}

    def contains_face(self, face: Face) -> bool:
        return self._by_vertex_set.get(face.vertex_indices) == face

    def dual_face(self, face: Face) -> Face:
        """Dual face on the polar polytope (reflexive polytopes only)."""
        p = self.polytope
        q = p.polar()
        if not q.is_lattice_polytope:
            raise PolytopeError("dual faces need a reflexive polytope")
        if not self.contains_face(face):
            raise PolytopeError("unknown face")
        # facets of p correspond to vertices of the polar (normal at offset -1)
        idx = {}
        for j, (n, b) in enumerate(p.facets):
            idx[j] = q.vertices.index(n)
        dual_vs = frozenset(idx[j] for j in face.facet_indices)
        dual = q.face_lattice()._by_vertex_set.get(dual_vs)
        if dual is None and face.dim == p.dim:
            dual = q.face_lattice().faces(-1)[0]
        if dual is None:  # pragma: no cover
            raise PolytopeError("dual face not found")
        assert face.dim + dual.dim == p.dim - 1
        return dual


def relint_count(p: Polytope, face: Face) -> int:
    """Number of lattice points in the relative interior of a face."""
    fl = p.face_lattice()
    if not fl.contains_face(face):
        raise PolytopeError("unknown face")
    if face.dim == -1:
        return 0
    verts = [p.vertices[i] for i in sorted(face.vertex_indices)]
    if face.dim == 0:
        return 1 if all(isinstance(x, int) for x in verts[0]) else 0
    sub = hull(verts)
    pts = sub.lattice_points()
    outside = [p.facets[j] for j in range(len(p.facets))
               if j not in face.facet_indices]
    count = 0
    for pt in pts:
        if all(_dot(n, pt) > b for n, b in outside):
            count += 1
    return count
