"""Weight-system survey: enumeration, classification, and the census tables.

For each normalized weight system the classifier computes four flags of the
anticanonical polytope Theta of the weighted projective space and of the
convex hull Theta_bar of its lattice points:

    F: Theta itself is reflexive (the ambient is Gorenstein Fano),
    R: Theta_bar is reflexive,
    C: Theta_bar is canonical,
    Q: the general anticanonical hypersurface is quasismooth.

Records carry a bucket (F / R without F / Q without R / C without R and Q /
other) plus point counts, and every record passes a set of internal
consistency checks (flag chain, quasismooth implies canonical, the
canonical-Newton regularity gate, and the weighted gcd well-formedness
cross-check); a violation raises :class:`SurveyConsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .hypersurfaces import (
    FamilyDatum,
    _regularity_clauses,
    quasismooth_general_wps,
    wellformed_wps_gcd,
)
from .polytopes import hull
from .toric import (
    WeightSystem,
    anticanonical_polytope,
    monomial_exponents,
    wps,
)

__all__ = [
    "SurveyRecord",
    "SurveyConsistencyError",
    "enumerate_normalized_weights",
    "classify_weight_system",
    "survey",
    "table1",
    "table2",
    "dim3_census",
    "TABLE1_ROWS",
    "TABLE2_QUASISMOOTH",
    "TABLE2_NOT_QUASISMOOTH",
]


class SurveyConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class SurveyRecord:
    weights: tuple[int, ...]
    reflexive_ambient: bool        # F
    reflexive_hull: bool           # R
    canonical_hull: bool           # C
    quasismooth: bool              # Q
    bucket: str
    theta_points: int
    hull_vertices: int

    def row(self) -> tuple:
        return (self.weights, self.reflexive_ambient, self.reflexive_hull,
                self.canonical_hull, self.quasismooth, self.bucket,
                self.theta_points, self.hull_vertices)


def enumerate_normalized_weights(dim: int, max_w: int) -> list[tuple[int, ...]]:
    """All normalized weight systems for the given dimension with entries
    bounded by ``max_w``, as non-decreasing tuples in lexicographic order."""
    if dim < 2 or max_w < 1:
        raise ValueError("need dim >= 2 and max_w >= 1")
    n = dim + 1
    out = []
    tup = [0] * n

    def rec(i, lo):
        if i == n:
            out.append(tuple(tup))
            return
        for w in range(lo, max_w + 1):
            tup[i] = w
            rec(i + 1, w)

    rec(0, 1)
    result = []
    for w in out:
        ok = True
        for i in range(n):
            g = 0
            for j in range(n):
                if j != i:
                    g = gcd(g, w[j])
            if g != 1:
                ok = False
                break
        if ok:
            result.append(w)
    return result


def classify_weight_system(weights, *, check: bool = True) -> SurveyRecord:
    """Full classification record of one weight system."""
    w = weights if isinstance(weights, WeightSystem) else WeightSystem(weights)
    x = wps(w)
    theta = anticanonical_polytope(x)
    flag_f = theta.is_lattice_polytope

    pts = theta.lattice_points()
    theta_bar = hull(pts)
    bar_flags = theta_bar.classify(candidate_lattice_points=pts)
    flag_r = bar_flags.is_reflexive
    flag_c = bar_flags.is_canonical

    exps = [monomial_exponents(x, u) for u in pts]
    flag_q = quasismooth_general_wps(w, exps).is_quasismooth

    if flag_f:
        bucket = "F"
    elif flag_r:
        bucket = "R"
    elif flag_q:
        bucket = "Q_not_R"
    elif flag_c:
        bucket = "C_not_R_not_Q"
    else:
        bucket = "other"

    record = SurveyRecord(
        weights=w.weights,
        reflexive_ambient=flag_f,
        reflexive_hull=flag_r,
        canonical_hull=flag_c,
        quasismooth=flag_q,
        bucket=bucket,
        theta_points=len(pts),
        hull_vertices=len(theta_bar.vertices),
    )
    if check:
        _check_record(record, x, theta, theta_bar, pts)
    return record


def _check_record(record, x, theta, theta_bar, pts):
    w = record.weights
    total = sum(w)
    # F <=> all weights divide the anticanonical degree (Gorenstein test)
    gorenstein = all(total % wi == 0 for wi in w)
    if record.reflexive_ambient != gorenstein:
        raise SurveyConsistencyError(f"{w}: F flag vs divisibility test")
    # flag chain F => R => C
    if record.reflexive_ambient and not record.reflexive_hull:
        raise SurveyConsistencyError(f"{w}: F without R")
    if record.reflexive_hull and not record.canonical_hull:
        raise SurveyConsistencyError(f"{w}: R without C")
    # quasismooth general members force a canonical hull
    if record.quasismooth and not record.canonical_hull:
        raise SurveyConsistencyError(f"{w}: Q without C")
    if theta_bar.is_full_dimensional and theta_bar.has_origin_interior():
        fd = FamilyDatum(ambient=x, newton=theta_bar, support=tuple(pts))
        irreducible, well_formed, normal_yes, _offending = _regularity_clauses(fd)
        if record.canonical_hull and not (irreducible and well_formed and normal_yes):
            raise SurveyConsistencyError(
                f"{w}: canonical hull but a regularity clause fails")
        if well_formed != wellformed_wps_gcd(w):
            raise SurveyConsistencyError(
                f"{w}: polytope well-formedness disagrees with the gcd test")


def _classify_tuple(weights) -> SurveyRecord:
    return classify_weight_system(weights)


def survey(dim: int, max_w: int, jobs: int = 1,
           weights: Optional[Iterable] = None) -> list[SurveyRecord]:
    """Classify every normalized weight system; results in enumeration
    order regardless of the number of worker processes."""
    tuples = list(weights) if weights is not None else \
        enumerate_normalized_weights(dim, max_w)
    if jobs > 1:
        import multiprocessing as mp

        with mp.Pool(jobs) as pool:
            return pool.map(_classify_tuple, tuples, chunksize=16)
    return [classify_weight_system(t) for t in tuples]


def table1(max_w: int, jobs: int = 1) -> list[tuple[int, int, int, int, int]]:
    """Cumulative five-dimensional counts per weight bound.

    Each row is ``(bound, #F, #R, #(Q and not R), #(C, not R, not Q))`` over
    all normalized systems with entries up to the bound.
    """
    records = survey(5, max_w, jobs=jobs)
    rows = []
    for b in range(1, max_w + 1):
        f = r = q = c = 0
        for rec in records:
            if max(rec.weights) > b:
                continue
            f += rec.reflexive_ambient
            r += rec.reflexive_hull
            q += rec.quasismooth and not rec.reflexive_hull
            c += (rec.canonical_hull and not rec.reflexive_hull
                  and not rec.quasismooth)
        rows.append((b, f, r, q, c))
    return rows


def table2(jobs: int = 1) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Weight systems with entries up to 4 whose hull is canonical but not
    reflexive, split into quasismooth and non-quasismooth columns."""
    records = survey(5, 4, jobs=jobs)
    yes, no = [], []
    for rec in records:
        if rec.canonical_hull and not rec.reflexive_hull:
            (yes if rec.quasismooth else no).append(rec.weights)
    return yes, no


# ---------------------------------------------------------------------------
# dimension-3 census

def _wps_is_canonical(weights) -> bool:
    """Arithmetic canonicity test for a weighted projective space.

    Interior lattice points of the fan simplex in the slice of coordinate
    sum S correspond to solutions of x_i > (S-1) w_i / d; such a point
    exists iff sum_i (t w_i mod d) > d (n - 2) for t = S - 1, so canonicity
    is a single pass over t."""
    w = tuple(weights)
    d = sum(w)
    n = len(w)
    bound = d * (n - 2)
    for t in range(1, d - 1):
        acc = 0
        for wi in w:
            acc += (t * wi) % d
            if acc > bound:
                return False
    return True


def dim3_census(bound: int = 50, jobs: int = 1) -> dict:
    """Counts of three-dimensional weighted projective spaces with entries
    up to ``bound``: those with canonical singularities, the sub-count whose
    hull is reflexive+canonical+quasismooth, and the Fano sub-count.

    The enumeration bound is reported back since too small a bound silently
    undercounts.
    """
    tuples = enumerate_normalized_weights(3, bound)
    canonical = [w for w in tuples if _wps_is_canonical(w)]
    records = survey(3, bound, jobs=jobs, weights=canonical)
    rcq = sum(1 for rec in records
              if rec.reflexive_hull and rec.canonical_hull and rec.quasismooth)
    fano = sum(1 for rec in records if rec.reflexive_ambient)
    return {
        "bound": bound,
        "canonical_ambient": len(canonical),
        "hull_reflexive_canonical_quasismooth": rcq,
        "fano": fano,
    }


# ---------------------------------------------------------------------------
# published reference rows (frozen for regression checks)

TABLE1_ROWS = {
    2: (3, 4, 1, 0),
    3: (6, 13, 5, 2),
    4: (10, 39, 11, 3),
    5: (15, 83, 30, 30),
    6: (28, 164, 45, 63),
    7: (31, 300, 89, 193),
    8: (44, 524, 133, 358),
    9: (52, 833, 190, 747),
    10: (71, 1278, 269, 1221),
}

TABLE2_QUASISMOOTH = [
    (1, 1, 1, 1, 1, 2),
    (1, 2, 2, 2, 3, 4),
    (1, 1, 1, 1, 2, 3),
    (1, 1, 2, 2, 2, 3),
    (1, 2, 3, 3, 3, 3),
    (1, 1, 1, 3, 3, 4),
    (1, 2, 2, 3, 3, 4),
    (1, 1, 2, 2, 3, 4),
    (1, 1, 3, 3, 3, 4),
    (1, 2, 2, 3, 4, 4),
    (1, 1, 1, 2, 2, 3),
]

TABLE2_NOT_QUASISMOOTH = [
    (1, 1, 2, 3, 3, 3),
    (1, 1, 2, 3, 3, 4),
    (1, 1, 1, 2, 3, 3),
]
