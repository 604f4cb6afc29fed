"""Exact integer and rational linear algebra.

All matrices are dense, rectangular, and carry arbitrary-precision Python
integers (or :class:`fractions.Fraction` entries where noted); nothing here
ever rounds or overflows.  Matrices act on column vectors, so ``m @ x`` is
the linear map and the kernel is ``{x : m @ x = 0}``.  Normal forms are
row-style: ``hnf`` returns ``(h, u)`` with ``u @ m == h`` and ``snf``
returns ``(s, u, v)`` with ``u @ m @ v == s``.

Public functions accept any nested sequence or numpy array and return
numpy arrays with ``dtype=object``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "AbelianGroup",
    "as_int_matrix",
    "as_int_rows",
    "identity",
    "hnf",
    "snf",
    "cokernel",
    "cokernel_map",
    "kernel_basis",
    "solve_rational",
    "solve_rational_any",
    "solve_integer",
    "rank",
    "det",
    "adjugate",
    "invert_unimodular",
    "invert_rational",
    "is_unimodular",
    "primitive_vector",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + Z/k_1 + ... + Z/k_t``.

    ``invariant_factors`` are sorted by divisibility (``k_1 | k_2 | ...``)
    and never contain 1.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        facs = tuple(int(k) for k in self.invariant_factors)
        for k in facs:
            if k < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(facs, facs[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must divide in order")
        object.__setattr__(self, "invariant_factors", facs)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_free(self) -> bool:
        return not self.invariant_factors

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank > 0:
            return None
        n = 1
        for k in self.invariant_factors:
            n *= k
        return n

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{k}" for k in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# conversions

def as_int_rows(m) -> list[list[int]]:
    """Copy ``m`` into a list of lists of Python ints, validating shape."""
    rows = [[int(x) for x in row] for row in m]
    if rows:
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise ValueError("ragged matrix")
        for row, src in zip(rows, m):
            for x, y in zip(row, src):
                if x != y:
                    raise ValueError(f"non-integer entry {y!r}")
    return rows


def as_int_matrix(m) -> np.ndarray:
    """``m`` as a numpy object array of Python ints."""
    rows = as_int_rows(m)
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out


def _wrap(rows: Sequence[Sequence], width: int) -> np.ndarray:
    out = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        out[i, :] = list(row)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def primitive_vector(v) -> tuple[int, ...]:
    """``v`` divided by the gcd of its entries (the zero vector maps to itself)."""
    w = [int(x) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g <= 1:
        return tuple(w)
    return tuple(x // g for x in w)


# ---------------------------------------------------------------------------
# Hermite normal form

def _hnf_core(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [row[:] for row in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    piv = 0
    for col in range(n):
        if piv >= m:
            break
        # clear the column below `piv` by repeated smallest-pivot reduction
        while True:
            best = None
            for i in range(piv, m):
                x = a[i][col]
                if x != 0 and (best is None or abs(x) < abs(a[best][col])):
                    best = i
            if best is None:
                break
            if best != piv:
                a[piv], a[best] = a[best], a[piv]
                u[piv], u[best] = u[best], u[piv]
            p = a[piv][col]
            done = True
            for i in range(piv + 1, m):
                x = a[i][col]
                if x != 0:
                    q = x // p
                    if q:
                        ai, ap = a[i], a[piv]
                        for j in range(n):
                            ai[j] -= q * ap[j]
                        ui, up = u[i], u[piv]
                        for j in range(m):
                            ui[j] -= q * up[j]
                    if a[i][col] != 0:
                        done = False
            if done:
                break
        if piv < m and a[piv][col] != 0:
            if a[piv][col] < 0:
                a[piv] = [-x for x in a[piv]]
                u[piv] = [-x for x in u[piv]]
            p = a[piv][col]
            for i in range(piv):
                q = a[i][col] // p  # floor division puts entry in [0, p)
                if q:
                    ai, ap = a[i], a[piv]
                    for j in range(n):
                        ai[j] -= q * ap[j]
                    ui, up = u[i], u[piv]
                    for j in range(m):
                        ui[j] -= q * up[j]
            piv += 1
    return a, u


def hnf(m) -> tuple[np.ndarray, np.ndarray]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``; pivots are
    positive and entries above each pivot are reduced into ``[0, pivot)``.
    """
    rows = as_int_rows(m)
    width = len(rows[0]) if rows else 0
    h, u = _hnf_core(rows)
    return _wrap(h, width), _wrap(u, len(rows))


def hnf_basis(vectors) -> list[tuple[int, ...]]:
    """Canonical (HNF) basis of the lattice spanned by the given row vectors."""
    rows = as_int_rows(vectors)
    if not rows:
        return []
    h, _ = _hnf_core(rows)
    return [tuple(r) for r in h if any(x != 0 for x in r)]


# ---------------------------------------------------------------------------
# Smith normal form

def _snf_core(rows):
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [row[:] for row in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def row_op(i, j, q):
        # row i -= q * row j
        ai, aj = a[i], a[j]
        for k in range(n):
            ai[k] -= q * aj[k]
        ui, uj = u[i], u[j]
        for k in range(m):
            ui[k] -= q * uj[k]

    def col_op(i, j, q):
        # col i -= q * col j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    t = 0
    limit = min(m, n)
    while t < limit:
        # deterministic pivot: least |entry|, ties by lowest row then column
        pr = pc = -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pr, pc = i, j
        if best is None:
            break
        swap_rows(t, pr)
        swap_cols(t, pc)
        while True:
            # clear column t
            again = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        again = True
            if again:
                continue
            # clear row t
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        again = True
            if not again:
                break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    # enforce the divisibility chain d_1 | d_2 | ... with 2x2 block fixes:
    # diag(x, y) -> diag(gcd(x, y), lcm(x, y))
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            x, y = a[i][i], a[i + 1][i + 1]
            if x == 0 or y % x == 0:
                continue
            changed = True
            g, p, q = _xgcd(x, y)  # p*x + q*y == g
            col_op(i, i + 1, -1)  # col i += col i+1, puts y into a[i+1][i]
            # unimodular row mix on rows (i, i+1):
            #   [p  q] [x 0]   [g  q*y]
            #   [s  t] [y y] = [0  lcm]   with s = -y/g, t = x/g
            s_, t_ = -(y // g), x // g
            ri, rj = a[i], a[i + 1]
            for k in range(n):
                ri[k], rj[k] = p * ri[k] + q * rj[k], s_ * ri[k] + t_ * rj[k]
            ri, rj = u[i], u[i + 1]
            for k in range(m):
                ri[k], rj[k] = p * ri[k] + q * rj[k], s_ * ri[k] + t_ * rj[k]
            # clear the fill-in a[i][i+1] = q*y (divisible by g)
            col_op(i + 1, i, a[i][i + 1] // a[i][i])
            if a[i][i] < 0:
                negate_row(i)
            if a[i + 1][i + 1] < 0:
                negate_row(i + 1)
    return a, u, v


def _xgcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, p, q) with p*x + q*y == g == gcd(x, y) >= 0."""
    a0, a1 = x, y
    p0, p1 = 1, 0
    q0, q1 = 0, 1
    while a1:
        qq = a0 // a1
        a0, a1 = a1, a0 - qq * a1
        p0, p1 = p1, p0 - qq * p1
        q0, q1 = q1, q0 - qq * q1
    if a0 < 0:
        a0, p0, q0 = -a0, -p0, -q0
    return a0, p0, q0


def snf(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form.

    Returns ``(s, u, v)`` with ``u``, ``v`` unimodular, ``u @ m @ v == s``
    diagonal, all diagonal entries nonnegative and ``d_1 | d_2 | ...``.
    """
    rows = as_int_rows(m)
    width = len(rows[0]) if rows else 0
    s, u, v = _snf_core(rows)
    return _wrap(s, width), _wrap(u, len(rows)), _wrap(v, width)


def snf_diagonal(m) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative, divisibility chain)."""
    s, _, _ = _snf_core(as_int_rows(m))
    k = min(len(s), len(s[0]) if s else 0)
    return [s[i][i] for i in range(k)]


# ---------------------------------------------------------------------------
# derived computations

def cokernel(m) -> AbelianGroup:
    """Structure of ``Z^rows / (m @ Z^cols)``, i.e. the cokernel of ``m``."""
    rows = as_int_rows(m)
    nrows = len(rows)
    diag = snf_diagonal(rows) if rows and rows[0] else []
    nonzero = [d for d in diag if d != 0]
    return AbelianGroup(
        free_rank=nrows - len(nonzero),
        invariant_factors=tuple(d for d in nonzero if d > 1),
    )


def cokernel_map(m) -> tuple[AbelianGroup, np.ndarray, np.ndarray]:
    """Cokernel structure together with projection matrices.

    Returns ``(group, torsion_proj, free_proj)`` where ``free_proj`` is a
    ``free_rank x rows`` integer matrix inducing the projection of
    ``Z^rows`` onto the free part of the cokernel, and ``torsion_proj`` is
    a ``t x rows`` matrix whose row ``i`` computes the ``Z/k_i`` coordinate
    (to be read modulo ``k_i``).
    """
    rows = as_int_rows(m)
    nrows = len(rows)
    if not rows or not rows[0]:
        diag = []
        u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    else:
        s, u, _ = _snf_core(rows)
        k = min(len(s), len(s[0]))
        diag = [s[i][i] for i in range(k)]
    torsion_rows = []
    free_rows = []
    for i in range(nrows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            free_rows.append(u[i])
        elif d > 1:
            torsion_rows.append(u[i])
    nonzero = [d for d in diag if d != 0]
    group = AbelianGroup(
        free_rank=nrows - len(nonzero),
        invariant_factors=tuple(d for d in nonzero if d > 1),
    )
    return group, _wrap(torsion_rows, nrows), _wrap(free_rows, nrows)


def kernel_basis(m) -> np.ndarray:
    """Rows form a basis of the saturated kernel lattice ``{x : m @ x = 0}``."""
    rows = as_int_rows(m)
    if not rows:
        raise ValueError("kernel_basis of empty matrix is ambiguous")
    n = len(rows[0])
    s, _, v = _snf_core(rows)
    k = min(len(rows), n)
    zero_cols = [j for j in range(n) if j >= k or s[j][j] == 0]
    basis = [[v[i][j] for i in range(n)] for j in zero_cols]
    return _wrap(basis, n)


def rank(m) -> int:
    rows = as_int_rows(m)
    if not rows or not rows[0]:
        return 0
    return sum(1 for d in snf_diagonal(rows) if d != 0)


def det(m) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [row[:] for row in as_int_rows(m)]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m) -> bool:
    try:
        return abs(det(m)) == 1
    except ValueError:
        return False


def _solve_fraction_system(a_rows, b_col):
    """Gaussian elimination over Q.  Returns (solution, free_dim) where
    solution is None when inconsistent; free_dim counts free variables."""
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b_col[i])] for i, row in enumerate(a_rows)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None, n - len(pivots)
    x = [Fraction(0)] * n
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][n]
    return x, n - len(pivots)


def solve_rational(a, b) -> Optional[np.ndarray]:
    """Exact solution of ``a @ x = b`` when it is unique.

    Returns the solution as a vector of Fractions, or None when the system
    is inconsistent or has a positive-dimensional solution space (callers
    wanting the latter should use :func:`kernel_basis`).
    """
    a_rows = [list(row) for row in a]
    b_col = list(b)
    if len(a_rows) != len(b_col):
        raise ValueError("dimension mismatch")
    x, free_dim = _solve_fraction_system(a_rows, b_col)
    if x is None or free_dim > 0:
        return None
    out = np.empty(len(x), dtype=object)
    out[:] = x
    return out


def solve_rational_any(a, b) -> Optional[list[Fraction]]:
    """Any exact solution of ``a @ x = b`` (free variables set to 0), or
    None when the system is inconsistent."""
    a_rows = [list(row) for row in a]
    b_col = list(b)
    if len(a_rows) != len(b_col):
        raise ValueError("dimension mismatch")
    x, _free = _solve_fraction_system(a_rows, b_col)
    if x is None:
        return None
    return [Fraction(v) for v in x]


def solve_integer(a, b) -> Optional[list[int]]:
    """One integer solution of ``a @ x = b`` (entries of ``b`` may be
    Fractions), or None when no integer solution exists."""
    rows = as_int_rows(a)
    if not rows:
        return []
    n = len(rows[0])
    s, u, v = _snf_core(rows)
    m = len(rows)
    ub = []
    for i in range(m):
        acc = Fraction(0)
        for j, x in enumerate(b):
            if u[i][j]:
                acc += u[i][j] * Fraction(x)
        ub.append(acc)
    y = [0] * n
    k = min(m, n)
    for i in range(m):
        d = s[i][i] if i < k else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            q = ub[i] / d
            if q.denominator != 1:
                return None
            y[i] = int(q)
    return [sum(v[i][j] * y[j] for j in range(n)) for i in range(n)]


def invert_unimodular(m) -> np.ndarray:
    """Exact integer inverse of a unimodular matrix."""
    rows = as_int_rows(m)
    n = len(rows)
    d = det(rows)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    adj = adjugate(rows)
    return _wrap([[x * d for x in row] for row in adj], n)


def adjugate(m) -> list[list[int]]:
    """Adjugate matrix: ``adjugate(m) @ m = det(m) * I``."""
    rows = as_int_rows(m)
    n = len(rows)
    if n == 0:
        return []
    out = []
    for i in range(n):
        out_row = []
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            out_row.append((-1) ** (i + j) * det(minor))
        out_row = out_row
        out.append(out_row)
    # adj = transpose of cofactor matrix
    return [[out[j][i] for j in range(n)] for i in range(n)]


def invert_rational(m) -> list[list[Fraction]]:
    """Exact inverse of a square matrix, as Fractions."""
    rows = [list(row) for row in m]
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]
