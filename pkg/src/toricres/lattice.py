"""Exact integer and rational linear algebra.

Vectors are plain tuples of ``int`` (lattice elements) or ``Fraction``
(rational points); matrices are tuples of row tuples.  Nothing in here
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import IntegralityFailure, NonSquare, NoSolution, ZeroVector

IntVector = tuple  # tuple[int, ...]
IntMatrix = tuple  # tuple[IntVector, ...]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def matvec(m, v):
    return tuple(dot(row, v) for row in m)


def transpose(m, ncols=None):
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def clear_denominators(v) -> tuple[int, ...]:
    """Positive multiple of a rational vector with integer entries."""
    d = 1
    for x in v:
        if isinstance(x, Fraction):
            d = lcm(d, x.denominator)
    return tuple(int(x * d) for x in v)


def primitive(v) -> tuple[int, ...]:
    """Divide a nonzero integer (or rational) vector by the gcd of its entries."""
    w = clear_denominators(v)
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("primitive() of the zero vector")
    return tuple(x // g for x in w)


def det(m) -> int | Fraction:
    """Exact determinant (Bareiss elimination for integers, Gauss for rationals)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise NonSquare(f"matrix is not square: {n} rows")
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for row in m for x in row):
        return _det_fraction(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_fraction(m):
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        result *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def det_sign(m) -> int:
    """Sign of the determinant of a square matrix: -1, 0 or +1."""
    d = det(m)
    return (d > 0) - (d < 0)


def row_reduce(m):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m) -> int:
    if not m:
        return 0
    return len(row_reduce(m)[1])


def rational_kernel(m, ncols: int):
    """Basis (over Q) of {x : m x = 0}."""
    rows, pivots = row_reduce(m) if m else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def _xgcd(a, b):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def column_echelon(m, ncols: int):
    """Unimodular column reduction.

    Returns ``(h, u, pivots)`` with ``m * u == h``, ``u`` unimodular and
    ``h`` in column echelon form: column ``k`` has its first nonzero entry,
    positive, in row ``pivots[k]``; columns ``len(pivots):`` are zero.
    """
    h = [list(row) for row in m]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    nrows = len(h)

    def col_combine(p, j, a, b, c, d):
        # (col_p, col_j) <- (a col_p + b col_j, c col_p + d col_j)
        for mat in (h, u):
            for row in mat:
                xp, xj = row[p], row[j]
                row[p] = a * xp + b * xj
                row[j] = c * xp + d * xj

    pivots = []
    k = 0
    for i in range(nrows):
        if k >= ncols:
            break
        for j in range(k + 1, ncols):
            b = h[i][j]
            if b == 0:
                continue
            a = h[i][k]
            g, x, y = _xgcd(a, b)
            col_combine(k, j, x, y, -b // g, a // g)
        if h[i][k] == 0:
            continue
        if h[i][k] < 0:
            for mat in (h, u):
                for row in mat:
                    row[k] = -row[k]
        # reduce earlier pivot columns modulo this pivot
        piv = h[i][k]
        for l in range(k):
            q = h[i][l] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[l] -= q * row[k]
        pivots.append(i)
        k += 1
    return h, u, pivots


def integer_kernel(m, ncols: int) -> list[tuple[int, ...]]:
    """Lattice basis of {x in Z^ncols : m x = 0} (automatically saturated)."""
    m = [clear_denominators(row) for row in m]
    if not m:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    _, u, pivots = column_echelon(m, ncols)
    r = len(pivots)
    return [tuple(u[i][c] for i in range(ncols)) for c in range(r, ncols)]


def hermite_rows(basis, ncols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical row Hermite normal form of a full-row-rank integer matrix."""
    if not basis:
        return ()
    h, _, _ = column_echelon(transpose(basis), len(basis))
    rows = transpose(h)
    return tuple(tuple(r) for r in rows if any(r))


@dataclass(frozen=True)
class QuotientMap:
    """Surjection Z^source_dim -> Z^target_dim given by an integer matrix."""

    matrix: tuple
    source_dim: int

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v) -> tuple:
        return matvec(self.matrix, v)


def quotient_lattice(spanning: Sequence, dim: int) -> QuotientMap:
    """The map N -> N/(N ∩ L) for L the real span of ``spanning``.

    The rows of the returned matrix form a basis of the annihilator of L in
    the dual lattice, put in Hermite normal form so the result is unique.
    """
    ann = integer_kernel([tuple(v) for v in spanning], dim)
    return QuotientMap(hermite_rows(ann, dim), dim)


def solve_rational(a, b, ncols: int):
    """A rational solution of ``a x = b`` or None when inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    if not aug:
        return tuple(Fraction(0) for _ in range(ncols))
    rows, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return tuple(x)


def solve_linear_exact(a, b, ncols: int | None = None, integral: bool = True):
    """Solve ``a x = b`` exactly.

    Raises :class:`NoSolution` when the system is inconsistent over Q.  With
    ``integral=True`` an integer solution is returned, and
    :class:`IntegralityFailure` (carrying a rational solution) is raised when
    none exists.
    """
    a = [tuple(row) for row in a]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    sol = solve_rational(a, b, ncols)
    if sol is None:
        raise NoSolution("linear system is inconsistent")
    if not integral:
        return sol
    if not a:
        return tuple(0 for _ in range(ncols))
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in a for x in row):
        raise ValueError("integral solving requires an integer matrix")
    h, u, pivots = column_echelon(a, ncols)
    y = [0] * ncols
    for k, i in enumerate(pivots):
        rest = b[i] - sum(h[i][l] * y[l] for l in range(k))
        if Fraction(rest) % h[i][k] != 0:
            raise IntegralityFailure(sol)
        y[k] = int(Fraction(rest) / h[i][k])
    if any(dot(h[i], y) != b[i] for i in range(len(a))):
        raise IntegralityFailure(sol)
    return tuple(dot(u[i], y) for i in range(ncols))
