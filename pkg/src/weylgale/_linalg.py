"""Exact rational linear algebra on tuples of Fractions.

Small dense matrices only; every routine is deterministic (fixed pivot
order: leftmost nonzero column, smallest row index).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import MapError


def frac(x) -> int | Fraction:
    """Normalize a number to int when integral, Fraction otherwise."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def vec(entries) -> tuple:
    return tuple(frac(x) for x in entries)


def mat(rows) -> tuple:
    return tuple(vec(r) for r in rows)


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m) -> tuple:
    return tuple(zip(*m))


def matvec(m, v) -> tuple:
    return tuple(frac(sum(a * b for a, b in zip(row, v))) for row in m)


def matmul(a, b) -> tuple:
    bt = transpose(b)
    return tuple(tuple(frac(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a)


def rref(m) -> tuple[tuple, tuple[int, ...]]:
    """Reduced row echelon form with the pivot list, exact."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [frac(Fraction(x) / pv) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [frac(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace_basis(m) -> list[tuple]:
    """Canonical kernel basis of m (as column vectors), from the RREF.

    One basis vector per free column, ordered by free column index; the
    free coordinate is set to 1.
    """
    r, pivots = rref(m)
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = frac(-r[i][f])
        basis.append(tuple(v))
    return basis


def solve_exact(a, b):
    """Solve a x = b exactly; None when inconsistent.

    Requires the columns of a to be linearly independent, so a solution,
    when it exists, is unique.
    """
    nrows = len(a)
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    ncols = len(a[0])
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, p in enumerate(pivots):
        x[p] = r[i][ncols]
    # independence assumed; verify to catch misuse
    if tuple(matvec(a, x)) != tuple(frac(v) for v in b):
        return None
    return tuple(x)


def det(m):
    rows = [list(r) for r in m]
    n = len(rows)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        pv = rows[c][c]
        out *= pv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = Fraction(rows[i][c]) / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return frac(sign * out)


def invert(m) -> tuple:
    n = len(m)
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        raise MapError("matrix is singular")
    return tuple(tuple(row[n:]) for row in r)


def sqrt_upper(q: Fraction | int) -> Fraction:
    """An exact rational upper bound for sqrt(q), q >= 0."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    num, den = q.numerator, q.denominator
    return Fraction(isqrt(num * den) + 1, den)


def floor_frac(q) -> int:
    q = Fraction(q)
    return q.numerator // q.denominator


def ceil_frac(q) -> int:
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)
