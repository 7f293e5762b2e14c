"""Gale duality between point configurations in P^s and P^n, k = n+s+2.

Configurations are k x (s+1) matrices of exact rationals, one point per
row, considered up to projective equivalence (row scaling and a common
right GL(s+1) action).  The dual of A is the canonical reduced-echelon
kernel basis B of A^t, so B^t A = 0 holds on the nose with the identity
as the diagonal matrix of the duality relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .errors import DegenerateError, DimensionError


@dataclass(frozen=True)
class PointConfiguration:
    """k ordered points in P^s, given by homogeneous coordinate rows."""

    s: int
    k: int
    rows: tuple

    def __post_init__(self):
        if self.s < 0:
            raise DimensionError(f"ambient dimension must be >= 0, got {self.s}")
        rows = la.mat(self.rows)
        if len(rows) != self.k or any(len(r) != self.s + 1 for r in rows):
            raise DimensionError(f"expected a {self.k} x {self.s + 1} coordinate matrix")
        if any(all(x == 0 for x in r) for r in rows):
            raise DegenerateError("a point has all-zero homogeneous coordinates")
        if la.rank(rows) != self.s + 1:
            raise DegenerateError("coordinate matrix must have full column rank")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows) -> "PointConfiguration":
        rows = la.mat(rows)
        return cls(len(rows[0]) - 1, len(rows), rows)


def general_position(cfg: PointConfiguration) -> bool:
    """True when every (s+1)-subset of the points spans P^s."""
    for subset in itertools.combinations(range(cfg.k), cfg.s + 1):
        if la.det([cfg.rows[i] for i in subset]) == 0:
            return False
    return True


def gale_dual(cfg: PointConfiguration) -> PointConfiguration:
    """The Gale dual configuration of k points in P^(k-s-2).

    The dual matrix B satisfies B^t A = 0 exactly; its columns are the
    canonical kernel basis of A^t, so the output is deterministic.
    """
    if cfg.k < cfg.s + 2:
        raise DimensionError(f"need k >= s+2 points, got k={cfg.k}, s={cfg.s}")
    if not general_position(cfg):
        raise DegenerateError("configuration is not in general position")
    kernel = la.nullspace_basis(la.transpose(cfg.rows))
    b_rows = la.transpose(kernel)  # k rows, one per point, k-s-1 columns
    if any(all(x == 0 for x in r) for r in b_rows):
        raise DegenerateError("dual configuration has a zero point")
    return PointConfiguration.from_rows(b_rows)


def _normalize(cfg: PointConfiguration) -> tuple:
    """Canonical form: first s+2 points become the standard frame, the
    remaining rows are scaled so their first nonzero entry is 1."""
    s = cfg.s
    if cfg.k < s + 2:
        raise DimensionError("normalization needs at least s+2 points")
    v = [cfg.rows[i] for i in range(s + 1)]
    if la.det(v) == 0:
        raise DegenerateError("first s+1 points do not span P^s")
    m0 = la.invert(v)
    c = la.matvec(la.transpose(m0), cfg.rows[s + 1])
    if any(x == 0 for x in c):
        raise DegenerateError("point s+2 lies on a coordinate hyperplane of the frame")
    # columns of m0 scaled so that row s+2 maps to (1,...,1)
    m = tuple(
        tuple(Fraction(m0[i][j]) / c[j] for j in range(s + 1)) for i in range(s + 1)
    )
    out = []
    for row in cfg.rows:
        w = la.matvec(la.transpose(m), row)
        lead = next(x for x in w if x != 0)
        out.append(tuple(la.frac(Fraction(x) / lead) for x in w))
    return tuple(out)


def projective_equivalent(c1: PointConfiguration, c2: PointConfiguration) -> bool:
    """Equality up to row scaling and a common projective transformation,
    markings respected (no permutation of the points)."""
    if (c1.s, c1.k) != (c2.s, c2.k):
        return False
    return _normalize(c1) == _normalize(c2)


def dual_round_trip(cfg: PointConfiguration) -> bool:
    """The Gale dual of the Gale dual is the original configuration."""
    return projective_equivalent(gale_dual(gale_dual(cfg)), cfg)


def duality_certificate(cfg: PointConfiguration, dual: PointConfiguration) -> bool:
    """Exact check of the defining relation B^t A = 0."""
    prod = la.matmul(la.transpose(dual.rows), cfg.rows)
    return all(x == 0 for row in prod for x in row)
