"""Bounded enumeration of special curve classes on Bl_k P^2 and membership
tests for the K-nonpositive part of the nef cone and its two distinguished
subcones.

Classes D with D^2 + D.K = -2 come in families fixed by their square:
numerical cubics (D^2 = 1, orbit of h), conics (0, orbit of h - e_1),
lines (-1, orbit of e_1) and (-m)-classes.  For k <= 9 every integral
solution of the family equations lies in the corresponding orbit; for
k >= 10 enumeration keeps only classes whose orbit membership is
certified by Cremona reduction, which is exactly the set the cone tests
need (the spurious numerical solutions are never classes of irreducible
rational curves and never carry walls).

All bounds are evaluated square-root-free over exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from ._linalg import ceil_frac, floor_frac, frac, sqrt_upper
from .errors import (
    BoundaryUndecidableError,
    BoundError,
    DimensionError,
    DomainError,
    HypothesisError,
    UnboundedError,
)
from .piclattice import LatticeContext, PicClass
from .weylgroup import (
    OrbitFamily,
    apply_word,
    cremona_reduce,
    inverse_word,
    orbit_classify,
)

DEFAULT_SLACK = 2


@dataclass(frozen=True)
class CurveFamilySpec:
    """Targets (D^2, D.(-K)) for one family of numerical rational classes."""

    selfint: int
    antican: int

    def __post_init__(self):
        # numerical rational classes satisfy D^2 + D.K = -2
        if self.selfint - self.antican != -2:
            raise DomainError(
                f"family ({self.selfint}, {self.antican}) violates selfint - antican = -2"
            )

    @property
    def orbit(self) -> OrbitFamily:
        return {
            1: OrbitFamily.CUBIC,
            0: OrbitFamily.CONIC,
            -1: OrbitFamily.LINE,
            -2: OrbitFamily.MINUS_TWO,
        }.get(self.selfint, OrbitFamily.OTHER)


CUBIC_FAMILY = CurveFamilySpec(1, 3)
CONIC_FAMILY = CurveFamilySpec(0, 2)
LINE_FAMILY = CurveFamilySpec(-1, 1)
MINUS_TWO_FAMILY = CurveFamilySpec(-2, 0)


def _surface(cls: PicClass):
    if cls.ctx.n != 2:
        raise DimensionError("operation requires a surface context")


def _enumerate_m(k: int, total: int, total_sq: int, leaf):
    """All integer vectors m of length k with sum(m) = total and
    sum(m^2) = total_sq, high coordinates first; calls leaf(m)."""
    if total_sq < 0:
        return
    m = [0] * k

    def rec(i, s, q):
        if i == k:
            if s == 0 and q == 0:
                leaf(tuple(m))
            return
        r = k - i
        bound = isqrt(q)
        for v in range(bound, -bound - 1, -1):
            q2 = q - v * v
            if q2 < 0:
                continue
            s2 = s - v
            if r == 1:
                if s2 == 0 and q2 == 0:
                    m[i] = v
                    leaf(tuple(m))
                    m[i] = 0
                continue
            # Cauchy-Schwarz feasibility for the remaining slots
            if s2 * s2 > (r - 1) * q2:
                continue
            m[i] = v
            rec(i + 1, s2, q2)
        m[i] = 0

    rec(0, total, total_sq)


def _family_degree_range(k: int, spec: CurveFamilySpec) -> tuple[int, int | None]:
    """Exact bounds on d from (3d - antican)^2 <= k (d^2 - selfint).

    Returns (d_lo, d_hi); d_hi is None when the quadratic gives no upper
    bound (k >= 9).  For k >= 10 the quadratic gives no lower bound
    either; there d >= 0 holds because every class of the cubic, conic
    and line orbits is effective.
    """
    sigma, tau = spec.selfint, spec.antican
    if k <= 8:
        a = 9 - k

        def p(d):
            return a * d * d - 6 * tau * d + tau * tau + k * sigma

        center = round(Fraction(3 * tau, a))
        seeds = [center + off for off in (-1, 0, 1)]
        if all(p(d) > 0 for d in seeds):
            return 1, 0  # empty range
        d0 = min(d for d in seeds if p(d) <= 0)
        lo = d0
        while p(lo - 1) <= 0:
            lo -= 1
        hi = d0
        while p(hi + 1) <= 0:
            hi += 1
        return lo, hi
    if k == 9:
        if tau <= 0:
            raise UnboundedError(
                "family with nonpositive anticanonical degree has no finite bound for k >= 9"
            )
        return ceil_frac(Fraction(tau * tau + 9 * sigma, 6 * tau)), None
    if sigma < -1:
        raise UnboundedError(
            "threshold enumeration of (-m)-classes is only bounded for k <= 8"
        )
    return 0, None


def enumerate_family_below(
    L: PicClass,
    spec: CurveFamilySpec,
    threshold,
    *,
    inclusive: bool = False,
    slack: int = DEFAULT_SLACK,
) -> list[PicClass]:
    """All classes D of the family with D.L below the threshold.

    Completeness comes from comparing squares of both sides of the
    Cauchy-Schwarz estimate d*x - sqrt((d^2 - D^2)(x^2 - L^2)) <= D.L,
    which caps d, together with the family equations capping each m_i.
    Requires L^2 > 0 and L.h > 0.  For k >= 10 only orbit-certified
    classes are returned (see the module docstring).
    """
    _surface(L)
    ctx = L.ctx
    k = ctx.k
    x = L.deg
    lsq = L.square
    if lsq <= 0:
        raise UnboundedError("enumeration bound requires L^2 > 0")
    if x <= 0:
        raise UnboundedError("enumeration bound requires positive H-degree")
    t = Fraction(threshold)
    sigma, tau = spec.selfint, spec.antican
    ys_sq = frac(x * x - lsq)  # sum of y_i^2

    def possible(d: int) -> bool:
        if d * d - sigma < 0:
            return False
        lhs = d * x - t
        if lhs <= 0:
            return True
        rhs = (d * d - sigma) * ys_sq
        return lhs * lhs <= rhs if inclusive else lhs * lhs < rhs

    d_lo, d_hi = _family_degree_range(k, spec)
    # hard cap on d from the threshold inequality
    rad = ys_sq * (t * t - sigma * lsq)
    cap = floor_frac(Fraction(x * t + (sqrt_upper(rad) if rad >= 0 else 0), lsq)) + 1
    cap = max(cap, floor_frac(Fraction(t, x)) + 1, d_lo) + slack
    if d_hi is not None:
        cap = min(cap, d_hi)

    out: list[PicClass] = []
    # integer scaling: signs and comparisons are invariant
    scale = Fraction(t).denominator
    for value in L.coeffs:
        den = Fraction(value).denominator
        scale = scale * den // gcd(scale, den)
    ix = int(x * scale)
    iys = tuple(int(y * scale) for y in L.coeffs[1:])
    it = t * scale  # integral by construction
    for d in range(d_lo, cap + 1):
        if not possible(d):
            continue

        def leaf(m, d=d):
            dl = d * ix - sum(a * b for a, b in zip(m, iys))
            if dl < it or (inclusive and dl == it):
                cand = PicClass(ctx, (d,) + m)
                if k >= 10 and orbit_classify(cand) != spec.orbit:
                    return
                out.append(cand)

        _enumerate_m(k, 3 * d - tau, d * d - sigma, leaf)
    return sorted(out, key=lambda c: c.key())


def family_classes_up_to_degree(
    ctx: LatticeContext, spec: CurveFamilySpec, dmax: int
) -> list[PicClass]:
    """All effective-orbit family classes with 0 <= d <= dmax."""
    if ctx.n != 2:
        raise DimensionError("family enumeration requires a surface context")
    out = []
    for d in range(0, dmax + 1):

        def leaf(m, d=d):
            cand = PicClass(ctx, (d,) + m)
            if ctx.k >= 10 and orbit_classify(cand) != spec.orbit:
                return
            out.append(cand)

        _enumerate_m(ctx.k, 3 * d - spec.antican, d * d - spec.selfint, leaf)
    return sorted(out, key=lambda c: c.key())


def _primitive_part(L: PicClass) -> PicClass:
    lcm = 1
    for c in L.coeffs:
        den = Fraction(c).denominator
        lcm = lcm * den // gcd(lcm, den)
    return (lcm * L).primitive()


def _is_anticanonical_orbit(L0: PicClass) -> bool:
    """Primitive L0 with L0^2 = 0, L0.K = 0: membership in the orbit of
    3h - e_1 - ... - e_9 (k >= 9), certified by reduction."""
    if L0.ctx.k < 9:
        return False
    c = cremona_reduce(L0).canonical
    m = c.coeffs[1:]
    return c.deg == 3 and all(x == 1 for x in m[:9]) and all(x == 0 for x in m[9:])


def is_nef_kneg(L: PicClass) -> bool:
    """Nef test in the K <= 0 half-space: K.L <= 0 and e.L >= 0 for every
    class e in the orbit of e_1."""
    _surface(L)
    if L.is_zero():
        return True
    kl = L.dot(L.ctx.canonical_class())
    if kl > 0:
        raise DomainError("nef test is only defined in the K <= 0 half-space")
    return _nef_cached(L, kl)


@lru_cache(maxsize=65536)
def _nef_cached(L: PicClass, kl) -> bool:
    sq = L.square
    if sq < 0 or L.deg <= 0:
        return False
    if sq == 0:
        L0 = _primitive_part(L)
        if kl < 0:
            return orbit_classify(L0) == OrbitFamily.CONIC
        return _is_anticanonical_orbit(L0)
    return not enumerate_family_below(L, LINE_FAMILY, 0)


def is_ample_kneg(L: PicClass) -> bool:
    """Ample test for K.L < 0: L^2 > 0 and e.L > 0 for every e in the
    orbit of e_1 (the k = 9 anticanonical exception has K.L = 0)."""
    _surface(L)
    if L.dot(L.ctx.canonical_class()) >= 0:
        raise DomainError("ample test is only defined for K.L < 0")
    return _ample_cached(L)


@lru_cache(maxsize=65536)
def _ample_cached(L: PicClass) -> bool:
    if L.square <= 0 or L.deg <= 0:
        return False
    return not enumerate_family_below(L, LINE_FAMILY, 0, inclusive=True)


class NefBoundaryKind(Enum):
    AMPLE = "ample"
    PULLBACK_OF_AMPLE = "pullback_of_ample"
    CONIC_FIBER = "conic_fiber"
    ANTICANONICAL_RAY = "anticanonical_ray"


@dataclass(frozen=True)
class NefBoundaryResult:
    kind: NefBoundaryKind
    contractions: tuple[PicClass, ...] = ()


def classify_nef_boundary(L: PicClass) -> NefBoundaryResult:
    """Place a primitive integral nef class with K.L <= 0 on the boundary
    stratification: ample, pullback of an ample class under a blowdown
    (with the contracted (-1)-classes listed), a conic fibration class, or
    the anticanonical-type ray with square zero."""
    _surface(L)
    if not (L.is_integral() and L == L.primitive()):
        raise DomainError("boundary classification requires a primitive integral class")
    if not is_nef_kneg(L):
        raise DomainError("class is not nef in the K <= 0 region")
    if L.square > 0:
        zeros = enumerate_family_below(L, LINE_FAMILY, 0, inclusive=True)
        if not zeros:
            return NefBoundaryResult(NefBoundaryKind.AMPLE)
        return NefBoundaryResult(NefBoundaryKind.PULLBACK_OF_AMPLE, tuple(zeros))
    if L.dot(L.ctx.canonical_class()) < 0:
        return NefBoundaryResult(NefBoundaryKind.CONIC_FIBER)
    return NefBoundaryResult(NefBoundaryKind.ANTICANONICAL_RAY)


def _lines_pairing_below(D: PicClass, bound, *, inclusive, slack=DEFAULT_SLACK):
    """Line-orbit classes e with e.D below the bound.

    Uses the complete threshold enumeration when D can serve as a
    polarization; otherwise a degree-capped search (components of an
    effective class have degree at most deg D, which is all the
    decomposition loops need)."""
    if D.square > 0 and D.deg > 0:
        return enumerate_family_below(D, LINE_FAMILY, bound, inclusive=inclusive, slack=slack)
    dmax = max(int(D.deg), 0) + slack
    cands = family_classes_up_to_degree(D.ctx, LINE_FAMILY, dmax)
    if inclusive:
        return [e for e in cands if e.dot(D) <= bound]
    return [e for e in cands if e.dot(D) < bound]


@dataclass(frozen=True)
class EffectiveDecomposition:
    anticanonical: int
    lines: tuple[PicClass, ...]

    def total(self, ctx: LatticeContext) -> PicClass:
        out = self.anticanonical * -ctx.canonical_class()
        for e in self.lines:
            out = out + e
        return out


def _word_moving_line_to_last(e: PicClass) -> tuple[int, ...]:
    """A word w with apply_word(w, e) = e_k, for e in the line orbit."""
    ctx = e.ctx
    red = cremona_reduce(e)
    c = red.canonical
    word = list(red.word)
    if c == ctx.exceptional(ctx.k):
        return tuple(word)
    conic_pair = PicClass(ctx, (1, 1, 1) + (0,) * (ctx.k - 2))
    if c == conic_pair:
        word.append(0)  # h - e_1 - e_2 reflects to e_3
        word.extend(range(3, ctx.k))
        return tuple(word)
    raise DomainError(f"{e} is not in the line orbit")


def _decompose_lines_nonneg(D: PicClass, budget: int) -> EffectiveDecomposition:
    """Decompose D with e.D >= 0 for every line class as a*(-K) plus a sum
    of (-1)-classes, by contracting zero-pairing classes and peeling -K."""
    ctx = D.ctx
    if ctx.k == 2:
        d, m1, m2 = D.deg, D.coeffs[1], D.coeffs[2]
        if d < 0 or m1 > d or m2 > d or m1 < 0 or m2 < 0 or m1 + m2 > d:
            raise BoundError("class pairs negatively with a line on two points", D)
        lines = [PicClass(ctx, (1, 1, 1))] * d
        lines += [ctx.exceptional(1)] * (d - m1) + [ctx.exceptional(2)] * (d - m2)
        return EffectiveDecomposition(0, tuple(lines))
    antican = 0
    cur = D
    for _ in range(budget):
        if cur.is_zero():
            return EffectiveDecomposition(antican, ())
        hits = _lines_pairing_below(cur, 0, inclusive=True)
        negs = [e for e in hits if e.dot(cur) < 0]
        if negs:
            raise HypothesisError("a line class pairs negatively", negs[0])
        if hits:
            word = _word_moving_line_to_last(hits[0])
            moved = apply_word(word, cur)
            sub = _decompose_lines_nonneg(
                PicClass(LatticeContext(2, ctx.k - 1), moved.coeffs[:-1]), budget
            )
            back = inverse_word(word)
            lines = [
                apply_word(back, PicClass(ctx, p.coeffs + (0,))) for p in sub.lines
            ]
            # pullback of -K from one blowdown gains a copy of the contracted class
            ek = apply_word(back, ctx.exceptional(ctx.k))
            lines += [ek] * sub.anticanonical
            return EffectiveDecomposition(antican + sub.anticanonical, tuple(lines))
        antican += 1
        cur = cur + ctx.canonical_class()
    raise BoundError("decomposition budget exhausted", EffectiveDecomposition(antican, ()))


def decompose_effective(D: PicClass, budget: int = 400) -> EffectiveDecomposition:
    """Write an effective integral class as a*(-K) + sum of (-1)-classes.

    Effectivity of the input is the caller's responsibility; on bad input
    the search raises BoundError.  Needs k >= 2.
    """
    _surface(D)
    ctx = D.ctx
    if ctx.k < 2:
        raise DimensionError("decomposition requires at least 2 points")
    if not D.is_integral():
        raise DomainError("decomposition requires an integral class")
    peeled: list[PicClass] = []
    cur = D
    for _ in range(budget):
        negs = _lines_pairing_below(cur, 0, inclusive=False)
        if not negs:
            break
        peeled.append(negs[0])
        cur = cur - negs[0]
    else:
        raise BoundError("decomposition budget exhausted", EffectiveDecomposition(0, tuple(peeled)))
    rest = _decompose_lines_nonneg(cur, budget)
    return EffectiveDecomposition(rest.anticanonical, tuple(peeled) + rest.lines)


@dataclass(frozen=True)
class ConicDualDecomposition:
    anticanonical: int
    lines: tuple[PicClass, ...]
    cubic_normals: tuple[PicClass, ...]  # classes of the form 2B + K, B in the cubic orbit

    def total(self, ctx: LatticeContext) -> PicClass:
        out = self.anticanonical * -ctx.canonical_class()
        for e in self.lines:
            out = out + e
        for c in self.cubic_normals:
            out = out + c
        return out


def decompose_conic_dual(
    D: PicClass, budget: int = 400, slack: int = DEFAULT_SLACK
) -> ConicDualDecomposition:
    """Decompose an integral class pairing nonnegatively with every conic
    class as a*(-K) + sum of (-1)-classes + sum of classes 2B + K with B
    in the cubic orbit.

    The hypothesis is checked against the bounded conic enumeration; a
    HypothesisError carries a violating conic if one is found.
    """
    _surface(D)
    ctx = D.ctx
    if ctx.k < 2:
        raise DimensionError("decomposition requires at least 2 points")
    if not D.is_integral():
        raise DomainError("decomposition requires an integral class")
    if D.square > 0 and D.deg > 0:
        bad = enumerate_family_below(D, CONIC_FAMILY, 0, slack=slack)
    else:
        cands = family_classes_up_to_degree(ctx, CONIC_FAMILY, max(int(D.deg), 0) + slack)
        bad = [c for c in cands if c.dot(D) < 0]
    if bad:
        raise HypothesisError("a conic class pairs negatively", bad[0])

    if ctx.k == 2:
        d, m1, m2 = D.deg, D.coeffs[1], D.coeffs[2]
        if m1 > d or m2 > d:
            raise HypothesisError("a conic class pairs negatively", None)
        lines = [ctx.exceptional(1)] * (d - m1) + [ctx.exceptional(2)] * (d - m2)
        if d >= 0:
            lines = [PicClass(ctx, (1, 1, 1))] * d + lines
            return ConicDualDecomposition(0, tuple(lines), ())
        cubic = (PicClass(ctx, (-1, -1, -1)),) * (-d)  # copies of 2h + K
        return ConicDualDecomposition(0, tuple(lines), cubic)

    negs = _lines_pairing_below(D, 0, inclusive=False, slack=slack)
    if negs:
        word = _word_moving_line_to_last(negs[0])
        moved = apply_word(word, D)
        mult = moved.coeffs[-1]
        if mult >= 0:
            raise BoundError("line search produced an inconsistent witness", D)
        sub = decompose_conic_dual(
            PicClass(LatticeContext(2, ctx.k - 1), moved.coeffs[:-1]), budget, slack
        )
        back = inverse_word(word)

        def lift(p):
            return apply_word(back, PicClass(ctx, p.coeffs + (0,)))

        ek = apply_word(back, ctx.exceptional(ctx.k))
        # pulled-back -K gains one copy of the contracted class, each
        # pulled-back 2B + K loses one; the balance stays nonnegative
        # exactly because D pairs nonnegatively with conics through the
        # contracted point
        extra = sub.anticanonical - mult - len(sub.cubic_normals)
        if extra < 0:
            raise BoundError("conic hypothesis fails beyond the searched bound", D)
        lines = [lift(p) for p in sub.lines] + [ek] * extra
        cubic = tuple(lift(p) + ek for p in sub.cubic_normals)
        return ConicDualDecomposition(sub.anticanonical, tuple(lines), cubic)

    rest = _decompose_lines_nonneg(D, budget)
    return ConicDualDecomposition(rest.anticanonical, rest.lines, ())


class Region(Enum):
    """Subcones of the nef cone in the K <= 0 half-space, named by the
    cone of the blown-up projective space they map onto under the
    determinant map: "pi" maps onto the movable cone, "e" onto the
    effective cone."""

    NEF = "nef"
    MOVABLE = "pi"
    EFFECTIVE = "e"


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    region: Region
    violated_constraint: str | None = None
    certificate: PicClass | None = None

    def __bool__(self):
        return self.member


def cone_membership(
    L: PicClass, region: Region, *, slack: int = DEFAULT_SLACK
) -> MembershipResult:
    """Membership of a class with L^2 > 0 in the requested cone, with a
    violating class as certificate on failure.

    nef: K.L <= 0 and e.L >= 0 on the line orbit; "e" additionally needs
    B.L >= (-K.L)/2 on the cubic orbit; "pi" additionally needs
    C.L >= (-K.L)/2 on the conic orbit.
    """
    _surface(L)
    if L.square <= 0:
        raise BoundaryUndecidableError(
            "membership on the L^2 = 0 boundary can involve infinitely many constraints"
        )
    if L.deg <= 0:
        raise DomainError("membership test requires positive H-degree")
    kl = L.dot(L.ctx.canonical_class())
    if kl > 0:
        return MembershipResult(False, region, "K<=0", L.ctx.canonical_class())
    viol = enumerate_family_below(L, LINE_FAMILY, 0, slack=slack)
    if viol:
        return MembershipResult(False, region, "e>=0", viol[0])
    if region is Region.NEF:
        return MembershipResult(True, region)
    half = Fraction(-kl, 2)
    viol = enumerate_family_below(L, CUBIC_FAMILY, half, slack=slack)
    if viol:
        return MembershipResult(False, region, "2B+K>=0", viol[0])
    if region is Region.EFFECTIVE:
        return MembershipResult(True, region)
    viol = enumerate_family_below(L, CONIC_FAMILY, half, slack=slack)
    if viol:
        return MembershipResult(False, region, "2C+K>=0", viol[0])
    return MembershipResult(True, region)


@dataclass(frozen=True)
class NoetherReport:
    k: int
    degree_bound: int
    counts: tuple[tuple[int, int], ...]  # (selfint, number of classes checked)
    violations: tuple[PicClass, ...]

    @property
    def all_pass(self) -> bool:
        return not self.violations


def noether_check(degree_bound: int, k: int) -> NoetherReport:
    """Exhaustively verify m_1 + m_2 + m_3 > d over all numerical rational
    classes with D^2 in {1, 0, -1, -2}, sorted nonnegative multiplicities
    and 2 <= d <= degree_bound."""
    ctx = LatticeContext(2, k)
    counts = []
    violations = []
    for sigma in (1, 0, -1, -2):
        tau = sigma + 2
        n_classes = 0
        for d in range(2, degree_bound + 1):
            for m in _sorted_nonneg_tuples(k, 3 * d - tau, d * d - sigma):
                n_classes += 1
                if m[0] + m[1] + m[2] <= d:
                    violations.append(PicClass(ctx, (d,) + m))
        counts.append((sigma, n_classes))
    return NoetherReport(k, degree_bound, tuple(counts), tuple(violations))


def _sorted_nonneg_tuples(k: int, total: int, total_sq: int):
    """Weakly decreasing tuples of k nonnegative ints with the given sum
    and sum of squares."""
    if total < 0 or total_sq < 0:
        return
    m = [0] * k

    def rec(i, s, q, cap):
        if i == k:
            if s == 0 and q == 0:
                yield tuple(m)
            return
        r = k - i
        top = min(cap, isqrt(q), s)
        for v in range(top, -1, -1):
            s2, q2 = s - v, q - v * v
            if s2 < 0 or q2 < 0:
                continue
            if s2 > v * (r - 1):
                continue
            if r > 1 and s2 * s2 > (r - 1) * q2:
                continue
            m[i] = v
            yield from rec(i + 1, s2, q2, v)
        m[i] = 0

    yield from rec(0, total, total_sq, total)


@lru_cache(maxsize=65536)
def effectivity_certificate(x: PicClass) -> bool:
    """Sound one-sided effectivity test for an integral surface class:
    True means certainly effective, False means no certificate found.

    Certificates: a Weyl translate with nonnegative h-degree and no
    positive multiplicity (a visible sum of h's and exceptional classes),
    or chi(X) > 0 while K - X has negative h-degree (Riemann-Roch plus
    vanishing of h^2).
    """
    _surface(x)
    if not x.is_integral():
        return False
    if x.is_zero():
        return True
    cands = [x]
    if x.ctx.k >= 3:
        cands.append(cremona_reduce(x).canonical)
    for c in cands:
        if c.deg >= 0 and all(m <= 0 for m in c.coeffs[1:]):
            return True
    kc = x.ctx.canonical_class()
    chi = 1 + Fraction(x.square - x.dot(kc), 2)
    if chi > 0 and (kc - x).deg < 0:
        return True
    return False
