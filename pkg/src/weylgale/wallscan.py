"""K-negative stability walls and chambers in the ample cone of Bl_k P^2.

A wall is the hyperplane orthogonal to 2D + K for a numerical rational
class D (D.(D+K) = -2, -(k-4) <= D^2 <= 1) that carries an ample
polarization L with K.L < 0.  D and -K - D cut the same hyperplane, so a
wall stores the lexicographically smaller of the two as its canonical
defining class.  Enumerations parametrize candidates as
D = (1-d) h + sum m_i e_i with d >= 0, where the family equation becomes
d^2 + d = sum m_i (m_i + 1) and the bound
d^2 + d <= (k sum y_i^2 - x^2) / (4 L^2) caps d for any polarization
L = x h - sum y_i e_i with L^2 > 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, isqrt

from ._linalg import floor_frac, sqrt_upper
from .conegeom import (
    DEFAULT_SLACK,
    LINE_FAMILY,
    Region,
    cone_membership,
    effectivity_certificate,
    enumerate_family_below,
    is_ample_kneg,
    is_nef_kneg,
)
from .errors import (
    DimensionError,
    DomainError,
    InfiniteWallsError,
    OnWallError,
    RegionError,
)
from .piclattice import LatticeContext, PicClass, symmetric_polarization
from .weylgroup import OrbitFamily, apply_word, cremona_reduce, inverse_word, orbit_classify


def _wall_surface(ctx: LatticeContext):
    if ctx.n != 2:
        raise DimensionError("walls live on surface contexts")
    if ctx.k < 6:
        raise DimensionError("wall geometry requires k >= 6 points")


def geometric_dimension(ctx: LatticeContext) -> int:
    """The dimension n = k - 4 of the blowup of P^n governed by walls on
    Bl_k P^2."""
    return ctx.k - 4


def is_numerical_rational(d: PicClass) -> bool:
    if d.ctx.n != 2 or not d.is_integral():
        return False
    k = d.ctx.canonical_class()
    if d.dot(d + k) != -2:
        return False
    return -(d.ctx.k - 4) <= d.square <= 1


@dataclass(frozen=True)
class Wall:
    """A K-negative stability wall, stored by its canonical defining class."""

    cls: PicClass

    def __post_init__(self):
        _wall_surface(self.cls.ctx)
        if not is_numerical_rational(self.cls):
            raise DomainError(f"{self.cls} is not a numerical rational class")
        other = -self.cls.ctx.canonical_class() - self.cls
        if other.key() < self.cls.key():
            raise DomainError("wall class is not the canonical representative")

    @classmethod
    def from_class(cls, d: PicClass) -> "Wall":
        other = -d.ctx.canonical_class() - d
        return cls(d if d.key() <= other.key() else other)

    @property
    def normal(self) -> PicClass:
        return 2 * self.cls + self.cls.ctx.canonical_class()

    @property
    def square(self):
        return self.cls.square

    def side(self, L: PicClass) -> int:
        v = self.normal.dot(L)
        return 0 if v == 0 else (1 if v > 0 else -1)

    def key(self):
        return self.cls.key()

    def __str__(self):
        return f"wall(2({self.cls}) + K)"


def is_wall_witness(d: PicClass, L: PicClass) -> bool:
    """True when L certifies that d cuts a K-negative wall: d is a
    numerical rational class, (2d+K).L = 0, K.L < 0 and L is ample."""
    _wall_surface(d.ctx)
    if not is_numerical_rational(d):
        return False
    k = d.ctx.canonical_class()
    if (2 * d + k).dot(L) != 0 or k.dot(L) >= 0:
        return False
    return is_ample_kneg(L)


def project_to_hyperplane(L: PicClass, normal: PicClass) -> PicClass:
    """Orthogonal projection of L into the hyperplane normal^perp; needs
    normal^2 != 0 (wall normals have square 1 - k < 0)."""
    nsq = normal.square
    if nsq == 0:
        raise DomainError("cannot project onto a hyperplane with isotropic normal")
    return L - Fraction(normal.dot(L), nsq) * normal


def _reference_ample(ctx: LatticeContext) -> PicClass:
    a = Fraction(max(Fraction(ctx.k, 3) - 3, 0)) + 1
    return symmetric_polarization(ctx, a)


def find_wall_witness(d: PicClass, search_bound: int = 12, seeds=()) -> PicClass | None:
    """Search for an ample polarization on the hyperplane (2d+K)^perp with
    K.L < 0; None means none was found within the search bound, which is a
    valid answer (some numerical rational classes carry no wall).

    Cheap soundness screens run first: if d + K, -d, or +-(2d+K) is
    certifiably effective, no witness can exist.
    """
    _wall_surface(d.ctx)
    if not is_numerical_rational(d):
        raise DomainError(f"{d} is not a numerical rational class")
    ctx = d.ctx
    kc = ctx.canonical_class()
    normal = 2 * d + kc
    for blocked in (d + kc, -d, normal, -normal):
        if effectivity_certificate(blocked):
            return None

    candidates: list[PicClass] = []

    def push(L):
        try:
            p = project_to_hyperplane(L, normal)
        except DomainError:
            return
        if p not in candidates:
            candidates.append(p)

    ref = _reference_ample(ctx)
    for seed in seeds:
        push(seed)
        for j in range(1, 5):
            t = Fraction(1, 2**j)
            push((1 - t) * seed + t * ref)
    for q in (1, 2, 3, 5, 7):
        for j in range(1, q * (ctx.k - 3) + 1):
            if len(candidates) > 16 * search_bound:
                break
            push(symmetric_polarization(ctx, Fraction(j, q)))
    for cand in candidates[: 16 * search_bound]:
        if is_wall_witness(d, cand):
            return cand
    # certificate-guided repair: push candidates away from violating classes
    for cand in candidates[: 2 * search_bound]:
        cur = cand
        for _ in range(search_bound):
            if is_wall_witness(d, cur):
                return cur
            if cur.square <= 0 or cur.deg <= 0:
                break
            viol = enumerate_family_below(cur, LINE_FAMILY, 0, inclusive=True)
            if not viol:
                break
            e = viol[0]
            step = None
            for direction in (ref, ctx.hyperplane(), -kc):
                u = project_to_hyperplane(direction, normal)
                if e.dot(u) > 0:
                    step = u
                    break
            if step is None:
                break
            cur = cur + (Fraction(1) - Fraction(e.dot(cur))) / Fraction(e.dot(step)) * step
    return None


def _wall_candidate_search(ctx, dmax, weights, feasible, leaf):
    """Enumerate D = (1-d) h + sum m_i e_i, 0 <= d <= dmax, with
    sum m_i (m_i+1) = d^2 + d, pruning with interval bounds on the exact
    linear functionals (2D+K).L for each L described by weights.

    weights: list of (x, ys) per polarization; the functional value is
    sum (2 m_i + 1) y_i - (2d+1) x, reported to the callbacks scaled by a
    single positive integer (signs, zeros and crossing ratios are scale
    invariant, so callers never need to unscale).  feasible(los, his)
    prunes subtrees, leaf(cls, values) consumes a candidate.
    """
    k = ctx.k
    scale = 1
    for x, ys in weights:
        for value in (x, *ys):
            den = Fraction(value).denominator
            scale = scale * den // gcd(scale, den)
    iweights = [
        (int(x * scale), tuple(int(y * scale) for y in ys)) for x, ys in weights
    ]
    nw = len(iweights)
    for d in range(0, dmax + 1):
        budget = d * d + d
        base = [-(2 * d + 1) * x for x, _ in iweights]
        # per-slot value ranges of (2m+1) y with m in [-1-d, d]
        lo_suffix = [[0] * (k + 1) for _ in iweights]
        hi_suffix = [[0] * (k + 1) for _ in iweights]
        for w, (_, ys) in enumerate(iweights):
            for i in range(k - 1, -1, -1):
                a = (2 * d + 1) * ys[i]
                lo_suffix[w][i] = lo_suffix[w][i + 1] + min(a, -a)
                hi_suffix[w][i] = hi_suffix[w][i + 1] + max(a, -a)
        m = [0] * k
        ys_all = [ys for _, ys in iweights]

        def rec(i, q, vals):
            if i == k:
                if q == 0:
                    leaf(PicClass(ctx, (1 - d,) + tuple(-x for x in m)), list(vals))
                return
            los = [vals[w] + lo_suffix[w][i] for w in range(nw)]
            his = [vals[w] + hi_suffix[w][i] for w in range(nw)]
            if not feasible(los, his):
                return
            top = isqrt(q) if q >= 0 else -1
            for v in range(min(d, top), max(-1 - d, -1 - top) - 1, -1):
                q2 = q - v * (v + 1)
                if q2 < 0:
                    continue
                m[i] = v
                u = 2 * v + 1
                rec(i + 1, q2, [vals[w] + u * ys_all[w][i] for w in range(nw)])
                m[i] = 0

        rec(0, budget, base)
    return scale


def _square_in_range(cls: PicClass) -> bool:
    return -(cls.ctx.k - 4) <= cls.square <= 1


def _polarization_weights(L: PicClass):
    return (L.deg, L.coeffs[1:])


def local_walls(L: PicClass, *, slack: int = DEFAULT_SLACK) -> list[Wall]:
    """All K-negative walls through L.

    For L^2 > 0 the degree bound gives a complete finite enumeration.  On
    the boundary, conic-type classes (L^2 = 0, K.L < 0) lie on finitely
    many walls found through the orbit reduction, while anticanonical-type
    classes lie on infinitely many (InfiniteWallsError).
    """
    ctx = L.ctx
    _wall_surface(ctx)
    kc = ctx.canonical_class()
    if kc.dot(L) > 0:
        raise DomainError("wall search requires K.L <= 0")
    if not is_nef_kneg(L):
        raise DomainError("wall search requires a nef polarization")
    if L.square == 0:
        return _boundary_walls(L, slack)
    x = L.deg
    ys_sq = x * x - L.square
    bound = Fraction(ctx.k * ys_sq - x * x, 4 * L.square)
    dmax = 0
    while (dmax + 1) * (dmax + 2) <= bound:
        dmax += 1
    dmax += slack

    found: dict[tuple, Wall] = {}
    ample = is_ample_kneg(L)

    def feasible(los, his):
        return los[0] <= 0 <= his[0]

    def leaf(cls, vals):
        if vals[0] != 0 or not _square_in_range(cls):
            return
        if ample or find_wall_witness(cls, seeds=[L]) is not None:
            w = Wall.from_class(cls)
            found[w.key()] = w

    _wall_candidate_search(ctx, dmax, [_polarization_weights(L)], feasible, leaf)
    return [found[k] for k in sorted(found)]


def _boundary_walls(L: PicClass, slack: int) -> list[Wall]:
    ctx = L.ctx
    kc = ctx.canonical_class()
    if kc.dot(L) == 0:
        raise InfiniteWallsError(
            "anticanonical-type boundary classes lie on infinitely many walls"
        )
    L0 = L
    if not L0.is_integral():
        from .conegeom import _primitive_part

        L0 = _primitive_part(L0)
    else:
        L0 = L0.primitive()
    if orbit_classify(L0) != OrbitFamily.CONIC:
        raise DomainError("boundary class is not of conic type")
    red = cremona_reduce(L0)
    word = list(red.word)
    # canonical conic form is h - e_1; walls through it have d = m_1 and
    # the other multiplicities in {0, -1}, with 2d + 1 < k - 1
    assert red.canonical == PicClass(ctx, (1, 1) + (0,) * (ctx.k - 1))
    back = inverse_word(word)
    out: dict[tuple, Wall] = {}
    dcap = (ctx.k - 2) // 2
    for d in range(0, dcap + 1):
        if 2 * d + 1 >= ctx.k - 1:
            continue
        for mask in range(2 ** (ctx.k - 1)):
            m = [d] + [-(mask >> i & 1) for i in range(ctx.k - 1)]
            cand = PicClass(ctx, (1 - d,) + tuple(-x for x in m))
            if not _square_in_range(cand):
                continue
            orig = apply_word(back, cand)
            witness = find_wall_witness(orig, seeds=[L])
            if witness is not None:
                w = Wall.from_class(orig)
                out[w.key()] = w
    return [out[k] for k in sorted(out)]


@dataclass(frozen=True)
class SegmentScanResult:
    crossings: tuple[tuple[Fraction, tuple[Wall, ...]], ...]
    endpoint_walls: tuple[tuple[Wall, ...], tuple[Wall, ...]]

    @property
    def total_crossings(self) -> int:
        return sum(len(ws) for _, ws in self.crossings)


def _segment_region_check(L0: PicClass, L1: PicClass):
    diff = L1 - L0
    a = diff.square
    b = 2 * L0.dot(diff)
    c = L0.square
    if a < 0:
        tstar = Fraction(-b, 2 * a) if a != 0 else None
        if tstar is not None and 0 < tstar < 1:
            val = a * tstar * tstar + b * tstar + c
            if val <= 0:
                raise RegionError("segment leaves the L^2 > 0 region", tstar)


def segment_scan(L0: PicClass, L1: PicClass, *, slack: int = DEFAULT_SLACK) -> SegmentScanResult:
    """All K-negative walls met by the segment (1-t) L0 + t L1, 0 < t < 1,
    grouped by crossing parameter; walls through an endpoint are reported
    separately and not counted as crossings."""
    ctx = L0.ctx
    _wall_surface(ctx)
    if L1.ctx != ctx:
        raise DomainError("segment endpoints live in different contexts")
    kc = ctx.canonical_class()
    for end in (L0, L1):
        if kc.dot(end) >= 0 or end.square <= 0:
            raise DomainError("segment endpoints must satisfy K.L < 0 and L^2 > 0")
        if not is_nef_kneg(end):
            raise DomainError("segment endpoints must be nef")
    if L0 == L1:
        return SegmentScanResult((), ((), ()))
    _segment_region_check(L0, L1)

    x0, x1 = L0.deg, L1.deg
    min_x = min(x0, x1)
    max_ysq = max(x0 * x0 - L0.square, x1 * x1 - L1.square)
    diff = L1 - L0
    a, b, c = diff.square, 2 * L0.dot(diff), L0.square
    min_lsq = min(L0.square, L1.square)
    if a > 0:
        tstar = Fraction(-b, 2 * a)
        if 0 < tstar < 1:
            min_lsq = min(min_lsq, a * tstar * tstar + b * tstar + c)
    bound = Fraction(ctx.k * max_ysq - min_x * min_x, 4 * min_lsq)
    dmax = 0
    while (dmax + 1) * (dmax + 2) <= bound:
        dmax += 1
    dmax += slack

    hits: list[tuple[Fraction, Wall]] = []
    ends: tuple[dict, dict] = ({}, {})

    def feasible(los, his):
        both_pos = los[0] > 0 and los[1] > 0
        both_neg = his[0] < 0 and his[1] < 0
        return not (both_pos or both_neg)

    def leaf(cls, vals):
        v0, v1 = vals
        if (v0 > 0 and v1 > 0) or (v0 < 0 and v1 < 0):
            return
        if not _square_in_range(cls):
            return
        if v0 == 0 or v1 == 0:
            for end_vals, ds, endpoint in ((v0, ends[0], L0), (v1, ends[1], L1)):
                if end_vals == 0 and (
                    is_wall_witness(cls, endpoint)
                    or find_wall_witness(cls, seeds=[endpoint]) is not None
                ):
                    w = Wall.from_class(cls)
                    ds.setdefault(w.key(), w)
            return
        t = Fraction(v0, v0 - v1)
        point = (1 - t) * L0 + t * L1
        if is_wall_witness(cls, point) or find_wall_witness(cls, seeds=[point]) is not None:
            hits.append((t, Wall.from_class(cls)))

    _wall_candidate_search(
        ctx, dmax, [_polarization_weights(L0), _polarization_weights(L1)], feasible, leaf
    )
    grouped: dict[Fraction, dict] = {}
    for t, w in hits:
        grouped.setdefault(t, {})[w.key()] = w
    crossings = tuple(
        (t, tuple(grouped[t][k] for k in sorted(grouped[t])))
        for t in sorted(grouped)
    )
    endpoint_walls = (
        tuple(ends[0][k] for k in sorted(ends[0])),
        tuple(ends[1][k] for k in sorted(ends[1])),
    )
    return SegmentScanResult(crossings, endpoint_walls)


@dataclass(frozen=True)
class Chamber:
    """A stability chamber, named by a wall-free ample interior point."""

    rep: PicClass
    known_walls: tuple[tuple[Wall, int], ...] = ()

    def with_walls(self, walls) -> "Chamber":
        known = tuple((w, w.side(self.rep)) for w in walls)
        return Chamber(self.rep, known)


def chamber_of(L: PicClass) -> Chamber:
    """The chamber of an ample polarization on no wall."""
    if not is_ample_kneg(L):
        raise DomainError("chamber representatives must be ample with K.L < 0")
    walls = local_walls(L)
    if walls:
        raise OnWallError(f"{L} lies on {len(walls)} wall(s)", walls)
    return Chamber(L)


def standard_chamber_rep(ctx: LatticeContext) -> PicClass:
    """The polarization (n+1) h - sum e_i, n = k - 4, interior to the
    chamber whose moduli interpretation is the blowup of P^n itself."""
    n = geometric_dimension(ctx)
    if n < 3:
        raise DimensionError("standard chamber requires k >= 7")
    return symmetric_polarization(ctx, n - 2)


def standard_chamber_walls(ctx: LatticeContext, *, verify: bool = True) -> list[Wall]:
    """The bounding walls of the standard chamber: the k conic-type walls
    h - e_i (positive side) and the k(k-1)/2 line-type walls h - e_i - e_j
    (negative side).

    With verify=True each wall is certified by an ample witness on its
    hyperplane and a scan showing no other wall separates it from the
    representative polarization.
    """
    rep = standard_chamber_rep(ctx)
    walls = []
    for i in range(1, ctx.k + 1):
        coeffs = [1] + [0] * ctx.k
        coeffs[i] = 1
        walls.append(PicClass(ctx, tuple(coeffs)))
    for i in range(1, ctx.k + 1):
        for j in range(i + 1, ctx.k + 1):
            coeffs = [1] + [0] * ctx.k
            coeffs[i] = coeffs[j] = 1
            walls.append(PicClass(ctx, tuple(coeffs)))
    out = []
    for d in walls:
        w = Wall.from_class(d)
        if verify:
            witness = project_to_hyperplane(rep, w.normal)
            if not is_wall_witness(d, witness):
                raise DomainError(f"projected witness for {w} is not ample")
            scan = segment_scan(rep, witness)
            if scan.crossings or w.key() not in {v.key() for v in scan.endpoint_walls[1]}:
                raise DomainError(f"{w} is not adjacent to the standard representative")
        out.append(w)
    return sorted(out, key=Wall.key)


def standard_chamber(ctx: LatticeContext, *, verify: bool = True) -> Chamber:
    rep = standard_chamber_rep(ctx)
    return Chamber(rep).with_walls(standard_chamber_walls(ctx, verify=verify))


class CrossingKind(Enum):
    EMPTY_TO_PROJ_SPACE = "empty_to_proj_space"
    BLOW_DOWN = "blow_down"
    FLIP = "flip"
    FLOP = "flop"
    ANTI_FLIP = "anti_flip"
    PROJ_SPACE_TO_EMPTY = "proj_space_to_empty"


class IsoSide(Enum):
    MINUS = "minus"
    PLUS = "plus"
    NEITHER = "neither"


@dataclass(frozen=True)
class WallCrossing:
    """Numerical shadow of the birational modification across one wall.

    The projective loci swept out on the two sides have dimensions
    -D^2 and n - 1 + D^2 (empty locus = dimension -1), and the modification
    type is read off from D^2 against (1-n)/2.
    """

    wall: Wall
    dsq: int
    dim_p_d: int
    dim_p_kd: int
    kind: CrossingKind
    iso_side: IsoSide


def crossing_data(wall: Wall, n: int) -> WallCrossing:
    ctx = wall.cls.ctx
    if n != geometric_dimension(ctx):
        raise DimensionError(f"expected n = {geometric_dimension(ctx)}, got {n}")
    dsq = int(wall.square)
    if dsq == 1:
        kind = CrossingKind.EMPTY_TO_PROJ_SPACE
    elif dsq == 0 or dsq == -n + 1:
        kind = CrossingKind.BLOW_DOWN
    elif dsq == -n:
        kind = CrossingKind.PROJ_SPACE_TO_EMPTY
    elif 2 * dsq < 1 - n:
        kind = CrossingKind.FLIP
    elif 2 * dsq == 1 - n:
        kind = CrossingKind.FLOP
    else:
        kind = CrossingKind.ANTI_FLIP
    if 2 * dsq < 1 - n:
        side = IsoSide.MINUS
    elif 2 * dsq > 1 - n:
        side = IsoSide.PLUS
    else:
        side = IsoSide.NEITHER
    return WallCrossing(wall, dsq, -dsq, n - 1 + dsq, kind, side)


@dataclass
class ChamberNode:
    id: int
    chamber: Chamber


@dataclass
class ChamberEdge:
    src: int
    dst: int
    wall: Wall
    crossing: WallCrossing
    src_side: int


@dataclass
class ChamberGraph:
    ctx: LatticeContext
    region: Region
    nodes: list[ChamberNode] = field(default_factory=list)
    edges: list[ChamberEdge] = field(default_factory=list)
    complete: bool = True

    def neighbors(self, node_id: int) -> list[int]:
        out = []
        for e in self.edges:
            if e.src == node_id:
                out.append(e.dst)
            elif e.dst == node_id:
                out.append(e.src)
        return sorted(set(out))


def _chamber_facets(rep: PicClass, slack: int):
    """Candidate bounding walls of the chamber around rep, each certified
    by a clean scan from rep to its projection (no other wall between),
    together with a wall-free ample point just beyond.

    Candidates are enumerated within the radius |N.rep| <= -K.rep; facets
    further out than the enumeration radius are not reported, which the
    graph records as incompleteness only through its step budget.
    """
    ctx = rep.ctx
    kc = ctx.canonical_class()
    radius = -kc.dot(rep)
    x = rep.deg
    ys_sq = x * x - rep.square
    # cap on u = 2d+1 from u^2 L^2 - 2 R x u + (R^2 - (k-1) ys_sq) <= 0
    rad = radius * radius * ys_sq + rep.square * (ctx.k - 1) * ys_sq
    ucap = floor_frac(Fraction(radius * x + sqrt_upper(rad), rep.square)) + 1
    dmax = max((ucap - 1) // 2 + 1, 1) + slack

    qscale = 1
    for value in rep.coeffs:
        den = Fraction(value).denominator
        qscale = qscale * den // gcd(qscale, den)
    scaled_radius = int(radius * qscale)

    cands: dict[tuple, Wall] = {}

    def feasible(los, his):
        return los[0] <= scaled_radius and his[0] >= -scaled_radius

    def leaf(cls, vals):
        if abs(vals[0]) > scaled_radius or vals[0] == 0 or not _square_in_range(cls):
            return
        w = Wall.from_class(cls)
        cands.setdefault(w.key(), w)

    _wall_candidate_search(ctx, dmax, [_polarization_weights(rep)], feasible, leaf)

    facets = []
    for key in sorted(cands):
        w = cands[key]
        try:
            target = project_to_hyperplane(rep, w.normal)
        except DomainError:
            continue
        if not (target.square > 0 and kc.dot(target) < 0 and is_nef_kneg(target)):
            continue  # wall meets the cone boundary before the chamber does
        scan = segment_scan(rep, target)
        if scan.crossings:
            continue
        if w.key() not in {v.key() for v in scan.endpoint_walls[1]}:
            continue
        # step beyond the wall to a wall-free point on the other side
        delta = Fraction(1, 2)
        beyond = None
        for _ in range(24):
            cand_b = target + delta * (target - rep)
            if (
                cand_b.square > 0
                and kc.dot(cand_b) < 0
                and is_ample_kneg(cand_b)
                and w.side(cand_b) == -w.side(rep)
                and not local_walls(cand_b)
            ):
                mid = segment_scan(rep, cand_b)
                if mid.total_crossings == 1 and mid.crossings[0][1][0].key() == w.key():
                    beyond = cand_b
                    break
            delta /= 2
        if beyond is None:
            continue
        facets.append((w, w.side(rep), beyond))
    return facets


def chamber_graph(
    start: Chamber,
    max_steps: int,
    region: Region,
    *,
    slack: int = DEFAULT_SLACK,
) -> ChamberGraph:
    """Breadth-first exploration of chambers inside the requested region.

    Each expansion computes the bounding walls of one chamber and crosses
    every wall whose far side stays in the region; chambers are identified
    by a scan showing no wall separates their representatives.  Stops
    after max_steps expansions; `complete` is False when a frontier
    remains.
    """
    ctx = start.rep.ctx
    _wall_surface(ctx)
    if not cone_membership(start.rep, region):
        raise DomainError("start representative is outside the requested region")
    graph = ChamberGraph(ctx, region)
    graph.nodes.append(ChamberNode(0, start))
    frontier = deque([0])
    expanded: set[int] = set()
    steps = 0
    while frontier:
        if steps >= max_steps:
            graph.complete = False
            break
        cid = frontier.popleft()
        if cid in expanded:
            continue
        expanded.add(cid)
        steps += 1
        rep = graph.nodes[cid].chamber.rep
        facets = _chamber_facets(rep, slack)
        walls = [f[0] for f in facets]
        graph.nodes[cid] = ChamberNode(cid, graph.nodes[cid].chamber.with_walls(walls))
        for wall, side, beyond in facets:
            if any(
                e.wall.key() == wall.key() and cid in (e.src, e.dst) for e in graph.edges
            ):
                continue
            if not cone_membership(beyond, region):
                continue
            dst = None
            for node in graph.nodes:
                known = node.chamber.known_walls
                # a sign mismatch on any known wall separates the chambers
                if any(w.side(beyond) != s for w, s in known):
                    continue
                scan = segment_scan(beyond, node.chamber.rep)
                if not scan.crossings:
                    dst = node.id
                    break
            if dst is None:
                dst = len(graph.nodes)
                graph.nodes.append(ChamberNode(dst, Chamber(beyond, ((wall, -side),))))
                frontier.append(dst)
            graph.edges.append(
                ChamberEdge(cid, dst, wall, crossing_data(wall, geometric_dimension(ctx)), side)
            )
    if frontier:
        graph.complete = False
    return graph
