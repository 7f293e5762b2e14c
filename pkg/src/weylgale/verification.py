"""One-shot verification suite.

Each check returns a CheckResult with a stable name, a pass flag and a
short detail string; `run_suite` executes all of them.  The checks mirror
the package's acceptance tests so the command line can replay them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .conegeom import (
    LINE_FAMILY,
    Region,
    cone_membership,
    enumerate_family_below,
    is_ample_kneg,
    noether_check,
)
from .errors import WeylGaleError
from .morimap import (
    determinant_map,
    effective_cone_check,
    matched_generator,
    verify_determinant_map,
    wall_to_curve,
)
from .piclattice import (
    LatticeContext,
    PicClass,
    coble_pair,
    make_context,
    surface_context,
    symmetric_polarization,
)
from .wallscan import (
    Wall,
    crossing_data,
    find_wall_witness,
    local_walls,
    segment_scan,
    standard_chamber_rep,
    standard_chamber_walls,
)
from .weylgroup import (
    OrbitFamily,
    apply_generator,
    apply_word,
    orbit_classify,
    orbit_enumerate,
    verify_relations,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _random_integral(rng, ctx, lo=-9, hi=9):
    return ctx.from_coeffs([rng.randint(lo, hi) for _ in range(ctx.k + 1)])


def check_weyl_relations(seed: int = 0, words: int = 200, max_len: int = 20) -> CheckResult:
    """Coxeter relations on (2,9), (4,8), (5,9); pairing preserved and the
    canonical class fixed by random words."""
    rng = random.Random(seed)
    for n, k in ((2, 9), (4, 8), (5, 9)):
        ctx = make_context(n, k)
        report = verify_relations(ctx)
        if not report.all_pass:
            return CheckResult("weyl relations", False, f"relation failed on ({n},{k})")
        kc = ctx.canonical_class()
        for i in range(k):
            if apply_generator(ctx, i, kc) != kc:
                return CheckResult("weyl relations", False, f"generator {i} moves K on ({n},{k})")
        for _ in range(words):
            word = [rng.randrange(k) for _ in range(rng.randint(1, max_len))]
            u, v = _random_integral(rng, ctx), _random_integral(rng, ctx)
            if coble_pair(apply_word(word, u), apply_word(word, v)) != coble_pair(u, v):
                return CheckResult("weyl relations", False, f"pairing not preserved on ({n},{k})")
    return CheckResult(
        "weyl relations",
        True,
        f"T-diagram relations, K-fixing and pairing invariance on 3 contexts, {words} words each",
    )


_ORBIT_COUNTS = {4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


def _minus_one_solutions(k: int) -> list[PicClass]:
    """Independent brute force over e^2 = -1, e.K = -1 via the quadratic
    degree window, with reduction certificates."""
    ctx = surface_context(k)
    out = []
    a = 9 - k

    def p(d):
        return a * d * d - 6 * d + 1 - k

    d = 0
    while p(d) <= 0 or d == 0:
        target_sum, target_sq = 3 * d - 1, d * d + 1
        stack = [((), target_sum, target_sq)]
        while stack:
            prefix, s, q = stack.pop()
            i = len(prefix)
            if i == k:
                if s == 0 and q == 0:
                    cand = PicClass(ctx, (d,) + prefix)
                    if orbit_classify(cand) == OrbitFamily.LINE:
                        out.append(cand)
                continue
            r = k - i
            for v in range(-int(q**0.5) - 1, int(q**0.5) + 2):
                if v * v > q:
                    continue
                s2, q2 = s - v, q - v * v
                if r > 1 and s2 * s2 > (r - 1) * q2:
                    continue
                if r == 1 and (s2 != 0 or q2 != 0):
                    continue
                stack.append((prefix + (v,), s2, q2))
        d += 1
        if d > 30:
            break
    return sorted(set(out), key=lambda c: c.key())


def check_orbit_counts() -> CheckResult:
    """Exceptional-class orbit sizes for 4..8 points, cross-checked by the
    brute-force solver."""
    for k, want in _ORBIT_COUNTS.items():
        ctx = surface_context(k)
        orbit = orbit_enumerate(ctx.exceptional(1), 30)
        brute = _minus_one_solutions(k)
        if len(orbit) != want or [c.key() for c in orbit] != [c.key() for c in brute]:
            return CheckResult(
                "orbit counts", False, f"k={k}: got {len(orbit)}, brute {len(brute)}, want {want}"
            )
    return CheckResult("orbit counts", True, "10, 16, 27, 56, 240 for k = 4..8, both routes")


def _scan_table(k: int, a0: Fraction, a1: Fraction):
    ctx = surface_context(k)
    scan = segment_scan(symmetric_polarization(ctx, a0), symmetric_polarization(ctx, a1))
    table = []
    for t, walls in scan.crossings:
        table.append((a0 + t * (a1 - a0), walls))
    return table


def check_segment_scans() -> CheckResult:
    """The symmetric-family wall tables on 9 and 8 points."""
    table9 = _scan_table(9, Fraction(13, 2), Fraction(3, 2))
    want9 = [(Fraction(6), 1), (Fraction(4), 9), (Fraction(2), 36)]
    if [(a, len(w)) for a, w in table9] != want9:
        return CheckResult("segment scans", False, f"(2,9) table {[(str(a), len(w)) for a, w in table9]}")
    ctx9 = surface_context(9)
    h = ctx9.hyperplane()
    if {w.cls for w in table9[0][1]} != {h}:
        return CheckResult("segment scans", False, "(2,9) wall at a=6 is not the cubic class")
    want_conic = {h - ctx9.exceptional(i) for i in range(1, 10)}
    if {w.cls for w in table9[1][1]} != want_conic:
        return CheckResult("segment scans", False, "(2,9) walls at a=4 are not h - e_i")
    want_pairs = {
        h - ctx9.exceptional(i) - ctx9.exceptional(j)
        for i in range(1, 10)
        for j in range(i + 1, 10)
    }
    if {w.cls for w in table9[2][1]} != want_pairs:
        return CheckResult("segment scans", False, "(2,9) walls at a=2 are not h - e_i - e_j")
    table8 = _scan_table(8, Fraction(11, 2), Fraction(1, 2))
    want8 = [(Fraction(5), 1), (Fraction(3), 8), (Fraction(1), 28)]
    if [(a, len(w)) for a, w in table8] != want8:
        return CheckResult("segment scans", False, f"(2,8) table {[(str(a), len(w)) for a, w in table8]}")
    return CheckResult(
        "segment scans", True, "crossings at a = 6,4,2 (1,9,36 walls) and a = 5,3,1 (1,8,28 walls)"
    )


def check_standard_chamber_census(dims=(4, 5, 7)) -> CheckResult:
    """Wall census of the standard chamber: k conic walls on the positive
    side and k(k-1)/2 line walls on the negative side."""
    for n in dims:
        ctx = surface_context(n + 4)
        rep = standard_chamber_rep(ctx)
        walls = standard_chamber_walls(ctx)
        conic = [w for w in walls if w.square == 0]
        pairs = [w for w in walls if w.square == -1]
        k = ctx.k
        if len(conic) != k or len(pairs) != k * (k - 1) // 2 or len(walls) != len(conic) + len(pairs):
            return CheckResult(
                "standard chamber census", False, f"n={n}: {len(conic)} conic, {len(pairs)} line walls"
            )
        if {w.side(rep) for w in conic} != {1} or {w.side(rep) for w in pairs} != {-1}:
            return CheckResult("standard chamber census", False, f"n={n}: wrong side signs")
    return CheckResult(
        "standard chamber census",
        True,
        "k conic walls (positive side) + k(k-1)/2 line walls (negative side) for n = 4, 5, 7",
    )


def check_crossing_semantics(dims=(4, 5, 7)) -> CheckResult:
    """Dimension bookkeeping and modification trichotomy on every
    standard-chamber wall."""
    for n in dims:
        ctx = surface_context(n + 4)
        for wall in standard_chamber_walls(ctx, verify=False):
            c = crossing_data(wall, n)
            if c.dim_p_d != -c.dsq or c.dim_p_kd != n - 1 + c.dsq:
                return CheckResult("crossing semantics", False, f"dims wrong at {wall}")
            if c.dim_p_d + c.dim_p_kd != n - 1:
                return CheckResult("crossing semantics", False, f"dim sum wrong at {wall}")
            want = (
                "flip" if 2 * c.dsq < 1 - n else "anti_flip" if 2 * c.dsq > 1 - n else "flop"
            )
            if c.dsq in (1, 0, -n + 1, -n):
                continue
            if c.kind.value != want:
                return CheckResult("crossing semantics", False, f"kind wrong at {wall}")
    ctx9 = surface_context(9)
    w = Wall.from_class(ctx9.hyperplane() - ctx9.exceptional(1) - ctx9.exceptional(2))
    c = crossing_data(w, 5)
    ok = c.kind.value == "anti_flip" and (c.dim_p_d, c.dim_p_kd) == (1, 3) and c.iso_side.value == "plus"
    if not ok:
        return CheckResult("crossing semantics", False, "n=5 line-pair wall data wrong")
    return CheckResult(
        "crossing semantics", True, "loci dimensions and flip trichotomy on all census walls"
    )


def check_determinant_identities(trials: int = 60, seed: int = 0) -> CheckResult:
    """The defining identities of the determinant map, exactly."""
    try:
        rho = determinant_map(5)
        report = verify_determinant_map(rho, trials=trials, seed=seed)
    except WeylGaleError as exc:
        return CheckResult("determinant identities", False, str(exc))
    src, tgt = rho.source, rho.target
    for i in range(1, 10):
        if rho(src.hyperplane() - src.exceptional(i)) != 2 * tgt.exceptional(i):
            return CheckResult("determinant identities", False, f"conic image wrong at i={i}")
    for a in (Fraction(1), Fraction(5, 2), Fraction(4)):
        la = symmetric_polarization(src, a)
        want = PicClass.from_natural(tgt, (6 - a,) + (-(4 - a),) * 9)
        if rho(la) != want:
            return CheckResult("determinant identities", False, f"symmetric image wrong at a={a}")
    return CheckResult(
        "determinant identities",
        True,
        "canonical class, conic doubling, symmetric family, pairing and equivariance checks",
    )


def check_mori_translation() -> CheckResult:
    """Image facets of the standard chamber are dual to the fiber and
    line-pair curve classes on the blowup of P^5."""
    rho = determinant_map(5)
    src, tgt = rho.source, rho.target
    got = set()
    for wall in standard_chamber_walls(src, verify=False):
        got.add(wall_to_curve(wall, rho).coeffs)
    want = set()
    for i in range(1, 10):
        want.add(tuple(1 if j == i else 0 for j in range(10)))
    for i in range(1, 10):
        for j in range(i + 1, 10):
            want.add(tuple(1 if v == 0 else (-1 if v in (i, j) else 0) for v in range(10)))
    if got != want:
        return CheckResult("mori translation", False, f"{len(got)} facet duals, expected {len(want)}")
    interior = rho(standard_chamber_rep(src))
    from .morimap import CurveClass

    if any(CurveClass(tgt, c).pair_divisor(interior) <= 0 for c in want):
        return CheckResult("mori translation", False, "standard image not interior to the facet duals")
    return CheckResult(
        "mori translation", True, "facets dual to the 9 fiber classes and 36 line-pair classes (n=5)"
    )


def check_effective_cone(words: int = 200, seed: int = 0) -> CheckResult:
    report = effective_cone_check(5, budget=words, seed=seed)
    if not report.matched_word_identity:
        return CheckResult("effective cone generators", False, f"word identity failed: {report.failure}")
    if report.anticanonical_boundary is not True:
        return CheckResult("effective cone generators", False, "anticanonical boundary check failed")
    return CheckResult(
        "effective cone generators",
        True,
        f"conic orbit doubles onto the exceptional orbit for {words} matched words; -K maps to -K",
    )


def check_noether(bound: int = 8, ks=(9, 10)) -> CheckResult:
    totals = []
    for k in ks:
        report = noether_check(bound, k)
        if not report.all_pass:
            return CheckResult("noether inequality", False, f"violation at k={k}: {report.violations[0]}")
        totals.append(sum(c for _, c in report.counts))
    return CheckResult(
        "noether inequality",
        True,
        f"zero violations over {totals} classes (k = {list(ks)}, d <= {bound})",
    )


def _random_ample(rng, ctx, tries=400):
    for _ in range(tries):
        x = rng.randint(4, 14)
        ys = [rng.randint(0, 3) for _ in range(ctx.k)]
        L = ctx.from_coeffs([x] + ys)
        if L.square <= 0 or L.dot(ctx.canonical_class()) >= 0:
            continue
        bound = Fraction(ctx.k * (x * x - L.square) - x * x, 4 * L.square)
        if bound > 12:  # keep the brute-force double-range enumeration finite
            continue
        if is_ample_kneg(L):
            return L
    raise WeylGaleError("could not sample an ample class")


def _brute_walls(L: PicClass, dmax: int) -> set:
    """Straightforward independent wall enumeration up to degree dmax."""
    from math import isqrt

    ctx = L.ctx
    found = set()
    x, ys = L.deg, L.coeffs[1:]

    for d in range(0, dmax + 1):
        # largest leftover functional value the remaining slots can move
        reach = [0] * (ctx.k + 1)
        for i in range(ctx.k - 1, -1, -1):
            reach[i] = reach[i + 1] + (2 * d + 1) * abs(ys[i])

        def rec(i, q, val, m):
            if i == ctx.k:
                if q == 0 and val == 0:
                    cls = PicClass(ctx, (1 - d,) + tuple(-v for v in m))
                    if -(ctx.k - 4) <= cls.square <= 1:
                        found.add(Wall.from_class(cls).key())
                return
            if abs(val) > reach[i]:
                return
            top = isqrt(q)
            for v in range(max(-1 - d, -1 - top), min(d, top) + 1):
                q2 = q - v * (v + 1)
                if q2 < 0:
                    continue
                rec(i + 1, q2, val + (2 * v + 1) * ys[i], m + [v])

        rec(0, d * d + d, -(2 * d + 1) * x, [])
    return found


def check_wall_bound_completeness(samples: int = 20, seed: int = 0) -> CheckResult:
    """local_walls against a brute force over twice the derived degree
    bound, on random ample polarizations for 9 and 10 points."""
    rng = random.Random(seed)
    for k in (9, 10):
        ctx = surface_context(k)
        for _ in range(samples):
            L = _random_ample(rng, ctx)
            x = L.deg
            bound = Fraction(ctx.k * (x * x - L.square) - x * x, 4 * L.square)
            dmax = 0
            while (dmax + 1) * (dmax + 2) <= bound:
                dmax += 1
            got = {w.key() for w in local_walls(L)}
            brute = _brute_walls(L, 2 * dmax + 1)
            if got != brute:
                return CheckResult(
                    "wall bound completeness", False, f"k={k}, L={L}: {len(got)} vs {len(brute)}"
                )
    return CheckResult(
        "wall bound completeness",
        True,
        f"{samples} random ample classes on each of k = 9, 10; double-range brute force agrees",
    )


def check_gale_duality(samples: int = 50, seed: int = 0) -> CheckResult:
    from .galedual import (
        PointConfiguration,
        dual_round_trip,
        duality_certificate,
        gale_dual,
        general_position,
    )

    rng = random.Random(seed)
    shapes = [(6, 2), (9, 2), (7, 3)]
    done = 0
    while done < samples:
        k, s = shapes[done % len(shapes)]
        rows = [[rng.randint(-6, 6) for _ in range(s + 1)] for _ in range(k)]
        try:
            cfg = PointConfiguration.from_rows(rows)
        except WeylGaleError:
            continue
        if not general_position(cfg):
            continue
        dual = gale_dual(cfg)
        if not duality_certificate(cfg, dual):
            return CheckResult("gale duality", False, f"B^t A != 0 for a ({k},{s}) sample")
        if not general_position(dual):
            return CheckResult("gale duality", False, f"dual not in general position ({k},{s})")
        if not dual_round_trip(cfg):
            return CheckResult("gale duality", False, f"round trip failed ({k},{s})")
        done += 1
    return CheckResult(
        "gale duality",
        True,
        f"{samples} random configurations over (k,s) = (6,2), (9,2), (7,3): exact duality, "
        "general position and round trip",
    )


def check_negative_controls() -> CheckResult:
    ctx11 = surface_context(11)
    bad = ctx11.from_coeffs((3,) + (1,) * 10 + (-1,))
    if orbit_classify(bad) != OrbitFamily.OTHER:
        return CheckResult("negative controls", False, "degree-stuck class classified into an orbit")
    if find_wall_witness(bad) is not None:
        return CheckResult("negative controls", False, "witness found for a non-wall class")
    ctx9 = surface_context(9)
    L = ctx9.from_coeffs((10,) + (1,) * 9)
    member = cone_membership(L, Region.EFFECTIVE)
    if member.member or member.certificate != ctx9.hyperplane():
        return CheckResult("negative controls", False, "effective-cone failure certificate wrong")
    return CheckResult(
        "negative controls",
        True,
        "degree-stuck class is orbit-Other with no wall witness; 10h - sum e fails with cubic certificate h",
    )


ALL_CHECKS = (
    ("weyl relations", check_weyl_relations),
    ("orbit counts", check_orbit_counts),
    ("segment scans", check_segment_scans),
    ("standard chamber census", check_standard_chamber_census),
    ("crossing semantics", check_crossing_semantics),
    ("determinant identities", check_determinant_identities),
    ("mori translation", check_mori_translation),
    ("effective cone generators", check_effective_cone),
    ("noether inequality", check_noether),
    ("wall bound completeness", check_wall_bound_completeness),
    ("gale duality", check_gale_duality),
    ("negative controls", check_negative_controls),
)


def run_suite(seed: int = 0, words: int = 200, samples: int = 20) -> list[CheckResult]:
    results = []
    for name, fn in ALL_CHECKS:
        try:
            if fn is check_weyl_relations:
                results.append(fn(seed=seed, words=words))
            elif fn is check_effective_cone:
                results.append(fn(words=words, seed=seed))
            elif fn is check_wall_bound_completeness:
                results.append(fn(samples=samples, seed=seed))
            elif fn is check_gale_duality:
                results.append(fn(seed=seed))
            elif fn is check_determinant_identities:
                results.append(fn(seed=seed))
            else:
                results.append(fn())
        except WeylGaleError as exc:
            results.append(CheckResult(name, False, f"error: {exc}"))
    return results
