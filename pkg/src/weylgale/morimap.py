"""The determinant map from the surface lattice to the lattice of the
blown-up projective space, and the translation of walls and chambers into
curve classes and cone facets there.

With k = n + 4 points on both sides, the map sends

    h   |->  -H + sum E_j,      e_i  |->  -H + sum E_j - 2 E_i.

It matches markings on the two sides (the wall at h - e_i maps to the
hyperplane dual to a line in the exceptional divisor over the i-th
point).  With matched markings the map intertwines the two Weyl actions
under the identification that pairs the transposition generators by equal
index and pairs the Cremona generator with the reflection through
H - E_(s+2) - ... - E_k; precomposing with the marking reversal
e_i -> e_(k+1-i) turns this into the chain-reversing identification of
kperp_isometry and doubles that isometry on the orthogonal complement of
the canonical class.  Both formulations are exact and verified by
`verify_determinant_map`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from . import _linalg as la
from .conegeom import Region, cone_membership
from .errors import DimensionError, DomainError, MapError, RegionError, VerificationError
from .linmap import LinearMap
from .piclattice import (
    LatticeContext,
    PicClass,
    chi_line_bundle,
    coble_pair,
    make_context,
    surface_context,
)
from .wallscan import Chamber, Wall, geometric_dimension
from .weylgroup import (
    apply_generator,
    kperp_isometry,
    marking_reversal,
    reflect,
    simple_root,
)

__all__ = [
    "LinearMap",
    "CurveClass",
    "determinant_map",
    "matched_generator",
    "verify_determinant_map",
    "wall_to_curve",
    "nef_cone_image",
    "NefConeImage",
    "ConeFacet",
    "effective_cone_check",
    "gale_extension_check",
]


@dataclass(frozen=True)
class CurveClass:
    """A 1-cycle class c0*l + sum c_i f_i on the blowup of P^n, where l is
    a general line and f_i a line inside the i-th exceptional divisor;
    l.H = 1, l.E_i = 0, f_i.E_j = -delta_ij, f_i.H = 0."""

    ctx: LatticeContext
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.k + 1:
            raise DimensionError("curve class needs k+1 coefficients")
        object.__setattr__(self, "coeffs", tuple(la.frac(c) for c in self.coeffs))

    def pair_divisor(self, d: PicClass):
        if d.ctx != self.ctx:
            raise DomainError("curve and divisor live in different contexts")
        nat = d.natural()
        return la.frac(
            self.coeffs[0] * nat[0] - sum(c * e for c, e in zip(self.coeffs[1:], nat[1:]))
        )

    def primitive_oriented(self, positive_against: PicClass) -> "CurveClass":
        if all(c == 0 for c in self.coeffs):
            raise MapError("zero curve class")
        g = reduce(gcd, (abs(int(c)) for c in self.coeffs if c != 0))
        scaled = tuple(int(c) // g for c in self.coeffs)
        cand = CurveClass(self.ctx, scaled)
        val = cand.pair_divisor(positive_against)
        if val == 0:
            raise MapError("cannot orient the curve class")
        return cand if val > 0 else CurveClass(self.ctx, tuple(-c for c in scaled))

    def __str__(self):
        parts = []
        if self.coeffs[0] != 0:
            parts.append("l" if self.coeffs[0] == 1 else f"{self.coeffs[0]}l")
        for i, c in enumerate(self.coeffs[1:], start=1):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+ f{i}")
            elif c == -1:
                parts.append(f"- f{i}")
            elif c > 0:
                parts.append(f"+ {c}f{i}")
            else:
                parts.append(f"- {-c}f{i}")
        if not parts:
            return "0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out


def line_curve(ctx: LatticeContext) -> CurveClass:
    return CurveClass(ctx, (1,) + (0,) * ctx.k)


def fiber_curve(ctx: LatticeContext, i: int) -> CurveClass:
    coeffs = [0] * (ctx.k + 1)
    coeffs[i] = 1
    return CurveClass(ctx, tuple(coeffs))


def determinant_map(n: int) -> LinearMap:
    """The lattice isomorphism Pic(Bl_(n+4) P^2) -> Pic(Bl_(n+4) P^n).

    Defined for every n >= 2; the moduli-theoretic interpretation behind
    it is established only for n > 3, so reports downstream should carry
    that caveat for n in {2, 3} (see `small_n_caveat`).
    """
    if n < 2:
        raise DimensionError("target dimension must be >= 2")
    k = n + 4
    src = surface_context(k)
    tgt = make_context(n, k)
    images = [PicClass.from_natural(tgt, (-1,) + (1,) * k)]
    for i in range(1, k + 1):
        nat = [-1] + [1] * k
        nat[i] -= 2
        images.append(PicClass.from_natural(tgt, nat))
    rho = LinearMap.from_images(src, tgt, images)
    if rho(src.canonical_class()) != tgt.canonical_class():
        raise MapError("determinant map must fix the canonical class")
    return rho


def small_n_caveat(n: int) -> str | None:
    if n <= 3:
        return "n <= 3: the map is defined formally; its cone semantics are unverified"
    return None


def matched_generator(rho: LinearMap, i: int, v: PicClass) -> PicClass:
    """Apply the target-side generator matched to surface generator i under
    the marking-compatible identification: transpositions keep their index
    and the Cremona generator maps to the reflection through
    H - E_(s+2) - ... - E_k."""
    tgt = rho.target
    if i == 0:
        coeffs = [1] + [0] * tgt.k
        for j in range(4, tgt.k + 1):  # s = 2 on the source side
            coeffs[j] = 1
        return reflect(PicClass(tgt, tuple(coeffs)), v)
    return apply_generator(tgt, i, v)


@dataclass(frozen=True)
class DeterminantMapReport:
    n: int
    checks: tuple[tuple[str, bool], ...]
    caveat: str | None

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok in self.checks)


def verify_determinant_map(rho: LinearMap, trials: int = 50, seed: int = 0) -> DeterminantMapReport:
    """Exact identity battery for the determinant map; raises
    VerificationError with a counterexample on the first failure.

    Checked: the canonical class is fixed; equivariance on all generators
    under the matched identification; the pairing identities
    <rho L, K> = (n-1)(L.K) and <rho L, rho L'> = 4 (L.L') on the
    orthogonal complement of K (exhaustively on a basis and on random
    classes), with the mixed correction -ab(n-5)^2; and that after the
    marking reversal the restriction to K^perp doubles kperp_isometry and
    the equivariance takes the chain-reversing form.
    """
    src, tgt = rho.source, rho.target
    n = tgt.n
    k = tgt.k
    rng = random.Random(seed)
    checks: list[tuple[str, bool]] = []

    def record(name, ok, counterexample=None):
        checks.append((name, ok))
        if not ok:
            raise VerificationError(f"determinant map check failed: {name}", counterexample)

    record("canonical class fixed", rho(src.canonical_class()) == tgt.canonical_class())

    basis = list(src.basis())
    ok = True
    bad = None
    for i in range(k):
        for b in basis:
            lhs = rho(apply_generator(src, i, b))
            rhs = matched_generator(rho, i, rho(b))
            if lhs != rhs:
                ok, bad = False, (i, b)
                break
        if not ok:
            break
    record("equivariance on all generators (matched markings)", ok, bad)

    def rand_class(ctx):
        return ctx.from_coeffs([rng.randint(-9, 9) for _ in range(ctx.k + 1)])

    ks, kx = src.canonical_class(), tgt.canonical_class()
    ok = True
    bad = None
    for _ in range(trials):
        L = rand_class(src)
        if coble_pair(rho(L), kx) != (n - 1) * coble_pair(L, ks):
            ok, bad = False, L
            break
    record("pairing against the canonical class scales by n-1", ok, bad)

    roots = [simple_root(src, i) for i in range(k)]
    ok = True
    bad = None
    for a in roots:
        for b in roots:
            if coble_pair(rho(a), rho(b)) != 4 * coble_pair(a, b):
                ok, bad = False, (a, b)
                break
        if not ok:
            break
    for _ in range(trials):
        cs = [rng.randint(-6, 6) for _ in roots]
        ds = [rng.randint(-6, 6) for _ in roots]
        u = sum((c * r for c, r in zip(cs, roots)), src.zero())
        v = sum((c * r for c, r in zip(ds, roots)), src.zero())
        if coble_pair(rho(u), rho(v)) != 4 * coble_pair(u, v):
            ok, bad = False, (u, v)
            break
    record("pairing quadruples on the orthogonal complement of K", ok, bad)

    ok = True
    bad = None
    for _ in range(trials):
        a, b = rng.randint(-4, 4), rng.randint(-4, 4)
        cs = [rng.randint(-5, 5) for _ in roots]
        ds = [rng.randint(-5, 5) for _ in roots]
        L = a * ks + sum((c * r for c, r in zip(cs, roots)), src.zero())
        Lp = b * ks + sum((c * r for c, r in zip(ds, roots)), src.zero())
        want = 4 * coble_pair(L, Lp) - a * b * (n - 5) ** 2
        if coble_pair(rho(L), rho(Lp)) != want:
            ok, bad = False, (L, Lp)
            break
    record("mixed pairing identity with the (n-5)^2 correction", ok, bad)

    rev = marking_reversal(src)
    rho_rev = rho.compose(rev)
    ok = True
    bad = None
    for i in range(k):
        img = rho_rev(simple_root(src, i))
        want = 2 * kperp_isometry(simple_root(src, i))
        if img != want:
            ok, bad = False, i
            break
    record("reversal-composed map doubles the K-orthogonal isometry", ok, bad)

    ok = True
    bad = None
    for i in range(k):
        j = 0 if i == 0 else k - i
        for b in basis:
            lhs = rho_rev(apply_generator(src, i, b))
            rhs_in = rho_rev(b)
            rhs = (
                reflect(simple_root(tgt, 0), rhs_in)
                if j == 0
                else apply_generator(tgt, j, rhs_in)
            )
            if lhs != rhs:
                ok, bad = False, (i, b)
                break
        if not ok:
            break
    record("reversal-composed map is chain-reversing equivariant", ok, bad)

    return DeterminantMapReport(n, tuple(checks), small_n_caveat(n))


def wall_to_curve(wall: Wall, rho: LinearMap) -> CurveClass:
    """The primitive curve class on the blowup of P^n whose orthogonal
    hyperplane is the image of the wall hyperplane, oriented to pair
    positively with images of standard-chamber polarizations (this makes
    the walls h - e_i, h - e_i - e_j and h map to f_i, l - f_i - f_j and
    l respectively)."""
    src, tgt = rho.source, rho.target
    if wall.cls.ctx != src:
        raise DomainError("wall does not live on the map's source surface")
    normal = wall.normal
    gram = [[la.frac(coble_pair(a, b)) for b in src.basis()] for a in src.basis()]
    g = la.matvec(gram, normal.natural())
    inv_t = la.transpose(la.invert(rho.matrix))
    functional = la.matvec(inv_t, g)
    coeffs = (functional[0],) + tuple(-c for c in functional[1:])
    lcm = 1
    for c in coeffs:
        den = Fraction(c).denominator
        lcm = lcm * den // gcd(lcm, den)
    integral = tuple(int(c * lcm) for c in coeffs)
    from .piclattice import symmetric_polarization

    anchor = rho(symmetric_polarization(src, tgt.n - 2))
    return CurveClass(tgt, integral).primitive_oriented(anchor)


@dataclass(frozen=True)
class ConeFacet:
    wall: Wall
    normal_on_surface: PicClass
    image_normal: PicClass
    dual_curve: CurveClass


@dataclass(frozen=True)
class NefConeImage:
    chamber_rep_image: PicClass
    facets: tuple[ConeFacet, ...]


def nef_cone_image(chamber: Chamber, rho: LinearMap) -> NefConeImage:
    """Facet presentation of the image of a chamber closure: for each
    bounding wall, the image of its normal and the curve class dual to the
    image hyperplane.  The chamber must lie in the region mapping onto the
    movable cone."""
    rep = chamber.rep
    if rep.ctx != rho.source:
        raise DomainError("chamber does not live on the map's source surface")
    if not cone_membership(rep, Region.MOVABLE):
        raise RegionError("chamber representative is outside the movable-side region")
    if not chamber.known_walls:
        raise DomainError("chamber carries no bounding wall data")
    facets = []
    for wall, _ in chamber.known_walls:
        facets.append(
            ConeFacet(wall, wall.normal, rho(wall.normal), wall_to_curve(wall, rho))
        )
    return NefConeImage(rho(rep), tuple(facets))


@dataclass(frozen=True)
class EffectiveConeReport:
    k: int
    trials: int
    matched_word_identity: bool
    anticanonical_boundary: bool | None  # k = 9 only
    failure: tuple | None

    @property
    def all_pass(self) -> bool:
        return self.matched_word_identity and self.anticanonical_boundary is not False


def effective_cone_check(n: int, budget: int = 100, seed: int = 0) -> EffectiveConeReport:
    """Elementwise check that the map carries the conic orbit onto twice
    the orbit of E_1 under matched random words; for k = 9 also checks
    that the anticanonical class (on the boundary of the source cone,
    where it pairs to zero with K) maps to the anticanonical class."""
    rho = determinant_map(n)
    src, tgt = rho.source, rho.target
    k = src.k
    rng = random.Random(seed)
    conic = src.from_coeffs((1, 1) + (0,) * (k - 1))  # h - e_1
    e1 = tgt.exceptional(1)
    failure = None
    ok = True
    for _ in range(budget):
        word = [rng.randrange(k) for _ in range(rng.randint(1, 20))]
        lhs_in, rhs_in = conic, e1
        for i in word:
            lhs_in = apply_generator(src, i, lhs_in)
            rhs_in = matched_generator(rho, i, rhs_in)
        if rho(lhs_in) != 2 * rhs_in:
            ok, failure = False, (tuple(word), lhs_in)
            break
    anti = None
    if k == 9:
        ks, kx = src.canonical_class(), tgt.canonical_class()
        anti = rho(-1 * ks) == -1 * kx and coble_pair(ks, -1 * ks) == 0
    return EffectiveConeReport(k, budget, ok, anti, failure)


@dataclass(frozen=True)
class ExtensionDimensionReport:
    k: int
    chi: int
    expected_h1: int


def gale_extension_check(k: int) -> ExtensionDimensionReport:
    """Euler characteristic bookkeeping for the class h - e_1 - ... - e_k
    on the surface: chi = 3 - k, so with vanishing h^0 and h^2 (general
    position) the extension space has dimension k - 3 = n + 1."""
    if k < 6:
        raise DimensionError("extension dimension check needs k >= 6")
    ctx = surface_context(k)
    cls = ctx.from_coeffs((1,) + (1,) * k)
    chi = chi_line_bundle(cls)
    return ExtensionDimensionReport(k, int(chi), k - 3)
