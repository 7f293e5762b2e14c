"""Picard lattices of blowups of projective space.

A class is stored as coefficients (d; m_1, ..., m_k) meaning
d*H - sum_i m_i E_i, so exceptional classes have a -1 entry.  The Coble
pairing is (H,H) = n-1, (H,E_i) = 0, (E_i,E_j) = -delta_ij; for n = 2 it
is the intersection product of the surface.  All arithmetic is exact
(ints and fractions.Fraction); contexts and classes are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from ._linalg import frac
from .errors import ContextError, DimensionError


@dataclass(frozen=True)
class LatticeContext:
    """Ambient data (n, k) for the lattice of a blowup of P^n at k points."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 2:
            raise DimensionError(f"ambient dimension must be >= 2, got {self.n}")
        if self.k < 0:
            raise DimensionError(f"point count must be >= 0, got {self.k}")

    @property
    def rank(self) -> int:
        return self.k + 1

    def zero(self) -> "PicClass":
        return PicClass(self, (0,) * (self.k + 1))

    def hyperplane(self) -> "PicClass":
        return PicClass(self, (1,) + (0,) * self.k)

    def exceptional(self, i: int) -> "PicClass":
        """The class E_i, 1-indexed."""
        if not 1 <= i <= self.k:
            raise IndexError(f"exceptional index {i} out of range 1..{self.k}")
        coeffs = [0] * (self.k + 1)
        coeffs[i] = -1
        return PicClass(self, tuple(coeffs))

    def canonical_class(self) -> "PicClass":
        # K = -(n+1) H + (n-1) sum E_i
        return PicClass(self, (-(self.n + 1),) + (-(self.n - 1),) * self.k)

    def from_coeffs(self, coeffs) -> "PicClass":
        return PicClass(self, tuple(frac(c) for c in coeffs))

    def basis(self):
        yield self.hyperplane()
        for i in range(1, self.k + 1):
            yield self.exceptional(i)


def make_context(n: int, k: int) -> LatticeContext:
    """Context for Bl_k P^n; requires k >= n+1 so Cremona centers exist."""
    if n < 2:
        raise DimensionError(f"ambient dimension must be >= 2, got {n}")
    if k < n + 1:
        raise DimensionError(f"need at least n+1 = {n + 1} points, got {k}")
    return LatticeContext(n, k)


def surface_context(k: int) -> LatticeContext:
    """Context for Bl_k P^2; valid for any k >= 0."""
    return LatticeContext(2, k)


@dataclass(frozen=True)
class PicClass:
    """A rational divisor class d*H - sum m_i E_i in a fixed context."""

    ctx: LatticeContext
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.k + 1:
            raise DimensionError(
                f"expected {self.ctx.k + 1} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(frac(c) for c in self.coeffs))

    @property
    def deg(self):
        """The H-coefficient d."""
        return self.coeffs[0]

    def mult(self, i: int):
        """The multiplicity m_i, 1-indexed."""
        return self.coeffs[i]

    def natural(self) -> tuple:
        """Coefficients in the basis (H, E_1..E_k): (d, -m_1, ..., -m_k)."""
        return (self.coeffs[0],) + tuple(-c for c in self.coeffs[1:])

    @classmethod
    def from_natural(cls, ctx: LatticeContext, nat) -> "PicClass":
        return cls(ctx, (nat[0],) + tuple(-c for c in nat[1:]))

    def _check(self, other: "PicClass"):
        if self.ctx != other.ctx:
            raise ContextError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        return PicClass(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __sub__(self, other):
        self._check(other)
        return PicClass(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return PicClass(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar):
        return PicClass(self.ctx, tuple(frac(scalar * a) for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: "PicClass"):
        """Coble pairing with another class in the same context."""
        self._check(other)
        s = sum(a * b for a, b in zip(self.coeffs[1:], other.coeffs[1:]))
        return frac((self.ctx.n - 1) * self.coeffs[0] * other.coeffs[0] - s)

    @property
    def square(self):
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def primitive(self) -> "PicClass":
        """Divide an integral class by the gcd of its coefficients."""
        if not self.is_integral() or self.is_zero():
            return self
        g = reduce(gcd, (abs(c) for c in self.coeffs))
        return PicClass(self.ctx, tuple(c // g for c in self.coeffs))

    def key(self) -> tuple:
        return self.coeffs

    def __str__(self):
        h, e = ("h", "e") if self.ctx.n == 2 else ("H", "E")
        parts = []
        if self.coeffs[0] != 0:
            parts.append(f"{self.coeffs[0]}{h}" if self.coeffs[0] != 1 else h)
        for i, m in enumerate(self.coeffs[1:], start=1):
            if m == 0:
                continue
            c = -m
            if c == 1:
                parts.append(f"+ {e}{i}")
            elif c == -1:
                parts.append(f"- {e}{i}")
            elif c > 0:
                parts.append(f"+ {c}{e}{i}")
            else:
                parts.append(f"- {-c}{e}{i}")
        if not parts:
            return "0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else out


def coble_pair(a: PicClass, b: PicClass):
    """The Coble pairing (symmetric, bilinear, exact)."""
    return a.dot(b)


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric form given by its values on the basis (H, E_i)."""

    ctx: LatticeContext
    hh: int | Fraction
    he: int | Fraction
    ee_diag: int | Fraction
    ee_off: int | Fraction

    def pair(self, a: PicClass, b: PicClass):
        if a.ctx != self.ctx or b.ctx != self.ctx:
            raise ContextError("class context does not match the form's context")
        x, y = a.natural(), b.natural()
        sx, sy = sum(x[1:]), sum(y[1:])
        dxy = sum(u * v for u, v in zip(x[1:], y[1:]))
        return frac(
            self.hh * x[0] * y[0]
            + self.he * (x[0] * sy + y[0] * sx)
            + self.ee_off * (sx * sy - dxy)
            + self.ee_diag * dxy
        )


def pairing_family(ctx: LatticeContext, c) -> BilinearForm:
    """The one-parameter family of forms turning every Cremona involution
    into a reflection through a (-2)-class; c = 0 recovers the Coble pairing.
    """
    c = frac(c)
    n = ctx.n
    return BilinearForm(
        ctx,
        hh=frac((n + 1) ** 2 * c + (n - 1)),
        he=frac((n + 1) * c),
        ee_diag=frac(c - 1),
        ee_off=c,
    )


def chi_line_bundle(d: PicClass):
    """Riemann-Roch Euler characteristic 1 + (D^2 - D.K)/2 on a surface."""
    if d.ctx.n != 2:
        raise DimensionError("Euler characteristic formula requires a surface context")
    k = d.ctx.canonical_class()
    return frac(1 + Fraction(d.dot(d) - d.dot(k), 2))


@dataclass(frozen=True)
class ChernTriple:
    """Rank, first Chern class, and second Chern character of a sheaf."""

    rank: int
    c1: PicClass
    ch2: int | Fraction

    def __post_init__(self):
        if self.rank < 0:
            raise DimensionError("rank must be nonnegative")
        object.__setattr__(self, "ch2", frac(self.ch2))


def chi_sheaf(t: ChernTriple):
    """Euler characteristic ch2 + c1.(-K)/2 + rank on a surface."""
    if t.c1.ctx.n != 2:
        raise DimensionError("sheaf Euler characteristic requires a surface context")
    k = t.c1.ctx.canonical_class()
    return frac(t.ch2 + Fraction(t.c1.dot(-k), 2) + t.rank)


def moduli_dimension(k: int) -> int:
    """Dimension k - 4 of the relevant rank-2 sheaf moduli on Bl_k P^2."""
    if k < 6:
        raise DimensionError(f"moduli dimension formula needs k >= 6, got {k}")
    return k - 4


def symmetric_polarization(ctx: LatticeContext, a) -> PicClass:
    """The class (a+3)h - sum e_i = -K + a*h on a surface context."""
    if ctx.n != 2:
        raise DimensionError("symmetric polarization family lives on a surface context")
    return PicClass(ctx, (frac(Fraction(a) + 3),) + (1,) * ctx.k)
