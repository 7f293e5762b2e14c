"""Exact linear maps between Picard lattices of two contexts."""

from __future__ import annotations

from dataclasses import dataclass

from . import _linalg as la
from .errors import ContextError, MapError
from .piclattice import LatticeContext, PicClass


@dataclass(frozen=True)
class LinearMap:
    """A rational linear map given by its matrix in the natural bases.

    Column j of `matrix` is the image of the j-th source basis vector
    (h, e_1, ..., e_k) written in the target basis (H, E_1, ..., E_k).
    """

    source: LatticeContext
    target: LatticeContext
    matrix: tuple

    def __post_init__(self):
        if self.source.k != self.target.k:
            raise MapError("source and target must have the same number of points")
        m = la.mat(self.matrix)
        r = self.source.rank
        if len(m) != r or any(len(row) != r for row in m):
            raise MapError(f"matrix must be {r}x{r}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_images(cls, source, target, images) -> "LinearMap":
        """Build the map sending the source basis to the given classes."""
        cols = [img.natural() for img in images]
        return cls(source, target, la.transpose(cols))

    def __call__(self, v: PicClass) -> PicClass:
        if v.ctx != self.source:
            raise ContextError("class does not belong to the map's source context")
        return PicClass.from_natural(self.target, la.matvec(self.matrix, v.natural()))

    def is_invertible(self) -> bool:
        return la.det(self.matrix) != 0

    def inverse(self) -> "LinearMap":
        return LinearMap(self.target, self.source, la.invert(self.matrix))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self o other."""
        if other.target != self.source:
            raise ContextError("maps are not composable")
        return LinearMap(other.source, self.target, la.matmul(self.matrix, other.matrix))
