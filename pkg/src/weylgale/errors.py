"""Exception types shared across the package."""


class WeylGaleError(Exception):
    """Base class for all package errors."""


class DimensionError(WeylGaleError):
    """Invalid ambient dimension or point count."""


class ContextError(WeylGaleError):
    """Operands live in different lattice contexts."""


class RootError(WeylGaleError):
    """Class is not a valid reflection root."""


class BoundError(WeylGaleError):
    """A search or enumeration bound was violated or exhausted."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DomainError(WeylGaleError):
    """Input lies outside the region where the operation is defined."""


class DegenerateError(WeylGaleError):
    """Point configuration is degenerate for the requested operation."""


class UnboundedError(WeylGaleError):
    """The requested enumeration has no finite completeness bound."""


class HypothesisError(WeylGaleError):
    """A checked hypothesis of a decomposition failed, with a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OnWallError(WeylGaleError):
    """A polarization expected to be wall-free lies on walls."""

    def __init__(self, message, walls=()):
        super().__init__(message)
        self.walls = tuple(walls)


class RegionError(WeylGaleError):
    """A segment or chamber leaves the valid region."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class MapError(WeylGaleError):
    """A linear map is singular or an image is not of the expected shape."""


class InfiniteWallsError(WeylGaleError):
    """The requested point lies on infinitely many walls."""


class BoundaryUndecidableError(WeylGaleError):
    """Membership is only semi-decidable on this boundary stratum."""


class VerificationError(WeylGaleError):
    """An exact identity check failed; carries the counterexample."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
