"""Exception types shared across the package."""


class MasseyKitError(Exception):
    """Base class for all package errors."""


class InvalidInput(MasseyKitError, ValueError):
    """Malformed or inconsistent input data."""


class InconsistentSystem(MasseyKitError):
    """A linear system M x = b has no solution (b is not in the image of M)."""


class SingularMatrix(MasseyKitError):
    """A matrix required to be invertible is singular."""


class WindowTooSmall(MasseyKitError):
    """A computation stepped outside the materialized window of an algebra."""


class MixedDegree(MasseyKitError):
    """An operation required a homogeneous cochain but got a mixed one."""


class NotADefiningSystem(MasseyKitError):
    """A connection does not satisfy the staged equations it was claimed to."""


class UnsupportedOperands(MasseyKitError):
    """Closed-form product rule applied outside its domain."""


class DomainError(MasseyKitError, ValueError):
    """Operator applied to an element outside its domain."""


class OverlappingSupports(InvalidInput):
    """Vertex supports required to be pairwise disjoint overlap."""


class CapExceeded(MasseyKitError):
    """A configured size cap (vertex count, resolution length, ...) was exceeded."""
