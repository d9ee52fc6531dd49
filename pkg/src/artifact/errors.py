"""Exception types raised across the package."""


class ArtifactError(Exception):
    """Base class for all package errors."""


class DomainError(ArtifactError, ValueError):
    """An argument lies outside the domain where a formula is valid."""


class SingularMatrix(ArtifactError, ArithmeticError):
    pass


class MissingValue(ArtifactError, KeyError):
    """A value table lacks a point needed by a stencil or expectation."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class DegenerateNodes(ArtifactError, ValueError):
    pass


class SingularSchur(ArtifactError, ArithmeticError):
    pass


class NearSingular(ArtifactError, ArithmeticError):
    pass


class HorizonTooLarge(ArtifactError, ValueError):
    pass
