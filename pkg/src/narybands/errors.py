"""Exception types and the shared violation record."""

from typing import NamedTuple


class NaryBandError(Exception):
    """Base class for all package errors."""


class InputError(NaryBandError):
    """Malformed argument, document, or file."""


class DomainError(NaryBandError):
    """A required algebraic property does not hold for the given input."""

    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class ResourceError(NaryBandError):
    """A configured size or memory budget would be exceeded."""


class ConsistencyError(NaryBandError):
    """An internal invariant failed; some input was not what it claimed to be."""


class Violation(NamedTuple):
    """One finding from a validation pass that reports all problems at once."""

    code: str
    message: str
