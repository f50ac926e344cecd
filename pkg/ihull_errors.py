"""Exception hierarchy for the ihull workbench.

The command line maps these onto exit codes:

    ValidationError, PreconditionError  -> 1
    VerificationError                   -> 2
    CapExceededError                    -> 3
"""

from __future__ import annotations


class IHullError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 1


class ValidationError(IHullError):
    """Input that cannot describe the object it claims to describe."""


class PreconditionError(IHullError):
    """A well-formed input on which the requested operation is undefined."""


class CapExceededError(IHullError):
    """A configured resource cap was hit; no partial result is returned."""

    exit_code = 3

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeded the configured limit of {limit}")
        self.what = what
        self.limit = limit


class VerificationError(IHullError):
    """An internal cross-check produced a counterexample."""

    exit_code = 2
