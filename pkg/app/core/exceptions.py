"""
Exceptions
==========

Error hierarchy shared by the services, the CLI and the HTTP API.
Data errors map to CLI exit code 2, usage errors to exit code 1.
"""

from typing import Optional


class RdfSimError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(RdfSimError):
    """Command-line misuse (unknown flag, missing argument, empty approach list)."""


class DataError(RdfSimError, ValueError):
    """Input data could not be used."""


class NTriplesDocumentError(DataError):
    """The N-Triples document is not valid UTF-8."""


class VectorFileError(DataError):
    """A word2vec text document could not be loaded."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ProfileConfigError(DataError):
    """A JSON weight profile is malformed or invalid."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ScalingError(DataError):
    """Numeric similarity inputs are inconsistent (length mismatch, missing min-max statistics)."""


class EntityNotFoundError(DataError):
    """An entity id does not resolve to a subject of the dataset."""
