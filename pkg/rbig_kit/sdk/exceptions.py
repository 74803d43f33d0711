"""
Custom exceptions for rbig-kit.

Provides a hierarchy of exceptions for better error handling.
"""
from typing import Optional


class RbigError(Exception):
    """Base exception for all rbig-kit errors."""

    pass


class ConfigurationError(RbigError):
    """Configuration is invalid or names an unsupported feature."""

    pass


class DataValidationError(RbigError, ValueError):
    """Input data failed validation."""

    pass


class ShapeError(DataValidationError):
    """Array dimensions do not match what the model expects."""

    pass


class InsufficientDataError(DataValidationError):
    """Too few samples for the requested estimate."""

    pass


class DomainError(DataValidationError):
    """Argument outside the domain of a numerical function."""

    pass


class DegenerateMarginalError(RbigError, ValueError):
    """A one-dimensional sample has fewer than two distinct values."""

    def __init__(self, message: str, column: Optional[int] = None):
        super().__init__(message)
        self.column = column


class DatasetError(RbigError):
    """Dataset could not be ingested."""

    pass


class DatasetParseError(DatasetError):
    """A dataset line could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


class ModelFileError(RbigError):
    """Base exception for model persistence errors."""

    pass


class CorruptModelError(ModelFileError):
    """Model file is truncated, malformed or fails its checksum."""

    pass


class ModelVersionError(ModelFileError):
    """Model file was written by an unsupported format version."""

    def __init__(self, message: str, found: Optional[int] = None, supported: Optional[int] = None):
        super().__init__(message)
        self.found = found
        self.supported = supported
