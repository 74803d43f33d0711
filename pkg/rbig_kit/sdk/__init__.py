"""SDK package for rbig-kit: exceptions, report models and utilities."""

from rbig_kit.sdk.exceptions import (
    RbigError,
    ConfigurationError,
    DataValidationError,
    ShapeError,
    InsufficientDataError,
    DomainError,
    DegenerateMarginalError,
    DatasetError,
    DatasetParseError,
    ModelFileError,
    CorruptModelError,
    ModelVersionError,
)

from rbig_kit.sdk.models import (
    NegentropyEstimate,
    GaussianityVerdict,
    FitTraceRecord,
    FitTrace,
)

__all__ = [
    # Exceptions
    "RbigError",
    "ConfigurationError",
    "DataValidationError",
    "ShapeError",
    "InsufficientDataError",
    "DomainError",
    "DegenerateMarginalError",
    "DatasetError",
    "DatasetParseError",
    "ModelFileError",
    "CorruptModelError",
    "ModelVersionError",
    # Models
    "NegentropyEstimate",
    "GaussianityVerdict",
    "FitTraceRecord",
    "FitTrace",
]
