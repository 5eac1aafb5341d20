"""Exception hierarchy shared by all ahn modules."""


class AHNError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(AHNError, ValueError):
    """Invalid argument: bad shape, non-finite value or out-of-range setting."""


class DataError(AHNError):
    """A data file could not be read or failed validation."""


class NoRowsError(DataError):
    """A CSV file contained a header but no data rows."""


class EmptySubsetError(AHNError):
    """A least-squares fit was requested for an empty subset."""


class NumericError(AHNError, ArithmeticError):
    """A numeric routine produced a non-finite result."""


class TrainingError(AHNError):
    """Training cannot proceed (e.g. every molecule lost its subset)."""


class ModelFormatError(AHNError):
    """A model document is unreadable or malformed."""


class VersionMismatchError(ModelFormatError):
    """A model document declares a format version this build does not support."""


class SchemaError(ModelFormatError):
    """A model document is syntactically or structurally invalid."""
