"""Exception types shared across the workbench.

Every error carries a short machine-readable ``code`` used by the HTTP
service (status mapping) and the CLI (exit codes).
"""


class RiskbenchError(Exception):
    """Base class for all workbench errors."""

    code = "internal"


class ConfigurationError(RiskbenchError):
    """A configuration document (registry, project) is malformed."""

    code = "configuration"


class ValidationError(RiskbenchError):
    """An input violates a documented invariant."""

    code = "validation"


class EncodingError(ValidationError):
    """A raw value cannot be encoded under its feature declaration."""

    code = "encoding"


class SchemaMismatchError(ValidationError):
    """Model and dataset column layouts differ."""

    code = "schema-mismatch"


class DataCompletenessError(ValidationError):
    """An entity lacks a raw value for a requested feature."""

    code = "data-completeness"


class DimensionError(ValidationError):
    """A vector length does not match the model's coefficient count."""

    code = "dimension"


class ParseError(RiskbenchError):
    """A text artifact (CSV, JSON document) failed to parse."""

    code = "parse"


class NotFoundError(RiskbenchError):
    code = "not-found"


class ConflictError(RiskbenchError):
    code = "conflict"


class BusyError(RiskbenchError):
    """The store's per-project write lock could not be acquired in time."""

    code = "busy"


class InfeasibleScaleError(RiskbenchError):
    """Exact enumeration would exceed the candidate-evaluation budget."""

    code = "infeasible-scale"


class FitCancelled(RiskbenchError):
    """A fit was cancelled via its cooperative stop signal."""

    code = "cancelled"
