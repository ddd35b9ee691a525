"""Workbench for building and validating integer risk scoring models."""

from .dataset import (
    DataSet,
    ProjectConfig,
    build_dataset,
    check_name,
    column_layout,
    dataset_header,
    decode_feature,
    encode_feature,
    parse_column_name,
    read_csv,
    schema_compatible,
    write_csv,
)
from .datasource import (
    CsvSource,
    EntityRecord,
    SyntheticSource,
    generate_synthetic,
    write_pool_csv,
)
from .errors import (
    BusyError,
    ConfigurationError,
    ConflictError,
    DataCompletenessError,
    DimensionError,
    EncodingError,
    FitCancelled,
    InfeasibleScaleError,
    NotFoundError,
    ParseError,
    RiskbenchError,
    SchemaMismatchError,
    ValidationError,
)
from .estimator import RiskScoreClassifier
from .jobs import FitJob, JobManager, job_document
from .model import (
    MODEL_DOCUMENT_KEYS,
    FitConfig,
    ModelMeta,
    RiskModel,
    dataset_arrays,
    logistic_loss,
    mean_logistic_loss,
    model_from_document,
    model_to_document,
    predict_risk,
    read_model,
    risk_probability,
    score,
    write_model,
)
from .registry import (
    FeatureRegistry,
    FeatureSpec,
    FeatureSummary,
    list_features,
    load_registry,
    write_registry,
)
from .scoring import (
    ScoringItem,
    ScoringTable,
    coefficients_from_items,
    evaluate_selection,
    scoring_table_document,
    to_scoring_table,
)
from .solvers import (
    enumeration_budget,
    fit,
    fit_exact,
    fit_heuristic,
)
from .store import ProjectStore
from .validation import (
    DEFAULT_THRESHOLDS,
    ValidationReport,
    add_thresholds,
    report_document,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BusyError",
    "ConfigurationError",
    "ConflictError",
    "CsvSource",
    "DEFAULT_THRESHOLDS",
    "DataCompletenessError",
    "DataSet",
    "DimensionError",
    "EncodingError",
    "EntityRecord",
    "FeatureRegistry",
    "FeatureSpec",
    "FeatureSummary",
    "FitCancelled",
    "FitConfig",
    "FitJob",
    "InfeasibleScaleError",
    "JobManager",
    "MODEL_DOCUMENT_KEYS",
    "ModelMeta",
    "NotFoundError",
    "ParseError",
    "ProjectConfig",
    "ProjectStore",
    "RiskModel",
    "RiskScoreClassifier",
    "RiskbenchError",
    "SchemaMismatchError",
    "ScoringItem",
    "ScoringTable",
    "SyntheticSource",
    "ValidationError",
    "ValidationReport",
    "add_thresholds",
    "build_dataset",
    "check_name",
    "coefficients_from_items",
    "column_layout",
    "dataset_arrays",
    "dataset_header",
    "decode_feature",
    "encode_feature",
    "enumeration_budget",
    "evaluate_selection",
    "fit",
    "fit_exact",
    "fit_heuristic",
    "generate_synthetic",
    "job_document",
    "list_features",
    "load_registry",
    "logistic_loss",
    "mean_logistic_loss",
    "model_from_document",
    "model_to_document",
    "parse_column_name",
    "predict_risk",
    "read_csv",
    "read_model",
    "report_document",
    "risk_probability",
    "schema_compatible",
    "score",
    "scoring_table_document",
    "to_scoring_table",
    "validate",
    "write_csv",
    "write_model",
    "write_pool_csv",
    "write_registry",
]
