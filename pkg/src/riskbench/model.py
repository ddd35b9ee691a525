"""Risk model representation and the risk formula.

A model is an integer bias plus one integer coefficient per non-target
column.  The predicted risk for a row is::

    P(Y = 1) = 1 / (1 + exp(bias - score))

where ``score`` is the integer dot product of coefficients and row values.
Higher score means higher risk; score == bias maps to exactly 0.5.
"""

from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataset import DataSet, schema_compatible
from .errors import DimensionError, ParseError, SchemaMismatchError, ValidationError

_SOLVER_MODES = ("exact", "heuristic", "auto")

# Smallest/largest doubles strictly inside (0, 1): predicted risks are
# clamped here so the open-interval contract holds even in deep saturation.
_MIN_P = math.nextafter(0.0, 1.0)
_MAX_P = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class FitConfig:
    """User-facing solve parameters: model size, boxes, runtime."""

    max_model_size: int = 5
    coef_min: int = -5
    coef_max: int = 5
    bias_min: int = -20
    bias_max: int = 20
    l0_penalty: float = 1e-3
    time_limit_seconds: float = 60.0
    solver_mode: str = "auto"
    random_seed: int = 0

    def __post_init__(self) -> None:
        if self.max_model_size < 1:
            raise ValidationError("max_model_size must be >= 1")
        if not self.coef_min <= 0 <= self.coef_max:
            raise ValidationError("coefficient box must contain 0")
        if not self.bias_min <= 0 <= self.bias_max:
            raise ValidationError("bias box must contain 0")
        if self.l0_penalty < 0:
            raise ValidationError("l0_penalty must be >= 0")
        if self.time_limit_seconds <= 0:
            raise ValidationError("time_limit_seconds must be > 0")
        if self.solver_mode not in _SOLVER_MODES:
            raise ValidationError(
                f"solver_mode must be one of {_SOLVER_MODES}, got {self.solver_mode!r}"
            )

    def to_dict(self) -> dict:
        return {
            "max_model_size": self.max_model_size,
            "coef_min": self.coef_min,
            "coef_max": self.coef_max,
            "bias_min": self.bias_min,
            "bias_max": self.bias_max,
            "l0_penalty": self.l0_penalty,
            "time_limit_seconds": self.time_limit_seconds,
            "solver_mode": self.solver_mode,
            "random_seed": self.random_seed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FitConfig":
        known = {f: doc[f] for f in cls.__dataclass_fields__ if f in doc}
        return cls(**known)


@dataclass(frozen=True)
class ModelMeta:
    """Creation record saved alongside the solution."""

    fit_config: FitConfig
    objective: float
    solver_status: str
    solver: str
    wall_time_seconds: float
    created_at: str


@dataclass(frozen=True)
class RiskModel:
    """Learned artifact: training header, integer bias and coefficients."""

    header: tuple[str, ...]
    bias: int
    coefficients: tuple[int, ...]
    meta: ModelMeta

    def __post_init__(self) -> None:
        if len(self.coefficients) != len(self.header) - 1:
            raise ValidationError(
                f"model needs {len(self.header) - 1} coefficients, "
                f"got {len(self.coefficients)}"
            )
        cfg = self.meta.fit_config
        if not cfg.bias_min <= self.bias <= cfg.bias_max:
            raise ValidationError(f"bias {self.bias} outside its box")
        for j, c in enumerate(self.coefficients):
            if not cfg.coef_min <= c <= cfg.coef_max:
                raise ValidationError(
                    f"coefficient {c} for {self.header[j + 1]!r} outside its box"
                )
        if self.model_size > cfg.max_model_size:
            raise ValidationError(
                f"model size {self.model_size} exceeds cap {cfg.max_model_size}"
            )

    @property
    def model_size(self) -> int:
        return sum(1 for c in self.coefficients if c != 0)


def created_at_now() -> str:
    """ISO-8601 UTC timestamp; honors SOURCE_DATE_EPOCH for reproducibility."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    stamp = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(stamp))


def risk_probability(bias: int, total: int | float) -> float:
    """The risk formula as a scalar: sigmoid(total - bias), open interval."""
    m = float(total) - float(bias)
    if m >= 0:
        p = 1.0 / (1.0 + math.exp(-m))
    else:
        e = math.exp(m)
        p = e / (1.0 + e)
    return min(max(p, _MIN_P), _MAX_P)


def score(model: RiskModel, row: Sequence[int]) -> int:
    """Integer dot product of coefficients and row values."""
    if len(row) != len(model.coefficients):
        raise DimensionError(
            f"row has {len(row)} values, model has {len(model.coefficients)} "
            "coefficients"
        )
    return sum(c * int(v) for c, v in zip(model.coefficients, row))


def predict_risk(model: RiskModel, row: Sequence[int]) -> float:
    """Predicted probability of the positive target for one row."""
    return risk_probability(model.bias, score(model, row))


def _margins(X: np.ndarray, coefficients: np.ndarray, bias: int) -> np.ndarray:
    return X.astype(np.float64) @ coefficients.astype(np.float64) - float(bias)


def mean_logistic_loss(margins: np.ndarray, y: np.ndarray) -> float:
    """Numerically stable mean of -y log p - (1-y) log(1-p), p = sigmoid(m)."""
    z = (2.0 * y - 1.0) * margins
    return float(np.logaddexp(0.0, -z).mean())


def objective_value(
    margins: np.ndarray, y: np.ndarray, nnz: int, l0_penalty: float
) -> float:
    return mean_logistic_loss(margins, y) + l0_penalty * nnz


def dataset_arrays(ds: DataSet) -> tuple[np.ndarray, np.ndarray]:
    """Split a dataset into (X, y) integer arrays."""
    if ds.n_rows == 0:
        raise ValidationError("dataset has no rows")
    mat = np.asarray(ds.rows, dtype=np.int64)
    return mat[:, 1:], mat[:, 0]


def logistic_loss(model: RiskModel, ds: DataSet) -> float:
    """Mean logistic loss of the model on a schema-compatible dataset."""
    if not schema_compatible(model, ds):
        raise SchemaMismatchError(
            "model and dataset have different column layouts: "
            + _first_header_difference(model.header, ds.header)
        )
    X, y = dataset_arrays(ds)
    coefs = np.asarray(model.coefficients, dtype=np.int64)
    return mean_logistic_loss(_margins(X, coefs, model.bias), y.astype(np.float64))


def _first_header_difference(a: Sequence[str], b: Sequence[str]) -> str:
    for i, (ca, cb) in enumerate(zip(a, b)):
        if ca != cb:
            return f"column {i} is {ca!r} vs {cb!r}"
    return f"widths differ ({len(a)} vs {len(b)} columns)"


MODEL_DOCUMENT_KEYS = (
    "header",
    "bias",
    "coefficients",
    "fit_config",
    "objective",
    "solver_status",
    "solver",
    "wall_time_seconds",
    "created_at",
)


def model_to_document(model: RiskModel) -> dict:
    """JSON-ready document with the repo's fixed key set."""
    return {
        "header": list(model.header),
        "bias": model.bias,
        "coefficients": list(model.coefficients),
        "fit_config": model.meta.fit_config.to_dict(),
        "objective": model.meta.objective,
        "solver_status": model.meta.solver_status,
        "solver": model.meta.solver,
        "wall_time_seconds": model.meta.wall_time_seconds,
        "created_at": model.meta.created_at,
    }


def model_from_document(doc: dict) -> RiskModel:
    missing = [k for k in MODEL_DOCUMENT_KEYS if k not in doc]
    if missing:
        raise ParseError(f"model document missing keys {missing}")
    cfg = FitConfig.from_dict(doc["fit_config"])
    meta = ModelMeta(
        fit_config=cfg,
        objective=float(doc["objective"]),
        solver_status=str(doc["solver_status"]),
        solver=str(doc["solver"]),
        wall_time_seconds=float(doc["wall_time_seconds"]),
        created_at=str(doc["created_at"]),
    )
    return RiskModel(
        header=tuple(doc["header"]),
        bias=int(doc["bias"]),
        coefficients=tuple(int(c) for c in doc["coefficients"]),
        meta=meta,
    )


def write_model(model: RiskModel, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(model_to_document(model), indent=2) + "\n", encoding="utf-8"
    )


def read_model(path: str | Path) -> RiskModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"model document parse failure: {exc.msg}") from None
    return model_from_document(doc)
