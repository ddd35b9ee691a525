"""Threshold-sweep evaluation of a model on a compatible dataset.

A prediction at threshold t is positive iff the predicted risk is
strictly greater than t. Ratio metrics with a 0/0 denominator are
reported as None (serialized as null) rather than a made-up 0 or 1, so
chart consumers can show gaps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import DataSet, schema_compatible
from .errors import SchemaMismatchError, ValidationError
from .model import (
    RiskModel,
    _first_header_difference,
    dataset_arrays,
    risk_probability,
)

DEFAULT_THRESHOLDS = tuple(round(0.05 * i, 2) for i in range(1, 20))


@dataclass(frozen=True)
class ThresholdRow:
    threshold: float
    tp: int
    fp: int
    tn: int
    fn: int
    precision: float | None
    recall: float | None
    accuracy: float | None
    f1: float | None


@dataclass(frozen=True)
class ValidationReport:
    model_ref: str
    dataset_ref: str
    n: int
    rows: tuple[ThresholdRow, ...]
    # per-row predictions are kept so more thresholds can be added to an
    # existing report without the model or the dataset at hand
    risks: tuple[float, ...]
    labels: tuple[int, ...]

    @property
    def thresholds(self) -> tuple[float, ...]:
        return tuple(row.threshold for row in self.rows)


def _check_thresholds(values) -> list[float]:
    out = []
    for t in values:
        t = float(t)
        if not 0.0 < t < 1.0:
            raise ValidationError(f"threshold {t} outside the open interval (0, 1)")
        out.append(t)
    return out


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def _row(threshold: float, risks: np.ndarray, labels: np.ndarray) -> ThresholdRow:
    pred = risks > threshold
    pos = labels == 1
    tp = int(np.count_nonzero(pred & pos))
    fp = int(np.count_nonzero(pred & ~pos))
    fn = int(np.count_nonzero(~pred & pos))
    tn = int(np.count_nonzero(~pred & ~pos))
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    accuracy = _ratio(tp + tn, tp + fp + tn + fn)
    if precision is None or recall is None or precision + recall == 0.0:
        f1 = None
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return ThresholdRow(
        threshold=threshold,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        precision=precision,
        recall=recall,
        accuracy=accuracy,
        f1=f1,
    )


def _assert_monotone(rows: tuple[ThresholdRow, ...], n: int) -> None:
    prev = None
    for row in rows:
        assert row.tp + row.fp + row.tn + row.fn == n
        if prev is not None:
            assert row.tp <= prev.tp and row.fp <= prev.fp
            assert row.tn >= prev.tn and row.fn >= prev.fn
        prev = row


def validate(
    model: RiskModel,
    ds: DataSet,
    thresholds=None,
    *,
    model_ref: str = "model",
    dataset_ref: str = "dataset",
) -> ValidationReport:
    """Evaluate the model on the dataset across a threshold grid.

    Thresholds default to 0.05 .. 0.95 in steps of 0.05; duplicates are
    dropped and the report is sorted by threshold.
    """
    if not schema_compatible(model, ds):
        raise SchemaMismatchError(
            "model and dataset have different column layouts: "
            + _first_header_difference(model.header, ds.header)
        )
    grid = _check_thresholds(
        DEFAULT_THRESHOLDS if thresholds is None else thresholds
    )
    if not grid:
        raise ValidationError("threshold list must not be empty")
    X, y = dataset_arrays(ds)
    scores = X @ np.asarray(model.coefficients, dtype=np.int64)
    # scores live on a small integer lattice: compute each distinct risk
    # once through the same scalar formula the predictor uses
    by_score = {int(s): risk_probability(model.bias, int(s)) for s in set(scores)}
    risks = np.array([by_score[int(s)] for s in scores], dtype=np.float64)
    labels = y.astype(np.int64)

    rows = tuple(_row(t, risks, labels) for t in sorted(set(grid)))
    _assert_monotone(rows, len(labels))
    return ValidationReport(
        model_ref=model_ref,
        dataset_ref=dataset_ref,
        n=len(labels),
        rows=rows,
        risks=tuple(float(r) for r in risks),
        labels=tuple(int(v) for v in labels),
    )


def add_thresholds(report: ValidationReport, extra) -> ValidationReport:
    """Report with extra thresholds merged in; existing rows are reused."""
    additions = _check_thresholds(extra)
    have = {row.threshold: row for row in report.rows}
    risks = np.asarray(report.risks)
    labels = np.asarray(report.labels)
    for t in additions:
        if t not in have:
            have[t] = _row(t, risks, labels)
    rows = tuple(have[t] for t in sorted(have))
    _assert_monotone(rows, report.n)
    return ValidationReport(
        model_ref=report.model_ref,
        dataset_ref=report.dataset_ref,
        n=report.n,
        rows=rows,
        risks=report.risks,
        labels=report.labels,
    )


def report_document(report: ValidationReport) -> dict:
    """JSON-ready form: identifiers, n, one object per threshold."""
    return {
        "model": report.model_ref,
        "dataset": report.dataset_ref,
        "n": report.n,
        "rows": [
            {
                "threshold": row.threshold,
                "tp": row.tp,
                "fp": row.fp,
                "tn": row.tn,
                "fn": row.fn,
                "precision": row.precision,
                "recall": row.recall,
                "accuracy": row.accuracy,
                "f1": row.f1,
            }
            for row in report.rows
        ],
    }
