"""Clinician-facing view of a model: named items, points, risk lookup.

An item is one nonzero-coefficient column. Expansion columns
(``<feature>EQ<value>``) are binary items answered yes/no; plain columns
are integer items answered with the raw feature value. The risk lookup
maps total points to probability with the same formula as prediction, so
reading the table and scoring a row can never disagree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import parse_column_name
from .errors import ValidationError
from .model import RiskModel, risk_probability
from .registry import FeatureRegistry

# Enumerating achievable totals is only tractable for all-binary tables;
# 2**20 subsets is the cutoff.
_ENUMERATION_LIMIT = 20

# Fallback display window: 21 integer totals centered on the bias, which
# spans risk from under 0.01% to over 99.99%.
_WINDOW_RADIUS = 10


@dataclass(frozen=True)
class ScoringItem:
    column: str
    label: str
    points: int
    is_binary: bool


@dataclass(frozen=True)
class ScoringTable:
    items: tuple[ScoringItem, ...]
    bias: int
    risk_rows: tuple[tuple[int, float], ...]
    warnings: tuple[str, ...]


def _item_label(
    column: str, registry: FeatureRegistry, warnings: list[str]
) -> str:
    feature_id, value = parse_column_name(column)
    if feature_id not in registry:
        warnings.append(
            f"column {column!r} does not match any registered feature; "
            "using the raw column name"
        )
        return column
    spec = registry.get(feature_id)
    if value is None:
        if not spec.is_integer:
            warnings.append(
                f"column {column!r} lacks the expected value suffix for "
                f"feature {feature_id!r}; using the raw column name"
            )
            return column
        return spec.label
    if spec.is_integer or value not in spec.value_domain:
        warnings.append(
            f"column {column!r} names a value outside the domain of "
            f"feature {feature_id!r}; using the raw column name"
        )
        return column
    return f"{spec.label} = {value}"


def _achievable_totals(points: list[int]) -> list[int]:
    totals = {0}
    for p in points:
        totals |= {t + p for t in totals}
    return sorted(totals)


def to_scoring_table(model: RiskModel, registry: FeatureRegistry) -> ScoringTable:
    """Aggregate a model into its scoring-table view.

    Items are the nonzero-coefficient columns ordered by descending
    absolute points, ties by column order. Columns that cannot be
    resolved through the registry keep their raw name and add a warning
    instead of failing.
    """
    warnings: list[str] = []
    items: list[ScoringItem] = []
    for position, column in enumerate(model.header[1:]):
        points = model.coefficients[position]
        if points == 0:
            continue
        label = _item_label(column, registry, warnings)
        items.append(
            ScoringItem(
                column=column,
                label=label,
                points=points,
                is_binary=parse_column_name(column)[1] is not None,
            )
        )
    items.sort(
        key=lambda it: (-abs(it.points), model.header.index(it.column))
    )

    if all(it.is_binary for it in items) and len(items) <= _ENUMERATION_LIMIT:
        totals = _achievable_totals([it.points for it in items])
    else:
        totals = list(
            range(model.bias - _WINDOW_RADIUS, model.bias + _WINDOW_RADIUS + 1)
        )
    risk_rows = tuple((t, risk_probability(model.bias, t)) for t in totals)
    return ScoringTable(
        items=tuple(items),
        bias=model.bias,
        risk_rows=risk_rows,
        warnings=tuple(warnings),
    )


def evaluate_selection(
    table: ScoringTable, selection: dict[str, int]
) -> tuple[int, float]:
    """Total points and risk for a set of item answers.

    Binary items take 0 or 1, integer items any integer; items absent
    from the selection count as 0. Unknown keys and out-of-range values
    are rejected.
    """
    known = {it.column: it for it in table.items}
    for column in selection:
        if column not in known:
            raise ValidationError(f"selection names unknown item {column!r}")
    total = 0
    for item in table.items:
        value = selection.get(item.column, 0)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(
                f"item {item.column!r}: value {value!r} is not an integer"
            )
        if item.is_binary and value not in (0, 1):
            raise ValidationError(
                f"item {item.column!r} is binary, got {value!r}"
            )
        total += item.points * value
    return total, risk_probability(table.bias, total)


def coefficients_from_items(
    table: ScoringTable, header: tuple[str, ...]
) -> tuple[int, ...]:
    """Coefficient vector over ``header`` rebuilt from the table's items."""
    points = {it.column: it.points for it in table.items}
    unknown = set(points) - set(header[1:])
    if unknown:
        raise ValidationError(
            f"items {sorted(unknown)} are not columns of the header"
        )
    return tuple(points.get(column, 0) for column in header[1:])


def scoring_table_document(table: ScoringTable) -> dict:
    """JSON-ready form used by the service layer."""
    return {
        "items": [
            {
                "column": it.column,
                "label": it.label,
                "points": it.points,
                "is_binary": it.is_binary,
            }
            for it in table.items
        ],
        "bias": table.bias,
        "risk_rows": [[t, p] for t, p in table.risk_rows],
        "warnings": list(table.warnings),
    }
