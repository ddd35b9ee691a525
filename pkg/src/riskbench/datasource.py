"""Entity data behind the feature registry's source queries.

Two built-in interpreters of ``source_query``:

* :class:`SyntheticSource` ignores the query string and serves a
  deterministic generated pool keyed by feature id.
* :class:`CsvSource` treats the query as a column name in a pool table
  (first column ``entity_id``, multi-valued cells semicolon-separated).

Synthetic value distributions (documented, not clinically calibrated):
integer goal-eligible features are Bernoulli(0.5) in {0, 1}; other integer
features are uniform on 0..99; categorical features are uniform over their
domain; multi-valued features include each domain token independently with
probability 0.35.  When a planted model is supplied, the goal feature's
label is drawn with probability 1/(1+exp(bias-score)) on the encoded row.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .dataset import column_layout, encode_feature, parse_column_name
from .errors import (
    DataCompletenessError,
    EncodingError,
    NotFoundError,
    ParseError,
    ValidationError,
)
from .model import RiskModel, risk_probability
from .registry import FeatureRegistry, FeatureSpec

MULTI_VALUE_SEPARATOR = ";"


@dataclass(frozen=True)
class EntityRecord:
    """One entity's raw values, keyed by feature id."""

    entity_id: str
    values: Mapping[str, object]


def _check_value(spec: FeatureSpec, raw: object, entity_id: str) -> object:
    # encode_feature performs the full flag/domain validation
    try:
        encode_feature(spec, raw)
    except EncodingError as exc:
        raise EncodingError(f"entity {entity_id!r}: {exc}") from None
    return raw


class SyntheticSource:
    """Deterministic in-memory pool standing in for the clinical database."""

    def __init__(self, records: Sequence[EntityRecord]):
        self._records = list(records)
        self._by_id = {r.entity_id: r for r in self._records}

    def __len__(self) -> int:
        return len(self._records)

    @property
    def records(self) -> list[EntityRecord]:
        return list(self._records)

    def fetch(
        self,
        entity_ids: Sequence[str] | None,
        features: Sequence[FeatureSpec],
    ) -> list[EntityRecord]:
        if entity_ids is None:
            selected = self._records
        else:
            selected = []
            for eid in entity_ids:
                if eid not in self._by_id:
                    raise NotFoundError(f"unknown entity id {eid!r}")
                selected.append(self._by_id[eid])
        out = []
        for record in selected:
            values = {}
            for spec in features:
                if spec.id not in record.values:
                    raise DataCompletenessError(
                        f"entity {record.entity_id!r} has no value for "
                        f"feature {spec.id!r}"
                    )
                values[spec.id] = record.values[spec.id]
            out.append(EntityRecord(entity_id=record.entity_id, values=values))
        return out


def _planted_inputs(
    registry: FeatureRegistry, planted_model: RiskModel
) -> tuple[str, list[str]]:
    """Derive (goal id, ordered input ids) from a planted model's header."""
    header = planted_model.header
    goal_id = header[0]
    if goal_id not in registry or not registry.get(goal_id).goal_eligible:
        raise ValidationError(
            f"planted model goal column {goal_id!r} is not a goal-eligible feature"
        )
    inputs: list[str] = []
    i = 1
    while i < len(header):
        fid, _ = parse_column_name(header[i])
        if fid not in registry:
            raise ValidationError(
                f"planted model column {header[i]!r} matches no registry feature"
            )
        spec = registry.get(fid)
        expected = column_layout(registry, [fid])
        block = list(header[i : i + len(expected)])
        if block != expected:
            raise ValidationError(
                f"planted model columns at {header[i]!r} do not match the "
                f"registry encoding of feature {fid!r}"
            )
        if fid == goal_id or fid in inputs:
            raise ValidationError(
                f"planted model repeats feature {fid!r} in its header"
            )
        inputs.append(fid)
        i += len(expected)
    return goal_id, inputs


def generate_synthetic(
    seed: int,
    n: int,
    registry: FeatureRegistry,
    planted_model: RiskModel | None = None,
) -> SyntheticSource:
    """Deterministic entity pool covering every registry feature."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    planted = None
    if planted_model is not None:
        goal_id, input_ids = _planted_inputs(registry, planted_model)
        planted = (goal_id, [registry.get(f) for f in input_ids])

    rng = np.random.RandomState(seed)
    records = []
    for i in range(1, n + 1):
        values: dict[str, object] = {}
        for spec in registry:
            if planted is not None and spec.id == planted[0]:
                continue  # drawn from the risk formula below
            if spec.is_integer:
                if spec.goal_eligible:
                    values[spec.id] = int(rng.randint(0, 2))
                else:
                    values[spec.id] = int(rng.randint(0, 100))
            elif spec.is_multivalued:
                values[spec.id] = frozenset(
                    t for t in spec.value_domain if rng.random_sample() < 0.35
                )
            else:
                values[spec.id] = spec.value_domain[
                    int(rng.randint(0, len(spec.value_domain)))
                ]
        if planted is not None:
            goal_id, input_specs = planted
            encoded: list[int] = []
            for spec in input_specs:
                _, vals = encode_feature(spec, values[spec.id])
                encoded.extend(vals)
            total = sum(
                c * v for c, v in zip(planted_model.coefficients, encoded)
            )
            p = risk_probability(planted_model.bias, total)
            values[goal_id] = int(rng.random_sample() < p)
        records.append(EntityRecord(entity_id=f"p{i:06d}", values=values))
    return SyntheticSource(records)


def _format_cell(spec: FeatureSpec, raw: object) -> str:
    if spec.is_integer:
        return str(raw)
    if spec.is_multivalued:
        present = [v for v in spec.value_domain if v in raw]  # domain order
        return MULTI_VALUE_SEPARATOR.join(present)
    return str(raw)


def write_pool_csv(
    source: SyntheticSource, registry: FeatureRegistry, path: str | Path
) -> None:
    """Write a pool table readable by :class:`CsvSource`.

    Columns are named by feature id, so it suits registries whose
    source_query equals the feature id (as the sample registry does).
    """
    lines = ["entity_id," + ",".join(s.id for s in registry)]
    for record in source.records:
        cells = [record.entity_id]
        for spec in registry:
            cells.append(_format_cell(spec, record.values[spec.id]))
        lines.append(",".join(cells))
    Path(path).write_bytes(("\n".join(lines) + "\n").encode("utf-8"))


class CsvSource:
    """Pool table on disk; source_query names the column to read."""

    def __init__(self, path: str | Path):
        text = Path(path).read_bytes().decode("utf-8")
        if not text.endswith("\n"):
            raise ParseError("pool table must end with a newline")
        lines = text.split("\n")[:-1]
        if not lines:
            raise ParseError("empty pool table")
        header = lines[0].split(",")
        if not header or header[0] != "entity_id":
            raise ParseError("pool table's first column must be entity_id")
        if len(set(header)) != len(header):
            raise ParseError("pool table has duplicate column names")
        self._columns = {name: idx for idx, name in enumerate(header)}
        self._rows: dict[str, list[str]] = {}
        self._order: list[str] = []
        for line_no, line in enumerate(lines[1:], start=2):
            cells = line.split(",")
            if len(cells) != len(header):
                raise ParseError(
                    f"line {line_no}: expected {len(header)} cells, "
                    f"got {len(cells)}"
                )
            eid = cells[0]
            if eid in self._rows:
                raise ParseError(f"line {line_no}: duplicate entity id {eid!r}")
            self._rows[eid] = cells
            self._order.append(eid)

    def __len__(self) -> int:
        return len(self._order)

    def _parse_cell(self, spec: FeatureSpec, cell: str, entity_id: str) -> object:
        if spec.is_multivalued:
            tokens = frozenset(
                t for t in cell.split(MULTI_VALUE_SEPARATOR) if t != ""
            )
            return _check_value(spec, tokens, entity_id)
        if cell == "":
            raise DataCompletenessError(
                f"entity {entity_id!r} has no value for feature {spec.id!r}"
            )
        if spec.is_integer:
            try:
                value = int(cell)
            except ValueError:
                raise ParseError(
                    f"entity {entity_id!r}, feature {spec.id!r}: "
                    f"non-integer cell {cell!r}"
                ) from None
            return value
        return _check_value(spec, cell, entity_id)

    def fetch(
        self,
        entity_ids: Sequence[str] | None,
        features: Sequence[FeatureSpec],
    ) -> list[EntityRecord]:
        for spec in features:
            if spec.source_query not in self._columns:
                raise DataCompletenessError(
                    f"pool table has no column for feature {spec.id!r} "
                    f"(source query {spec.source_query!r})"
                )
        ids = list(self._order) if entity_ids is None else list(entity_ids)
        out = []
        for eid in ids:
            if eid not in self._rows:
                raise NotFoundError(f"unknown entity id {eid!r}")
            cells = self._rows[eid]
            values = {
                spec.id: self._parse_cell(
                    spec, cells[self._columns[spec.source_query]], eid
                )
                for spec in features
            }
            out.append(EntityRecord(entity_id=eid, values=values))
        return out
