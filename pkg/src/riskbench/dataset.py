"""Integer dataset assembly: feature encoding, CSV format, schema identity.

Encoding cases
--------------
1. integer feature        -> one column named after the feature, raw value kept
2. categorical feature    -> one 0/1 column per domain value, exactly one hot
3. multi-valued feature   -> one 0/1 column per domain value, any number hot

Expanded columns are named ``<feature>EQ<value>`` with the domain order taken
from the registry declaration, never from data, so the column layout is a
pure function of (registry, feature list).
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    ConfigurationError,
    EncodingError,
    ParseError,
    ValidationError,
)
from .registry import FeatureRegistry, FeatureSpec

_NAME_RE = re.compile(r"^[a-z0-9_-]{1,64}$")

EQ_SEPARATOR = "EQ"


def check_name(name: str, what: str) -> str:
    """Project/dataset/model names must be filesystem- and URL-safe."""
    if not _NAME_RE.match(name):
        raise ValidationError(
            f"{what} name {name!r} must match [a-z0-9_-]{{1,64}}"
        )
    return name


@dataclass(frozen=True)
class ProjectConfig:
    """A target feature plus an ordered list of input features."""

    name: str
    goal: str
    inputs: tuple[str, ...]

    def validate(self, registry: FeatureRegistry) -> None:
        check_name(self.name, "project")
        if self.goal not in registry:
            raise ValidationError(f"unknown goal feature {self.goal!r}")
        if not registry.get(self.goal).goal_eligible:
            raise ValidationError(f"feature {self.goal!r} is not goal eligible")
        if not self.inputs:
            raise ValidationError("inputs must be non-empty")
        if len(set(self.inputs)) != len(self.inputs):
            raise ValidationError("inputs contain duplicates")
        if self.goal in self.inputs:
            raise ValidationError("goal must not be contained in inputs")
        for fid in self.inputs:
            if fid not in registry:
                raise ValidationError(f"unknown input feature {fid!r}")


def schema_fingerprint(header: Sequence[str]) -> str:
    """Digest of the ordered header; used for structural compatibility."""
    return hashlib.sha256(",".join(header).encode("utf-8")).hexdigest()


@dataclass
class DataSet:
    """Integer matrix with a header row; column 0 is the binary target."""

    header: tuple[str, ...]
    rows: list[list[int]]
    schema_fingerprint: str = field(init=False)

    def __post_init__(self) -> None:
        if len(self.header) < 1:
            raise ValidationError("dataset header must not be empty")
        if len(set(self.header)) != len(self.header):
            raise ValidationError("dataset header names must be unique")
        width = len(self.header)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValidationError(
                    f"row {i} has width {len(row)}, header has {width}"
                )
            if row[0] not in (0, 1):
                raise ValidationError(
                    f"row {i}: target value {row[0]!r} must be 0 or 1"
                )
        self.schema_fingerprint = schema_fingerprint(self.header)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_columns(self) -> int:
        return len(self.header)


def encode_feature(spec: FeatureSpec, raw: object) -> tuple[list[str], list[int]]:
    """Encode one raw value into its column names and integer values."""
    if spec.is_integer:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise EncodingError(
                f"feature {spec.id!r}: expected integer, got {raw!r}"
            )
        return [spec.id], [raw]

    names = [f"{spec.id}{EQ_SEPARATOR}{v}" for v in spec.value_domain]
    if spec.is_multivalued:
        if isinstance(raw, str) or not isinstance(raw, Iterable):
            raise EncodingError(
                f"feature {spec.id!r}: expected a set of tokens, got {raw!r}"
            )
        tokens = set(raw)
        for token in tokens:
            if token not in spec.value_domain:
                raise EncodingError(
                    f"feature {spec.id!r}: token {token!r} outside value domain"
                )
        return names, [1 if v in tokens else 0 for v in spec.value_domain]

    if not isinstance(raw, str) or raw not in spec.value_domain:
        raise EncodingError(
            f"feature {spec.id!r}: token {raw!r} outside value domain"
        )
    return names, [1 if v == raw else 0 for v in spec.value_domain]


def decode_feature(spec: FeatureSpec, values: Sequence[int]) -> object:
    """Inverse of :func:`encode_feature` over the feature's own columns."""
    if spec.is_integer:
        if len(values) != 1:
            raise EncodingError(f"feature {spec.id!r}: expected one column")
        return values[0]
    if len(values) != len(spec.value_domain):
        raise EncodingError(
            f"feature {spec.id!r}: expected {len(spec.value_domain)} columns"
        )
    hot = [v for v, bit in zip(spec.value_domain, values) if bit == 1]
    if spec.is_multivalued:
        return frozenset(hot)
    if len(hot) != 1 or any(bit not in (0, 1) for bit in values):
        raise EncodingError(f"feature {spec.id!r}: columns are not one-hot")
    return hot[0]


def column_layout(registry: FeatureRegistry, feature_ids: Sequence[str]) -> list[str]:
    """Column names for the given features; independent of any records."""
    names: list[str] = []
    for fid in feature_ids:
        spec = registry.get(fid)
        if spec.is_integer:
            names.append(spec.id)
        else:
            names.extend(f"{spec.id}{EQ_SEPARATOR}{v}" for v in spec.value_domain)
    return names


def dataset_header(registry: FeatureRegistry, config: ProjectConfig) -> tuple[str, ...]:
    """Full header for a project: goal column followed by input encodings."""
    goal_cols = column_layout(registry, [config.goal])
    if len(goal_cols) != 1:
        raise ConfigurationError(
            f"goal {config.goal!r} must encode to exactly one column, "
            f"got {len(goal_cols)}"
        )
    return tuple(goal_cols + column_layout(registry, config.inputs))


def build_dataset(
    config: ProjectConfig,
    records: Sequence["EntityRecord"],
    registry: FeatureRegistry,
) -> DataSet:
    """Assemble the integer matrix for a project from entity records."""
    config.validate(registry)
    header = dataset_header(registry, config)
    goal_spec = registry.get(config.goal)
    input_specs = [registry.get(fid) for fid in config.inputs]

    rows: list[list[int]] = []
    for record in records:
        try:
            _, goal_vals = encode_feature(goal_spec, record.values[config.goal])
            if goal_vals[0] not in (0, 1):
                raise EncodingError(
                    f"goal {config.goal!r}: value {goal_vals[0]} is not binary"
                )
            row = list(goal_vals)
            for spec in input_specs:
                _, vals = encode_feature(spec, record.values[spec.id])
                row.extend(vals)
        except KeyError as exc:
            raise EncodingError(
                f"entity {record.entity_id!r}: missing value for feature {exc}"
            ) from None
        except EncodingError as exc:
            raise EncodingError(f"entity {record.entity_id!r}: {exc}") from None
        rows.append(row)
    return DataSet(header=header, rows=rows)


def write_csv(ds: DataSet, path: str | Path) -> None:
    """Write the bit-exact CSV form: header line, one line per row."""
    out = [",".join(ds.header)]
    out.extend(",".join(str(v) for v in row) for row in ds.rows)
    Path(path).write_bytes(("\n".join(out) + "\n").encode("utf-8"))


def _parse_int_cell(cell: str, line_no: int) -> int:
    try:
        value = int(cell)
    except ValueError:
        raise ParseError(f"line {line_no}: non-integer cell {cell!r}") from None
    if str(value) != cell:
        raise ParseError(f"line {line_no}: non-canonical integer {cell!r}")
    return value


def read_csv(path: str | Path) -> DataSet:
    """Strict inverse of :func:`write_csv`."""
    text = Path(path).read_bytes().decode("utf-8")
    if not text.endswith("\n"):
        raise ParseError("file must end with a newline")
    lines = text.split("\n")[:-1]
    if not lines:
        raise ParseError("empty dataset file")
    header = tuple(lines[0].split(","))
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ParseError(
                f"line {line_no}: expected {len(header)} cells, got {len(cells)}"
            )
        rows.append([_parse_int_cell(c, line_no) for c in cells])
    return DataSet(header=header, rows=rows)


def schema_compatible(a, b: DataSet) -> bool:
    """True iff the ordered headers are identical.

    ``a`` may be a DataSet or a RiskModel (anything with a ``header``).
    """
    return tuple(a.header) == tuple(b.header)


def parse_column_name(column: str) -> tuple[str, str | None]:
    """Split an encoded column name into (feature id, domain value or None)."""
    if EQ_SEPARATOR in column:
        fid, value = column.split(EQ_SEPARATOR, 1)
        return fid, value
    return column, None
