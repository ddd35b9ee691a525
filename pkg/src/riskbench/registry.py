"""Declarative pool of available features.

The registry is loaded from a JSON document: a top-level array of entries,
each with exactly the keys ``id``, ``label``, ``explanation``,
``source_query``, ``is_integer``, ``is_multivalued``, ``goal_eligible`` and
``value_domain``.  Everything downstream (encoder, dataset builder, API)
operates only on these declared fields, so adding a feature to the file
requires no code change.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .errors import ConfigurationError, NotFoundError, ValidationError

_ID_RE = re.compile(r"^[a-z][a-z0-9_]*$")
# Domain tokens appear in column names and CSV cells: no separators allowed.
_FORBIDDEN_IN_TOKENS = set(",;\t\n\r ")

_REGISTRY_KEYS = (
    "id",
    "label",
    "explanation",
    "source_query",
    "is_integer",
    "is_multivalued",
    "goal_eligible",
    "value_domain",
)


@dataclass(frozen=True)
class FeatureSpec:
    """Declarative description of one raw feature."""

    id: str
    label: str
    explanation: str
    source_query: str
    is_integer: bool
    is_multivalued: bool
    goal_eligible: bool
    value_domain: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not _ID_RE.match(self.id):
            raise ValidationError(
                f"feature id {self.id!r} must be lowercase [a-z][a-z0-9_]*"
            )
        if self.is_integer and self.is_multivalued:
            raise ValidationError(
                f"feature {self.id!r}: is_integer and is_multivalued are exclusive"
            )
        if self.goal_eligible and not self.is_integer:
            raise ValidationError(
                f"feature {self.id!r}: goal_eligible requires a single binary "
                "column, so the feature must be integer-valued"
            )
        if self.is_integer and self.value_domain:
            raise ValidationError(
                f"feature {self.id!r}: integer features take no value_domain"
            )
        if not self.is_integer and not self.value_domain:
            raise ValidationError(
                f"feature {self.id!r}: categorical features need a non-empty "
                "value_domain"
            )
        seen = set()
        for token in self.value_domain:
            if not token or _FORBIDDEN_IN_TOKENS & set(token):
                raise ValidationError(
                    f"feature {self.id!r}: bad domain token {token!r}"
                )
            if token in seen:
                raise ValidationError(
                    f"feature {self.id!r}: duplicate domain token {token!r}"
                )
            seen.add(token)


@dataclass(frozen=True)
class FeatureSummary:
    """Client-facing view of a feature; never exposes source_query."""

    id: str
    label: str
    explanation: str
    goal_eligible: bool


class FeatureRegistry:
    """Immutable, ordered collection of :class:`FeatureSpec`."""

    def __init__(self, features: Sequence[FeatureSpec]):
        by_id: dict[str, FeatureSpec] = {}
        for spec in features:
            if spec.id in by_id:
                raise ValidationError(f"duplicate feature id {spec.id!r}")
            by_id[spec.id] = spec
        self._features: tuple[FeatureSpec, ...] = tuple(features)
        self._by_id = by_id

    @property
    def features(self) -> tuple[FeatureSpec, ...]:
        return self._features

    def __iter__(self) -> Iterator[FeatureSpec]:
        return iter(self._features)

    def __len__(self) -> int:
        return len(self._features)

    def __contains__(self, feature_id: str) -> bool:
        return feature_id in self._by_id

    def get(self, feature_id: str) -> FeatureSpec:
        try:
            return self._by_id[feature_id]
        except KeyError:
            raise NotFoundError(f"unknown feature id {feature_id!r}") from None


def load_registry(config_path: str | Path) -> FeatureRegistry:
    """Load and validate a registry document; order is preserved."""
    path = Path(config_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read registry {path.name}: {exc.strerror}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"registry parse failure at line {exc.lineno}: {exc.msg}"
        ) from None
    if not isinstance(raw, list):
        raise ConfigurationError("registry document must be a JSON array of entries")

    features = []
    for index, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ConfigurationError(f"registry entry {index} is not an object")
        missing = [k for k in _REGISTRY_KEYS if k not in entry]
        extra = [k for k in entry if k not in _REGISTRY_KEYS]
        if missing or extra:
            raise ConfigurationError(
                f"registry entry {index} ({entry.get('id', '?')}): "
                f"missing keys {missing}, unknown keys {extra}"
            )
        for key in ("id", "label", "explanation", "source_query"):
            if not isinstance(entry[key], str):
                raise ConfigurationError(
                    f"registry entry {index}: {key} must be a string"
                )
        for key in ("is_integer", "is_multivalued", "goal_eligible"):
            if not isinstance(entry[key], bool):
                raise ConfigurationError(
                    f"registry entry {index}: {key} must be a boolean"
                )
        domain = entry["value_domain"]
        if not isinstance(domain, list) or any(
            not isinstance(t, str) for t in domain
        ):
            raise ConfigurationError(
                f"registry entry {index}: value_domain must be a list of strings"
            )
        features.append(
            FeatureSpec(
                id=entry["id"],
                label=entry["label"],
                explanation=entry["explanation"],
                source_query=entry["source_query"],
                is_integer=entry["is_integer"],
                is_multivalued=entry["is_multivalued"],
                goal_eligible=entry["goal_eligible"],
                value_domain=tuple(domain),
            )
        )
    return FeatureRegistry(features)


def write_registry(registry: FeatureRegistry, path: str | Path) -> None:
    """Write the registry document; load_registry(write_registry(R)) == R."""
    entries = [
        {
            "id": s.id,
            "label": s.label,
            "explanation": s.explanation,
            "source_query": s.source_query,
            "is_integer": s.is_integer,
            "is_multivalued": s.is_multivalued,
            "goal_eligible": s.goal_eligible,
            "value_domain": list(s.value_domain),
        }
        for s in registry
    ]
    Path(path).write_text(
        json.dumps(entries, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )


def list_features(registry: FeatureRegistry) -> list[FeatureSummary]:
    """One summary per feature, registry order, internal fields withheld."""
    return [
        FeatureSummary(
            id=s.id,
            label=s.label,
            explanation=s.explanation,
            goal_eligible=s.goal_eligible,
        )
        for s in registry
    ]
