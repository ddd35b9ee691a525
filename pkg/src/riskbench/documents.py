"""JSON document shapes shared by the HTTP service and the CLI.

Both surfaces must emit byte-for-byte compatible structures, so the
builders live here and nowhere else. None of these documents ever
contain file-system paths or source query strings.
"""

from __future__ import annotations

from .dataset import ProjectConfig
from .model import RiskModel, model_to_document
from .registry import FeatureRegistry, FeatureSummary, list_features
from .scoring import scoring_table_document, to_scoring_table
from .store import DatasetSummary, ModelSummary


def feature_document(summary: FeatureSummary) -> dict:
    return {
        "id": summary.id,
        "label": summary.label,
        "explanation": summary.explanation,
        "goal_eligible": summary.goal_eligible,
    }


def feature_list_document(registry: FeatureRegistry) -> list[dict]:
    return [feature_document(s) for s in list_features(registry)]


def project_document(config: ProjectConfig) -> dict:
    return {
        "id": f"{config.goal}/{config.name}",
        "name": config.name,
        "goal": config.goal,
        "inputs": list(config.inputs),
    }


def dataset_summary_document(summary: DatasetSummary) -> dict:
    return {
        "name": summary.name,
        "n_rows": summary.n_rows,
        "created_at": summary.created_at,
    }


def model_summary_document(summary: ModelSummary) -> dict:
    return {
        "name": summary.name,
        "model_size": summary.model_size,
        "objective": summary.objective,
        "solver_status": summary.solver_status,
        "created_at": summary.created_at,
    }


def model_detail_document(
    name: str, model: RiskModel, registry: FeatureRegistry
) -> dict:
    return {
        "name": name,
        "model": model_to_document(model),
        "scoring_table": scoring_table_document(to_scoring_table(model, registry)),
    }
