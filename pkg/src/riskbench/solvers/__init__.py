"""Solvers for sparse integer risk models."""

from __future__ import annotations

from ..dataset import DataSet
from ..model import FitConfig, RiskModel
from .exact import DEFAULT_CANDIDATE_BUDGET, enumeration_budget, fit_exact
from .heuristic import fit_heuristic, rank_columns, smooth_loss_value_and_grad
from .progress import ProgressCallback, StopSignal, Tracker

__all__ = [
    "DEFAULT_CANDIDATE_BUDGET",
    "enumeration_budget",
    "fit",
    "fit_exact",
    "fit_heuristic",
    "rank_columns",
    "smooth_loss_value_and_grad",
    "ProgressCallback",
    "StopSignal",
    "Tracker",
]


def fit(
    dataset: DataSet,
    config: FitConfig,
    *,
    progress: ProgressCallback | None = None,
    should_stop: StopSignal | None = None,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> RiskModel:
    """Fit a model, picking the solver by the configured mode.

    Mode "auto" runs the exhaustive solver when the candidate count fits
    the enumeration budget and the heuristic pipeline otherwise. The
    chosen solver is recorded on the returned model's metadata.
    """
    mode = config.solver_mode
    if mode == "auto":
        n_cols = len(dataset.header) - 1
        mode = (
            "exact"
            if enumeration_budget(n_cols, config) <= candidate_budget
            else "heuristic"
        )
    if mode == "exact":
        return fit_exact(
            dataset,
            config,
            progress=progress,
            should_stop=should_stop,
            candidate_budget=candidate_budget,
        )
    return fit_heuristic(
        dataset, config, progress=progress, should_stop=should_stop
    )
