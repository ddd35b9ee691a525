"""Exhaustive search over sparse integer coefficient vectors.

Enumerates every support set up to the size cap, every assignment of
nonzero integer coefficients from the box to that support, and every
integer bias, keeping the assignment with the lowest penalized
objective. The search is only attempted when the candidate count fits
the enumeration budget; larger problems belong to the heuristic solver.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..dataset import DataSet
from ..errors import InfeasibleScaleError
from ..model import (
    FitConfig,
    ModelMeta,
    RiskModel,
    created_at_now,
    dataset_arrays,
    mean_logistic_loss,
)
from .progress import ProgressCallback, StopSignal, Tracker

DEFAULT_CANDIDATE_BUDGET = 100_000_000

# Keep each loss evaluation block (rows x combos x biases) around this
# many doubles so memory stays flat regardless of dataset size.
_BLOCK_ELEMENTS = 2_000_000

# Selection key: (objective, nnz, sum of |coef|, coefficient vector, bias).
# Comparing the full tuple makes the winner independent of enumeration
# order, so chunk sizes never change the result.
_Key = tuple[float, int, int, tuple[int, ...], int]


def enumeration_budget(n_columns: int, config: FitConfig) -> int:
    """Candidate count for the exhaustive search on n_columns columns."""
    nonzero_values = config.coef_max - config.coef_min
    n_biases = config.bias_max - config.bias_min + 1
    total = 0
    for k in range(min(config.max_model_size, n_columns) + 1):
        total += math.comb(n_columns, k) * nonzero_values**k * n_biases
    return total


def _chunked(iterable, size):
    it = iter(iterable)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def fit_exact(
    dataset: DataSet,
    config: FitConfig,
    *,
    progress: ProgressCallback | None = None,
    should_stop: StopSignal | None = None,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> RiskModel:
    X, y = dataset_arrays(dataset)
    n_rows, n_cols = X.shape
    budget = enumeration_budget(n_cols, config)
    if budget > candidate_budget:
        raise InfeasibleScaleError(
            f"exhaustive search needs {budget} candidate evaluations, "
            f"over the {candidate_budget} budget; use the heuristic solver"
        )

    tracker = Tracker(progress, should_stop, config.time_limit_seconds)
    Xf = X.astype(np.float64)
    sign = (2.0 * y.astype(np.float64) - 1.0)[:, None, None]
    biases = np.arange(config.bias_min, config.bias_max + 1)
    biases_f = biases.astype(np.float64)[None, None, :]
    nonzero = [v for v in range(config.coef_min, config.coef_max + 1) if v != 0]
    chunk_size = max(1, _BLOCK_ELEMENTS // max(1, n_rows * len(biases)))

    best: _Key | None = None
    timed_out = False

    for k in range(min(config.max_model_size, n_cols) + 1):
        if timed_out:
            break
        for support in itertools.combinations(range(n_cols), k):
            if timed_out:
                break
            Xs = Xf[:, support]
            for chunk in _chunked(itertools.product(nonzero, repeat=k), chunk_size):
                tracker.check_cancelled()
                coefs = np.array(chunk, dtype=np.float64).reshape(len(chunk), k)
                scores = Xs @ coefs.T
                z = sign * (scores[:, :, None] - biases_f)
                obj = np.logaddexp(0.0, -z).mean(axis=0) + config.l0_penalty * k
                low = float(obj.min())
                tracker.bump(obj.size, low)
                if best is None or low <= best[0]:
                    for ci, bi in np.argwhere(obj == low):
                        full = [0] * n_cols
                        for col, value in zip(support, chunk[ci]):
                            full[col] = value
                        key: _Key = (
                            low,
                            k,
                            sum(abs(v) for v in chunk[ci]),
                            tuple(full),
                            int(biases[bi]),
                        )
                        if best is None or key < best:
                            best = key
                if tracker.out_of_time():
                    timed_out = True
                    break

    tracker.finish()
    assert best is not None  # the k=0 bias sweep always completes
    _, _, _, coefficients, bias = best
    margins = Xf @ np.array(coefficients, dtype=np.float64) - bias
    objective = mean_logistic_loss(margins, y) + config.l0_penalty * sum(
        1 for v in coefficients if v != 0
    )
    meta = ModelMeta(
        fit_config=config,
        objective=objective,
        solver_status="time-limit" if timed_out else "optimal",
        solver="exact",
        wall_time_seconds=tracker.elapsed(),
        created_at=created_at_now(),
    )
    return RiskModel(
        header=dataset.header, bias=bias, coefficients=coefficients, meta=meta
    )
