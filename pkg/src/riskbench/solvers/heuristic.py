"""Heuristic pipeline for problems too large to enumerate.

Stages:

1. Rank columns by when they enter the regularization path of an
   L1-penalized continuous logistic regression (proximal gradient on
   standardized columns, deterministic, no randomness).
2. Form a small set of candidate supports per size from combinations of
   the top-ranked columns.
3. For each support, refit an unpenalized continuous model by Newton
   iterations on the raw columns, then derive integer starting points by
   rounding at a few scales plus a unit-magnitude sign pattern, with a
   one-dimensional integer bias sweep for each start.
4. Polish every start with discrete coordinate descent over single-unit
   coefficient moves, zeroing moves, and bias steps. Moves are taken on
   first strict improvement in a fixed scan order, so the outcome is a
   deterministic local optimum of the penalized objective.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..dataset import DataSet
from ..model import (
    FitConfig,
    ModelMeta,
    RiskModel,
    created_at_now,
    dataset_arrays,
    mean_logistic_loss,
)
from .progress import ProgressCallback, StopSignal, Tracker


def _sigmoid(margins: np.ndarray) -> np.ndarray:
    out = np.empty_like(margins)
    pos = margins >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-margins[pos]))
    expm = np.exp(margins[~pos])
    out[~pos] = expm / (1.0 + expm)
    return out


def smooth_loss_value_and_grad(
    beta: np.ndarray, Xe: np.ndarray, y: np.ndarray
) -> tuple[float, np.ndarray]:
    """Mean logistic loss and its gradient for margins Xe @ beta."""
    margins = Xe @ beta
    z = (2.0 * y - 1.0) * margins
    value = float(np.logaddexp(0.0, -z).mean())
    grad = Xe.T @ (_sigmoid(margins) - y) / len(y)
    return value, grad


def rank_columns(X: np.ndarray, y: np.ndarray, n_alphas: int = 25) -> list[int]:
    """Order columns by entry point on the L1 regularization path.

    Columns that pick up weight at a larger penalty rank earlier; ties
    break by final absolute weight, then column index.
    """
    n_rows, n_cols = X.shape
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    scale[scale == 0.0] = 1.0
    Xs = (X - mean) / scale
    Xe = np.hstack([Xs, np.ones((n_rows, 1))])
    # step from the Lipschitz constant of the mean logistic gradient
    spectral = np.linalg.norm(Xe, 2)
    step = 1.0 / (spectral * spectral / (4.0 * n_rows) + 1e-12)

    alpha_max = float(np.abs(Xs.T @ (y - y.mean())).max() / n_rows)
    if alpha_max <= 0.0:
        return list(range(n_cols))
    alphas = np.geomspace(alpha_max * 0.999, alpha_max * 1e-3, n_alphas)

    beta = np.zeros(n_cols + 1)
    entered = np.full(n_cols, n_alphas, dtype=int)
    for ai, alpha in enumerate(alphas):
        for _ in range(250):
            _, grad = smooth_loss_value_and_grad(beta, Xe, y)
            nxt = beta - step * grad
            w = nxt[:n_cols]
            nxt[:n_cols] = np.sign(w) * np.maximum(np.abs(w) - step * alpha, 0.0)
            delta = float(np.max(np.abs(nxt - beta)))
            beta = nxt
            if delta < 1e-7 * (1.0 + float(np.max(np.abs(beta)))):
                break
        active = (np.abs(beta[:n_cols]) > 1e-9) & (entered == n_alphas)
        entered[active] = ai

    return sorted(range(n_cols), key=lambda j: (entered[j], -abs(beta[j]), j))


def _candidate_supports(
    order: list[int], config: FitConfig, n_cols: int
) -> list[tuple[int, ...]]:
    supports: list[tuple[int, ...]] = [()]
    seen = {()}
    for k in range(1, min(config.max_model_size, n_cols) + 1):
        pool = order[: min(n_cols, k + 2)]
        for support in itertools.islice(
            itertools.combinations(pool, k), config.max_model_size
        ):
            key = tuple(sorted(support))
            if key not in seen:
                seen.add(key)
                supports.append(key)
    return supports


def _newton_refit(
    X: np.ndarray, y: np.ndarray, support: tuple[int, ...]
) -> tuple[np.ndarray, float]:
    """Continuous logistic fit on the raw support columns plus intercept."""
    n_rows = X.shape[0]
    Xr = np.hstack([X[:, support], np.ones((n_rows, 1))])
    width = Xr.shape[1]
    ridge = 1e-4
    beta = np.zeros(width)
    for _ in range(40):
        margins = Xr @ beta
        p = _sigmoid(margins)
        grad = Xr.T @ (p - y) / n_rows + ridge * beta
        weights = p * (1.0 - p) + 1e-9
        hess = (Xr * weights[:, None]).T @ Xr / n_rows + ridge * np.eye(width)
        try:
            delta = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            delta = np.linalg.lstsq(hess, grad, rcond=None)[0]
        beta = beta - delta
        if float(np.max(np.abs(delta))) < 1e-9:
            break
    return beta[:-1], float(beta[-1])


def _integer_starts(
    weights: np.ndarray,
    support: tuple[int, ...],
    config: FitConfig,
    n_cols: int,
) -> list[tuple[int, ...]]:
    def clip_coef(value: float) -> int:
        return int(min(config.coef_max, max(config.coef_min, round(value))))

    scales = [1.0]
    peak = float(np.max(np.abs(weights))) if len(weights) else 0.0
    if peak > 1e-9:
        edge = max(abs(config.coef_min), abs(config.coef_max))
        scales.extend([edge / peak, 0.5 * edge / peak])

    starts: list[tuple[int, ...]] = []
    seen = set()
    for scale in scales:
        coefs = [0] * n_cols
        for col, w in zip(support, weights):
            coefs[col] = clip_coef(w * scale)
        start = tuple(coefs)
        if start not in seen:
            seen.add(start)
            starts.append(start)
    # unit-magnitude sign pattern keeps a foothold when rounding zeroes out
    coefs = [0] * n_cols
    for col, w in zip(support, weights):
        if abs(w) > 1e-9:
            coefs[col] = clip_coef(np.sign(w))
    start = tuple(coefs)
    if start not in seen:
        starts.append(start)
    return starts


def _best_bias(
    scores: np.ndarray, y: np.ndarray, config: FitConfig, tracker: Tracker
) -> int:
    biases = np.arange(config.bias_min, config.bias_max + 1)
    z = (2.0 * y - 1.0)[:, None] * (scores[:, None] - biases[None, :])
    losses = np.logaddexp(0.0, -z).mean(axis=0)
    tracker.bump(len(biases), None)
    return int(biases[int(np.argmin(losses))])


def _coordinate_descent(
    Xf: np.ndarray,
    y: np.ndarray,
    coefs: list[int],
    bias: int,
    config: FitConfig,
    tracker: Tracker,
) -> tuple[list[int], int, float, bool]:
    n_cols = Xf.shape[1]
    margins = Xf @ np.array(coefs, dtype=np.float64) - bias
    nnz = sum(1 for v in coefs if v != 0)
    obj = mean_logistic_loss(margins, y) + config.l0_penalty * nnz
    timed_out = False

    improved = True
    while improved and not timed_out:
        improved = False
        for j in range(n_cols):
            old = coefs[j]
            moves = {old - 1, old + 1, 0} - {old}
            for new in sorted(moves):
                if not config.coef_min <= new <= config.coef_max:
                    continue
                new_nnz = nnz - (old != 0) + (new != 0)
                if new_nnz > config.max_model_size:
                    continue
                trial = margins + (new - old) * Xf[:, j]
                trial_obj = (
                    mean_logistic_loss(trial, y) + config.l0_penalty * new_nnz
                )
                tracker.bump(1, trial_obj)
                if trial_obj < obj:
                    coefs[j] = new
                    margins = trial
                    nnz = new_nnz
                    obj = trial_obj
                    improved = True
                    break
            tracker.check_cancelled()
            if tracker.out_of_time():
                timed_out = True
                break
        if timed_out:
            break
        for new_bias in (bias - 1, bias + 1):
            if not config.bias_min <= new_bias <= config.bias_max:
                continue
            trial = margins - (new_bias - bias)
            trial_obj = mean_logistic_loss(trial, y) + config.l0_penalty * nnz
            tracker.bump(1, trial_obj)
            if trial_obj < obj:
                bias = new_bias
                margins = trial
                obj = trial_obj
                improved = True
                break
        tracker.check_cancelled()
    return coefs, bias, obj, timed_out


def fit_heuristic(
    dataset: DataSet,
    config: FitConfig,
    *,
    progress: ProgressCallback | None = None,
    should_stop: StopSignal | None = None,
) -> RiskModel:
    X, y = dataset_arrays(dataset)
    yf = y.astype(np.float64)
    Xf = X.astype(np.float64)
    n_cols = X.shape[1]
    tracker = Tracker(progress, should_stop, config.time_limit_seconds)

    # incumbent starts at the all-zero model so a tight time limit still
    # returns something valid; the key mirrors the exhaustive solver's
    # tie-breaking
    zero = (0,) * n_cols
    zero_obj = mean_logistic_loss(np.zeros(X.shape[0]), y)
    best = (zero_obj, 0, 0, zero, 0)
    timed_out = False

    order = rank_columns(Xf, yf)
    tracker.check_cancelled()

    for support in _candidate_supports(order, config, n_cols):
        if tracker.out_of_time():
            timed_out = True
            break
        weights, _ = _newton_refit(Xf, yf, support)
        for start_coefs in _integer_starts(weights, support, config, n_cols):
            tracker.check_cancelled()
            scores = Xf @ np.array(start_coefs, dtype=np.float64)
            bias0 = _best_bias(scores, yf, config, tracker)
            coefs, bias, obj, hit_limit = _coordinate_descent(
                Xf, yf, list(start_coefs), bias0, config, tracker
            )
            timed_out = timed_out or hit_limit
            key = (
                obj,
                sum(1 for v in coefs if v != 0),
                sum(abs(v) for v in coefs),
                tuple(coefs),
                bias,
            )
            if key < best:
                best = key
            if timed_out:
                break
        if timed_out:
            break

    tracker.finish()
    objective, _, _, coefficients, bias = best
    meta = ModelMeta(
        fit_config=config,
        objective=objective,
        solver_status="time-limit" if timed_out else "local-optimum",
        solver="heuristic",
        wall_time_seconds=tracker.elapsed(),
        created_at=created_at_now(),
    )
    return RiskModel(
        header=dataset.header, bias=bias, coefficients=coefficients, meta=meta
    )
