"""Estimator-style wrapper so the solvers plug into sklearn workflows."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import solvers
from .dataset import DataSet
from .errors import ValidationError
from .model import FitConfig, risk_probability


class RiskScoreClassifier(BaseEstimator, ClassifierMixin):
    """Binary classifier with small integer coefficients and integer bias.

    Parameters mirror :class:`FitConfig`. The decision function is
    ``X @ coef_ + intercept_`` where every entry of ``coef_`` is an
    integer from the configured box and ``intercept_`` is the negated
    integer bias, so ``predict_proba`` reproduces the scoring-table risk
    exactly.
    """

    def __init__(
        self,
        max_model_size: int = 5,
        coef_min: int = -5,
        coef_max: int = 5,
        bias_min: int = -20,
        bias_max: int = 20,
        l0_penalty: float = 1e-3,
        time_limit_seconds: float = 60.0,
        solver_mode: str = "auto",
        random_seed: int = 0,
    ):
        self.max_model_size = max_model_size
        self.coef_min = coef_min
        self.coef_max = coef_max
        self.bias_min = bias_min
        self.bias_max = bias_max
        self.l0_penalty = l0_penalty
        self.time_limit_seconds = time_limit_seconds
        self.solver_mode = solver_mode
        self.random_seed = random_seed

    def _config(self) -> FitConfig:
        return FitConfig(
            max_model_size=self.max_model_size,
            coef_min=self.coef_min,
            coef_max=self.coef_max,
            bias_min=self.bias_min,
            bias_max=self.bias_max,
            l0_penalty=self.l0_penalty,
            time_limit_seconds=self.time_limit_seconds,
            solver_mode=self.solver_mode,
            random_seed=self.random_seed,
        )

    @staticmethod
    def _as_integer_matrix(X: np.ndarray, what: str) -> np.ndarray:
        if not np.all(np.isfinite(X)) or not np.all(np.mod(X, 1) == 0):
            raise ValidationError(f"{what} must contain only finite integers")
        return X.astype(np.int64)

    def fit(self, X, y) -> "RiskScoreClassifier":
        X, y = check_X_y(X, y, dtype="numeric")
        labels = np.unique(y)
        if not np.all(np.isin(labels, (0, 1))):
            raise ValidationError("y must contain only the labels 0 and 1")
        Xi = self._as_integer_matrix(X, "X")
        header = ("y",) + tuple(f"x{j:04d}" for j in range(Xi.shape[1]))
        rows = [
            [int(t)] + [int(v) for v in row] for t, row in zip(y, Xi)
        ]
        ds = DataSet(header=header, rows=rows)
        self.model_ = solvers.fit(ds, self._config())
        self.classes_ = np.array([0, 1])
        self.coef_ = np.array([self.model_.coefficients], dtype=np.float64)
        self.intercept_ = np.array([-self.model_.bias], dtype=np.float64)
        self.n_features_in_ = Xi.shape[1]
        return self

    def _margins(self, X) -> np.ndarray:
        check_is_fitted(self, "model_")
        X = check_array(X, dtype="numeric")
        if X.shape[1] != self.n_features_in_:
            raise ValidationError(
                f"X has {X.shape[1]} columns, the model was fit on "
                f"{self.n_features_in_}"
            )
        Xi = self._as_integer_matrix(X, "X")
        return Xi @ np.asarray(self.model_.coefficients) - self.model_.bias

    def decision_function(self, X) -> np.ndarray:
        return self._margins(X).astype(np.float64)

    def predict_proba(self, X) -> np.ndarray:
        margins = self._margins(X)
        pos = np.array([risk_probability(0, int(m)) for m in margins])
        return np.column_stack([1.0 - pos, pos])

    def predict(self, X) -> np.ndarray:
        return (self._margins(X) > 0).astype(np.int64)
