"""Independent reference implementations the tests check against.

Everything here is written from the problem statement alone and shares
no code with the package: the enumerator walks the whole coefficient
lattice with itertools, the loss uses the direct two-sided probability
formula instead of logaddexp, and the counters are plain per-row loops.
Being slow is fine; being independent is the point.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def sigmoid(margin: float) -> float:
    """Plain two-branch logistic, p = 1 / (1 + exp(-margin))."""
    if margin >= 0:
        return 1.0 / (1.0 + math.exp(-margin))
    e = math.exp(margin)
    return e / (1.0 + e)


def risk(bias: int, total: int) -> float:
    return sigmoid(total - bias)


def mean_log_loss(bias: int, coefs, rows, labels) -> float:
    """Direct formula: -log p for positives, -log(1 - p) for negatives.

    1 - p is computed from the mirrored formula so it never cancels.
    """
    total = 0.0
    for row, y in zip(rows, labels):
        s = sum(c * v for c, v in zip(coefs, row))
        if y == 1:
            total += -math.log(sigmoid(s - bias))
        else:
            total += -math.log(sigmoid(bias - s))
    return total / len(rows)


def enumerate_optimum(
    rows,
    labels,
    *,
    max_size: int,
    coef_min: int,
    coef_max: int,
    bias_min: int,
    bias_max: int,
    l0_penalty: float,
):
    """Optimum over the full lattice by brute force.

    Returns (objective, nnz, l1, coefficients, bias) minimizing first the
    objective, then nnz, then the l1 norm, then the vector
    lexicographically, then the bias.
    """
    X = np.asarray(rows, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    n, d = X.shape
    biases = np.arange(bias_min, bias_max + 1, dtype=np.float64)
    positive = y == 1

    best = None
    for coefs in itertools.product(range(coef_min, coef_max + 1), repeat=d):
        nnz = sum(1 for c in coefs if c != 0)
        if nnz > max_size:
            continue
        scores = X @ np.asarray(coefs, dtype=np.float64)
        margins = scores[:, None] - biases[None, :]
        p = 1.0 / (1.0 + np.exp(-margins))
        q = 1.0 / (1.0 + np.exp(margins))
        losses = np.where(positive[:, None], -np.log(p), -np.log(q))
        objectives = losses.mean(axis=0) + l0_penalty * nnz
        for bi, obj in enumerate(objectives):
            key = (
                float(obj),
                nnz,
                sum(abs(c) for c in coefs),
                coefs,
                int(bias_min + bi),
            )
            if best is None or key < best:
                best = key
    return best


def threshold_counts(risks, labels, threshold: float):
    """Per-row recount of the confusion matrix at one threshold."""
    tp = fp = tn = fn = 0
    for r, y in zip(risks, labels):
        predicted = r > threshold
        if predicted and y == 1:
            tp += 1
        elif predicted:
            fp += 1
        elif y == 1:
            fn += 1
        else:
            tn += 1
    return tp, fp, tn, fn


def model_risks(bias: int, coefs, rows) -> list[float]:
    """Row risks straight from the formula, no shared code."""
    out = []
    for row in rows:
        s = sum(c * v for c, v in zip(coefs, row))
        out.append(risk(bias, s))
    return out


def random_instance(seed: int, *, n_rows=None, n_cols=None):
    """Small noisy-planted instance for solver comparisons.

    Values are drawn in {0, 1, 2}; labels follow a random sparse integer
    model through the logistic link with damped margins so both classes
    appear.
    """
    rng = np.random.RandomState(seed)
    d = int(n_cols) if n_cols is not None else int(rng.randint(2, 5))
    n = int(n_rows) if n_rows is not None else int(rng.randint(30, 101))
    X = rng.randint(0, 3, size=(n, d))
    w = np.zeros(d, dtype=np.int64)
    support = rng.choice(d, size=min(3, d), replace=False)
    for j in support:
        w[j] = rng.choice([-3, -2, -1, 1, 2, 3])
    b = int(rng.randint(-3, 4))
    margins = (X @ w - b) / 2.0
    probs = 1.0 / (1.0 + np.exp(-margins))
    y = (rng.random_sample(n) < probs).astype(np.int64)
    rows = [[int(v) for v in r] for r in X]
    labels = [int(v) for v in y]
    return rows, labels
