"""Small constructors shared across test modules."""

from riskbench import DataSet, FitConfig, ModelMeta, RiskModel


def make_config(**overrides) -> FitConfig:
    return FitConfig(**overrides)


def make_model(header, bias, coefficients, *, config=None, objective=0.0):
    """Hand-built model with placeholder meta fields."""
    meta = ModelMeta(
        fit_config=config or FitConfig(),
        objective=objective,
        solver_status="optimal",
        solver="exact",
        wall_time_seconds=0.0,
        created_at="2026-01-01T00:00:00+00:00",
    )
    return RiskModel(
        header=tuple(header),
        bias=bias,
        coefficients=tuple(coefficients),
        meta=meta,
    )


def make_dataset(rows, labels, names=None) -> DataSet:
    """Matrix + labels to a DataSet with a generated header."""
    width = len(rows[0]) if rows else 0
    if names is None:
        names = [f"x{j}" for j in range(width)]
    header = ("y", *names)
    return DataSet(
        header=header,
        rows=[[int(y), *map(int, r)] for y, r in zip(labels, rows)],
    )
