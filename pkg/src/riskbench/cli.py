"""Command-line driver: the full workflow without a running service.

Every subcommand prints one JSON document to stdout (matching the HTTP
response schemas) and uses stderr for progress lines. Failures print an
error document {code, message, detail} and exit with a code from the
table below.

\b
Exit codes:
  0  success
  1  internal error
  2  usage error
  3  validation error (bad input, encoding, schema mismatch, parse)
  4  not found
  5  name conflict
  6  store busy
  7  problem too large for exhaustive search
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import solvers
from .dataset import ProjectConfig, build_dataset
from .datasource import CsvSource, generate_synthetic, write_pool_csv
from .documents import (
    dataset_summary_document,
    feature_list_document,
    model_detail_document,
    model_summary_document,
    project_document,
)
from .errors import RiskbenchError
from .model import FitConfig, read_model
from .registry import FeatureRegistry, load_registry
from .store import ProjectStore
from .validation import report_document, validate

_EXIT_BY_CODE = {
    "validation": 3,
    "encoding": 3,
    "schema-mismatch": 3,
    "data-completeness": 3,
    "dimension": 3,
    "configuration": 3,
    "parse": 3,
    "not-found": 4,
    "conflict": 5,
    "busy": 6,
    "infeasible-scale": 7,
}


def _sample_registry_path() -> Path:
    return Path(__file__).parent / "data" / "sample_registry.json"


class AppContext:
    """Lazy store/registry wiring shared by all subcommands."""

    def __init__(self, registry_path: str | None, store_path: str):
        self._registry_path = registry_path
        self._store_path = store_path
        self._registry: FeatureRegistry | None = None
        self._store: ProjectStore | None = None

    @property
    def registry(self) -> FeatureRegistry:
        if self._registry is None:
            path = self._registry_path or _sample_registry_path()
            self._registry = load_registry(path)
        return self._registry

    @property
    def store(self) -> ProjectStore:
        if self._store is None:
            self._store = ProjectStore(self._store_path, self.registry)
        return self._store


def _emit(doc) -> None:
    click.echo(json.dumps(doc, indent=2))


@click.group(help=__doc__)
@click.option(
    "--registry",
    "registry_path",
    envvar="RISKBENCH_REGISTRY",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="Feature registry JSON (default: the packaged sample registry).",
)
@click.option(
    "--store",
    "store_path",
    envvar="RISKBENCH_STORE",
    default="store",
    show_default=True,
    help="Project store root folder.",
)
@click.pass_context
def cli(ctx: click.Context, registry_path: str | None, store_path: str) -> None:
    ctx.obj = AppContext(registry_path, store_path)


# -- features ------------------------------------------------------------


@cli.group()
def features() -> None:
    """Inspect the feature registry."""


@features.command("list")
@click.pass_obj
def features_list(app: AppContext) -> None:
    """List selectable features (without data source internals)."""
    _emit(feature_list_document(app.registry))


# -- projects ------------------------------------------------------------


@cli.group()
def project() -> None:
    """Create and inspect projects."""


@project.command("create")
@click.option("--goal", required=True, help="Goal-eligible feature id.")
@click.option("--name", required=True, help="Project name.")
@click.option(
    "--input", "inputs", required=True, multiple=True,
    help="Input feature id (repeatable).",
)
@click.pass_obj
def project_create(app: AppContext, goal: str, name: str, inputs: tuple[str, ...]):
    config = ProjectConfig(name=name, goal=goal, inputs=tuple(inputs))
    app.store.create_project(config)
    _emit(project_document(config))


@project.command("list")
@click.option("--goal", default=None, help="Only projects for this goal.")
@click.pass_obj
def project_list(app: AppContext, goal: str | None):
    _emit([project_document(c) for c in app.store.get_projects(goal)])


@project.command("show")
@click.argument("goal")
@click.argument("name")
@click.pass_obj
def project_show(app: AppContext, goal: str, name: str):
    _emit(project_document(app.store.load_project(goal, name)))


# -- datasets ------------------------------------------------------------


@cli.group()
def dataset() -> None:
    """Build and list datasets."""


@dataset.command("create")
@click.argument("goal")
@click.argument("project")
@click.option("--name", required=True, help="Dataset name.")
@click.option(
    "--pool", required=True, type=click.Path(exists=True, dir_okay=False),
    help="Entity pool CSV to read raw values from.",
)
@click.option(
    "--entity-id", "entity_ids", multiple=True,
    help="Restrict to these entity ids (repeatable; default: all).",
)
@click.pass_obj
def dataset_create(app, goal, project, name, pool, entity_ids):
    config = app.store.load_project(goal, project)
    source = CsvSource(pool)
    specs = [app.registry.get(config.goal)]
    specs += [app.registry.get(fid) for fid in config.inputs]
    restriction = list(entity_ids) if entity_ids else None
    records = source.fetch(restriction, specs)
    ds = build_dataset(config, records, app.registry)
    app.store.save_dataset(goal, project, name, ds, entity_ids=restriction)
    listed = {s.name: s for s in app.store.get_datasets(goal, project)}
    _emit(dataset_summary_document(listed[name]))


@dataset.command("list")
@click.argument("goal")
@click.argument("project")
@click.pass_obj
def dataset_list(app, goal, project):
    _emit([dataset_summary_document(s) for s in app.store.get_datasets(goal, project)])


# -- models --------------------------------------------------------------


@cli.group()
def model() -> None:
    """Fit and inspect models."""


@model.command("fit")
@click.argument("goal")
@click.argument("project")
@click.option("--dataset", "dataset_name", required=True)
@click.option("--name", required=True, help="Name for the stored model.")
@click.option("--model-size", default=5, show_default=True,
              help="Maximum number of nonzero coefficients.")
@click.option("--time-limit", default=60.0, show_default=True,
              help="Solve time budget in seconds.")
@click.option("--coef-min", default=-5, show_default=True)
@click.option("--coef-max", default=5, show_default=True)
@click.option("--bias-min", default=-20, show_default=True)
@click.option("--bias-max", default=20, show_default=True)
@click.option("--l0-penalty", default=1e-3, show_default=True)
@click.option("--solver", default="auto", show_default=True,
              type=click.Choice(["auto", "exact", "heuristic"]))
@click.option("--seed", default=0, show_default=True)
@click.pass_obj
def model_fit(app, goal, project, dataset_name, name, model_size, time_limit,
              coef_min, coef_max, bias_min, bias_max, l0_penalty, solver, seed):
    """Fit a model on a stored dataset and save it under --name."""
    config = FitConfig(
        max_model_size=model_size,
        coef_min=coef_min,
        coef_max=coef_max,
        bias_min=bias_min,
        bias_max=bias_max,
        l0_penalty=l0_penalty,
        time_limit_seconds=time_limit,
        solver_mode=solver,
        random_seed=seed,
    )
    ds = app.store.load_dataset(goal, project, dataset_name)

    def on_progress(candidates: int, incumbent: float | None) -> None:
        shown = "n/a" if incumbent is None else f"{incumbent:.6f}"
        click.echo(
            f"progress: {candidates} candidates, incumbent objective {shown}",
            err=True,
        )

    fitted = solvers.fit(ds, config, progress=on_progress)
    app.store.save_model(goal, project, name, fitted)
    _emit(model_detail_document(name, fitted, app.registry))


@model.command("list")
@click.argument("goal")
@click.argument("project")
@click.pass_obj
def model_list(app, goal, project):
    _emit([model_summary_document(s) for s in app.store.get_models(goal, project)])


@model.command("show")
@click.argument("goal")
@click.argument("project")
@click.argument("name")
@click.pass_obj
def model_show(app, goal, project, name):
    loaded = app.store.load_model(goal, project, name)
    _emit(model_detail_document(name, loaded, app.registry))


# -- validation ----------------------------------------------------------


@cli.group(name="validate")
def validate_group() -> None:
    """Evaluate models on datasets."""


@validate_group.command("run")
@click.argument("goal")
@click.argument("project")
@click.option("--model", "model_name", required=True)
@click.option("--dataset", "dataset_name", required=True)
@click.option(
    "--threshold", "thresholds", multiple=True, type=float,
    help="Decision threshold in (0,1) (repeatable; default grid 0.05..0.95).",
)
@click.pass_obj
def validate_run(app, goal, project, model_name, dataset_name, thresholds):
    loaded = app.store.load_model(goal, project, model_name)
    ds = app.store.load_dataset(goal, project, dataset_name)
    report = validate(
        loaded,
        ds,
        list(thresholds) if thresholds else None,
        model_ref=model_name,
        dataset_ref=dataset_name,
    )
    _emit(report_document(report))


# -- synthetic pool -------------------------------------------------------


@cli.group()
def synth() -> None:
    """Generate synthetic entity pools."""


@synth.command("generate")
@click.option("--seed", default=0, show_default=True)
@click.option("--size", required=True, type=int, help="Number of entities.")
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Where to write the pool CSV.")
@click.option("--planted", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Model JSON whose risk formula generates the goal labels.")
@click.pass_obj
def synth_generate(app, seed, size, out, planted):
    planted_model = read_model(planted) if planted else None
    source = generate_synthetic(seed, size, app.registry, planted_model)
    write_pool_csv(source, app.registry, out)
    _emit({"seed": seed, "size": size, "out": out})


# -- service --------------------------------------------------------------


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option(
    "--pool", required=True, type=click.Path(exists=True, dir_okay=False),
    help="Entity pool CSV backing dataset creation.",
)
@click.pass_obj
def serve(app, host, port, pool):
    """Run the HTTP service over this store and pool."""
    import uvicorn

    from .api import create_app

    service = create_app(app.store, CsvSource(pool))
    uvicorn.run(service, host=host, port=port, log_level="warning")


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(130)
    except RiskbenchError as exc:
        _emit({"code": exc.code, "message": str(exc), "detail": None})
        sys.exit(_EXIT_BY_CODE.get(exc.code, 1))


if __name__ == "__main__":
    main()
