"""HTTP service exposing the workbench workflow.

Every route is a thin wrapper over the store, the dataset builder, the
solvers (through background jobs), and the validation module. All
durable state lives in the store, so any response can be reproduced
from disk contents plus the registry; restarting the service changes
nothing but job ids.

Error envelope: {code, message, detail} with status 404 (not-found),
409 (conflict), 422 (validation family), 423 (busy), 500 (internal,
deliberately opaque).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .dataset import ProjectConfig, build_dataset
from .documents import (
    dataset_summary_document,
    feature_list_document,
    model_detail_document,
    model_summary_document,
    project_document,
)
from .errors import BusyError, ConflictError, NotFoundError, RiskbenchError
from .jobs import JobManager, job_document
from .model import FitConfig
from .store import ProjectStore
from .validation import report_document, validate

_STATUS_BY_CODE = {
    "not-found": 404,
    "conflict": 409,
    "busy": 423,
}
# everything else in the validation family maps to 422


def _status_for(exc: RiskbenchError) -> int:
    if isinstance(exc, NotFoundError):
        return 404
    if isinstance(exc, ConflictError):
        return 409
    if isinstance(exc, BusyError):
        return 423
    return _STATUS_BY_CODE.get(exc.code, 422)


class ProjectBody(BaseModel):
    goal: str
    name: str
    inputs: list[str]


class DatasetBody(BaseModel):
    name: str
    entity_ids: list[str] | None = None


class ModelBody(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    name: str
    dataset: str
    fit_config: dict = Field(default_factory=dict)


class ValidateBody(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str
    dataset: str
    thresholds: list[float] | None = None


def create_app(store: ProjectStore, source) -> FastAPI:
    """Wire the service around a store and an entity data source."""
    app = FastAPI(title="risk model workbench", docs_url=None, redoc_url=None)
    # the browser page may be served from a different origin than the
    # service; single-user tool, no credentials, so any origin is fine
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    jobs = JobManager(store)
    app.state.store = store
    app.state.source = source
    app.state.jobs = jobs
    registry = store.registry

    @app.exception_handler(RiskbenchError)
    async def on_domain_error(request: Request, exc: RiskbenchError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc), "detail": None},
        )

    @app.exception_handler(RequestValidationError)
    async def on_body_error(request: Request, exc: RequestValidationError):
        problems = [
            {"location": [str(p) for p in err.get("loc", [])],
             "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=422,
            content={
                "code": "validation",
                "message": "invalid request body",
                "detail": problems,
            },
        )

    @app.exception_handler(Exception)
    async def on_internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={
                "code": "internal",
                "message": "internal error",
                "detail": None,
            },
        )

    @app.get("/features")
    def features():
        return feature_list_document(registry)

    @app.post("/projects", status_code=201)
    def create_project(body: ProjectBody):
        config = ProjectConfig(
            name=body.name, goal=body.goal, inputs=tuple(body.inputs)
        )
        store.create_project(config)
        return project_document(config)

    @app.get("/projects")
    def get_projects(goal: str | None = None):
        return [project_document(c) for c in store.get_projects(goal)]

    @app.get("/projects/{goal}/{name}")
    def load_project(goal: str, name: str):
        return project_document(store.load_project(goal, name))

    @app.post("/projects/{goal}/{name}/datasets", status_code=201)
    def create_dataset(goal: str, name: str, body: DatasetBody):
        config = store.load_project(goal, name)
        specs = [registry.get(config.goal)]
        specs += [registry.get(fid) for fid in config.inputs]
        records = app.state.source.fetch(body.entity_ids, specs)
        ds = build_dataset(config, records, registry)
        store.save_dataset(goal, name, body.name, ds, entity_ids=body.entity_ids)
        listed = {s.name: s for s in store.get_datasets(goal, name)}
        return dataset_summary_document(listed[body.name])

    @app.get("/projects/{goal}/{name}/datasets")
    def get_datasets(goal: str, name: str):
        return [dataset_summary_document(s) for s in store.get_datasets(goal, name)]

    @app.post("/projects/{goal}/{name}/models", status_code=202)
    def create_model(goal: str, name: str, body: ModelBody):
        store.load_project(goal, name)
        config = FitConfig.from_dict(body.fit_config)
        job = jobs.submit(goal, name, body.dataset, body.name, config)
        return job_document(job)

    @app.get("/projects/{goal}/{name}/models")
    def get_models(goal: str, name: str):
        return [model_summary_document(s) for s in store.get_models(goal, name)]

    @app.get("/projects/{goal}/{name}/models/{model}")
    def load_model(goal: str, name: str, model: str):
        loaded = store.load_model(goal, name, model)
        return model_detail_document(model, loaded, registry)

    @app.post("/projects/{goal}/{name}/validate")
    def validate_model(goal: str, name: str, body: ValidateBody):
        loaded = store.load_model(goal, name, body.model)
        ds = store.load_dataset(goal, name, body.dataset)
        report = validate(
            loaded,
            ds,
            body.thresholds,
            model_ref=body.model,
            dataset_ref=body.dataset,
        )
        return report_document(report)

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        return job_document(jobs.get(job_id))

    @app.post("/jobs/{job_id}/cancel")
    def job_cancel(job_id: str):
        return job_document(jobs.cancel(job_id))

    return app
