"""File-system home for projects, datasets, and models.

Layout::

    root/
      <goal>/
        <project>/
          project.json
          datasets/<name>.csv    (+ <name>.json sidecar)
          models/<name>.json

Every write lands in a dot-prefixed temp file first and is moved into
place with an atomic rename, so readers never observe a partial file and
listings never show one. Mutations to one project are serialized by an
in-process lock that blocks briefly and then fails with a busy error;
reads take no lock. Nothing is ever deleted or renamed: saved artifacts
are immutable history.
"""

from __future__ import annotations

import json
import os
import shutil
import threading
from dataclasses import dataclass
from pathlib import Path

from .dataset import (
    DataSet,
    ProjectConfig,
    check_name,
    dataset_header,
    read_csv,
    write_csv,
)
from .errors import (
    BusyError,
    ConflictError,
    NotFoundError,
    ParseError,
    ValidationError,
)
from .model import RiskModel, created_at_now, read_model, write_model
from .registry import FeatureRegistry

_TMP_PREFIX = ".tmp-"


@dataclass(frozen=True)
class DatasetSummary:
    name: str
    n_rows: int
    created_at: str


@dataclass(frozen=True)
class ModelSummary:
    name: str
    model_size: int
    objective: float
    solver_status: str
    created_at: str


class _ProjectLocks:
    """One lock per project, created on first use."""

    def __init__(self, block_seconds: float):
        self._guard = threading.Lock()
        self._locks: dict[tuple[str, str], threading.Lock] = {}
        self._block_seconds = block_seconds

    def acquire(self, goal: str, name: str) -> "_Held":
        with self._guard:
            lock = self._locks.setdefault((goal, name), threading.Lock())
        if not lock.acquire(timeout=self._block_seconds):
            raise BusyError(
                f"project {goal}/{name} is busy with another write"
            )
        return _Held(lock)


class _Held:
    def __init__(self, lock: threading.Lock):
        self._lock = lock

    def __enter__(self) -> "_Held":
        return self

    def __exit__(self, *exc) -> None:
        self._lock.release()


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.parent / f"{_TMP_PREFIX}{os.getpid()}-{path.name}"
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _listing(folder: Path, suffix: str) -> list[str]:
    if not folder.is_dir():
        return []
    return sorted(
        p.stem
        for p in folder.iterdir()
        if p.suffix == suffix and not p.name.startswith(_TMP_PREFIX)
    )


class ProjectStore:
    """All persistent application state, rooted at one folder."""

    def __init__(
        self,
        root: str | Path,
        registry: FeatureRegistry,
        *,
        block_seconds: float = 10.0,
    ):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.registry = registry
        self._locks = _ProjectLocks(block_seconds)

    # -- paths ---------------------------------------------------------

    def _project_dir(self, goal: str, name: str) -> Path:
        return self.root / goal / name

    def _require_project_dir(self, goal: str, name: str) -> Path:
        folder = self._project_dir(goal, name)
        if not (folder / "project.json").is_file():
            raise NotFoundError(f"project {goal}/{name} does not exist")
        return folder

    # -- projects ------------------------------------------------------

    def create_project(self, config: ProjectConfig) -> str:
        """Create the project's folder tree; returns the id goal/name."""
        config.validate(self.registry)
        # fails fast when the layout is degenerate, e.g. a multi-column goal
        dataset_header(self.registry, config)
        goal_dir = self.root / config.goal
        goal_dir.mkdir(parents=True, exist_ok=True)
        final = goal_dir / config.name
        with self._locks.acquire(config.goal, config.name):
            if final.exists():
                raise ConflictError(
                    f"project {config.goal}/{config.name} already exists"
                )
            staging = goal_dir / f"{_TMP_PREFIX}create-{config.name}"
            if staging.exists():
                # only a crashed earlier run can leave this behind; live
                # creates hold the project lock
                shutil.rmtree(staging)
            (staging / "datasets").mkdir(parents=True)
            (staging / "models").mkdir()
            doc = {
                "name": config.name,
                "goal": config.goal,
                "inputs": list(config.inputs),
                "created_at": created_at_now(),
            }
            (staging / "project.json").write_text(
                json.dumps(doc, indent=2) + "\n", encoding="utf-8"
            )
            try:
                os.rename(staging, final)
            except OSError:
                shutil.rmtree(staging, ignore_errors=True)
                raise ConflictError(
                    f"project {config.goal}/{config.name} already exists"
                ) from None
        return f"{config.goal}/{config.name}"

    def get_projects(self, goal: str | None = None) -> list[ProjectConfig]:
        if goal is not None:
            if goal not in self.registry:
                raise NotFoundError(f"unknown goal feature {goal!r}")
            goals = [goal]
        else:
            goals = sorted(
                p.name
                for p in self.root.iterdir()
                if p.is_dir() and not p.name.startswith(_TMP_PREFIX)
            )
        projects = []
        for g in goals:
            folder = self.root / g
            if not folder.is_dir():
                continue
            for name in sorted(
                p.name
                for p in folder.iterdir()
                if p.is_dir() and not p.name.startswith(_TMP_PREFIX)
            ):
                projects.append(self.load_project(g, name))
        return projects

    def load_project(self, goal: str, name: str) -> ProjectConfig:
        folder = self._require_project_dir(goal, name)
        try:
            doc = json.loads((folder / "project.json").read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"project document parse failure: {exc.msg}") from None
        return ProjectConfig(
            name=str(doc["name"]),
            goal=str(doc["goal"]),
            inputs=tuple(str(f) for f in doc["inputs"]),
        )

    def project_created_at(self, goal: str, name: str) -> str:
        folder = self._require_project_dir(goal, name)
        doc = json.loads((folder / "project.json").read_text("utf-8"))
        return str(doc.get("created_at", ""))

    def project_header(self, goal: str, name: str) -> tuple[str, ...]:
        return dataset_header(self.registry, self.load_project(goal, name))

    # -- datasets ------------------------------------------------------

    def save_dataset(
        self,
        goal: str,
        project: str,
        name: str,
        ds: DataSet,
        *,
        entity_ids: list[str] | None = None,
    ) -> None:
        check_name(name, "dataset")
        folder = self._require_project_dir(goal, project) / "datasets"
        if ds.header != self.project_header(goal, project):
            raise ValidationError(
                f"dataset header does not match the layout of project "
                f"{goal}/{project}"
            )
        with self._locks.acquire(goal, project):
            target = folder / f"{name}.csv"
            if target.exists():
                raise ConflictError(
                    f"dataset {name!r} already exists in {goal}/{project}"
                )
            sidecar = {
                "name": name,
                "n_rows": ds.n_rows,
                "schema_fingerprint": ds.schema_fingerprint,
                "entity_ids": entity_ids,
                "created_at": created_at_now(),
            }
            tmp_csv = folder / f"{_TMP_PREFIX}{name}.csv"
            write_csv(ds, tmp_csv)
            _atomic_write(
                folder / f"{name}.json",
                (json.dumps(sidecar, indent=2) + "\n").encode("utf-8"),
            )
            os.replace(tmp_csv, target)

    def get_datasets(self, goal: str, project: str) -> list[DatasetSummary]:
        folder = self._require_project_dir(goal, project) / "datasets"
        out = []
        for name in _listing(folder, ".csv"):
            meta = self._dataset_sidecar(folder, name)
            out.append(
                DatasetSummary(
                    name=name,
                    n_rows=int(meta.get("n_rows", -1)),
                    created_at=str(meta.get("created_at", "")),
                )
            )
        return out

    def _dataset_sidecar(self, folder: Path, name: str) -> dict:
        sidecar = folder / f"{name}.json"
        if sidecar.is_file():
            return json.loads(sidecar.read_text("utf-8"))
        return {}

    def load_dataset(self, goal: str, project: str, name: str) -> DataSet:
        folder = self._require_project_dir(goal, project) / "datasets"
        path = folder / f"{name}.csv"
        if not path.is_file():
            raise NotFoundError(
                f"dataset {name!r} does not exist in {goal}/{project}"
            )
        return read_csv(path)

    def dataset_restriction(
        self, goal: str, project: str, name: str
    ) -> list[str] | None:
        folder = self._require_project_dir(goal, project) / "datasets"
        if not (folder / f"{name}.csv").is_file():
            raise NotFoundError(
                f"dataset {name!r} does not exist in {goal}/{project}"
            )
        ids = self._dataset_sidecar(folder, name).get("entity_ids")
        return None if ids is None else [str(i) for i in ids]

    # -- models --------------------------------------------------------

    def save_model(self, goal: str, project: str, name: str, model: RiskModel) -> None:
        check_name(name, "model")
        folder = self._require_project_dir(goal, project) / "models"
        if model.header != self.project_header(goal, project):
            raise ValidationError(
                f"model header does not match the layout of project "
                f"{goal}/{project}"
            )
        with self._locks.acquire(goal, project):
            target = folder / f"{name}.json"
            if target.exists():
                raise ConflictError(
                    f"model {name!r} already exists in {goal}/{project}"
                )
            tmp = folder / f"{_TMP_PREFIX}{name}.json"
            write_model(model, tmp)
            os.replace(tmp, target)

    def get_models(self, goal: str, project: str) -> list[ModelSummary]:
        folder = self._require_project_dir(goal, project) / "models"
        out = []
        for name in _listing(folder, ".json"):
            model = read_model(folder / f"{name}.json")
            out.append(
                ModelSummary(
                    name=name,
                    model_size=model.model_size,
                    objective=model.meta.objective,
                    solver_status=model.meta.solver_status,
                    created_at=model.meta.created_at,
                )
            )
        return out

    def load_model(self, goal: str, project: str, name: str) -> RiskModel:
        folder = self._require_project_dir(goal, project) / "models"
        path = folder / f"{name}.json"
        if not path.is_file():
            raise NotFoundError(
                f"model {name!r} does not exist in {goal}/{project}"
            )
        return read_model(path)
