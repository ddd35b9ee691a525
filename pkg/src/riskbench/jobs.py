"""Background fit jobs with per-project FIFO execution.

A submitted job is queued, picked up by its project's worker thread,
and moves through queued -> running -> done | failed | cancelled. Only
one job per project runs at a time, matching the store's single-writer
rule; jobs for different projects run in parallel. Cancellation is
cooperative: a flag the solver checks between candidate evaluations.
"""

from __future__ import annotations

import queue
import threading
import time
from dataclasses import dataclass, field

from . import solvers
from .errors import ConflictError, FitCancelled, NotFoundError
from .model import FitConfig
from .store import ProjectStore

_TERMINAL = ("done", "failed", "cancelled")


@dataclass
class FitJob:
    job_id: str
    goal: str
    project: str
    dataset: str
    model_name: str
    config: FitConfig
    state: str = "queued"
    candidates: int = 0
    incumbent: float | None = None
    error: str | None = None
    stop: threading.Event = field(default_factory=threading.Event, repr=False)

    @property
    def project_id(self) -> str:
        return f"{self.goal}/{self.project}"


def job_document(job: FitJob) -> dict:
    """JSON-ready job status."""
    return {
        "job_id": job.job_id,
        "project": job.project_id,
        "dataset": job.dataset,
        "model_name": job.model_name,
        "state": job.state,
        "progress": {
            "candidates": job.candidates,
            "incumbent": job.incumbent,
        },
        "model": job.model_name if job.state == "done" else None,
        "error": job.error,
    }


class JobManager:
    """Owns the job table and one worker thread per active project."""

    def __init__(self, store: ProjectStore):
        self._store = store
        self._lock = threading.RLock()
        self._jobs: dict[str, FitJob] = {}
        self._queues: dict[tuple[str, str], queue.Queue] = {}
        self._counter = 0

    def submit(
        self,
        goal: str,
        project: str,
        dataset: str,
        model_name: str,
        config: FitConfig,
    ) -> FitJob:
        """Validate references, then enqueue a fit for this project."""
        # surface reference mistakes at submit time, not inside the worker
        self._store.load_dataset(goal, project, dataset)
        if any(m.name == model_name for m in self._store.get_models(goal, project)):
            raise ConflictError(
                f"model {model_name!r} already exists in {goal}/{project}"
            )
        with self._lock:
            self._counter += 1
            job = FitJob(
                job_id=f"job-{self._counter:04d}",
                goal=goal,
                project=project,
                dataset=dataset,
                model_name=model_name,
                config=config,
            )
            self._jobs[job.job_id] = job
            self._queue_for(goal, project).put(job)
        return job

    def get(self, job_id: str) -> FitJob:
        with self._lock:
            if job_id not in self._jobs:
                raise NotFoundError(f"unknown job {job_id!r}")
            return self._jobs[job_id]

    def jobs(self) -> list[FitJob]:
        with self._lock:
            return list(self._jobs.values())

    def cancel(self, job_id: str) -> FitJob:
        """Request cancellation; terminal jobs are left as they are."""
        with self._lock:
            job = self.get(job_id)
            if job.state == "queued":
                job.state = "cancelled"
            elif job.state == "running":
                job.stop.set()
            return job

    def _queue_for(self, goal: str, project: str) -> queue.Queue:
        key = (goal, project)
        if key not in self._queues:
            self._queues[key] = queue.Queue()
            worker = threading.Thread(
                target=self._work, args=(key,), daemon=True,
                name=f"fit-{goal}-{project}",
            )
            worker.start()
        return self._queues[key]

    def _work(self, key: tuple[str, str]) -> None:
        q = self._queues[key]
        while True:
            job: FitJob = q.get()
            with self._lock:
                if job.state != "queued":
                    continue  # cancelled while waiting
                job.state = "running"
            self._run(job)

    def _run(self, job: FitJob) -> None:
        def on_progress(candidates: int, incumbent: float | None) -> None:
            job.candidates = candidates
            job.incumbent = incumbent

        try:
            ds = self._store.load_dataset(job.goal, job.project, job.dataset)
            model = solvers.fit(
                ds,
                job.config,
                progress=on_progress,
                should_stop=job.stop.is_set,
            )
            self._store.save_model(job.goal, job.project, job.model_name, model)
        except FitCancelled:
            with self._lock:
                job.state = "cancelled"
        except Exception as exc:
            with self._lock:
                job.state = "failed"
                job.error = str(exc)
        else:
            with self._lock:
                job.state = "done"

    def wait(self, job_id: str, timeout: float = 120.0) -> FitJob:
        """Poll until the job reaches a terminal state (test/CLI helper)."""
        deadline = time.monotonic() + timeout
        while time.monotonic() < deadline:
            job = self.get(job_id)
            if job.state in _TERMINAL:
                return job
            time.sleep(0.02)
        raise TimeoutError(f"job {job_id} still {self.get(job_id).state}")
