/** In-memory Api double for page tests: small, deterministic, scripted jobs. */

import type {
  Api,
  DatasetSummary,
  FeatureEntry,
  FitConfigBody,
  JobDoc,
  ModelDetail,
  ModelSummary,
  ProjectDoc,
  ReportDoc,
  ReportRow,
  ScoringTableDoc,
} from "../src/api.js";
import { ApiError } from "../src/api.js";
import { riskProbability } from "../src/risk.js";

export const FEATURES: FeatureEntry[] = [
  {
    id: "rejection_within_1y",
    label: "graft rejection within one year",
    explanation: "binary outcome",
    goal_eligible: true,
  },
  { id: "sex", label: "sex", explanation: "", goal_eligible: false },
  { id: "diabetes", label: "diabetes", explanation: "", goal_eligible: false },
  { id: "blood_group", label: "blood group", explanation: "", goal_eligible: false },
];

const GOAL = "rejection_within_1y";

function defaultGrid(): number[] {
  const grid: number[] = [];
  for (let i = 1; i <= 19; i++) grid.push(Math.round(i * 5) / 100);
  return grid;
}

function scoringDoc(bias: number): ScoringTableDoc {
  const items = [
    { column: "sexEQfemale", label: "sex = female", points: 2, is_binary: true },
    { column: "diabetesEQyes", label: "diabetes = yes", points: -1, is_binary: true },
  ];
  const risk_rows: [number, number][] = [];
  for (const total of [-1, 0, 1, 2]) {
    risk_rows.push([total, riskProbability(bias, total)]);
  }
  return { items, bias, risk_rows, warnings: [] };
}

export class FakeApi implements Api {
  projects: ProjectDoc[] = [];
  datasets = new Map<string, DatasetSummary[]>();
  models = new Map<string, Map<string, ModelDetail>>();
  validateCalls: { model: string; dataset: string; thresholds?: number[] }[] = [];
  jobCounter = 0;
  private pendingJob: { doc: JobDoc; pollsLeft: number; config: FitConfigBody } | null =
    null;

  listFeatures(): Promise<FeatureEntry[]> {
    return Promise.resolve(FEATURES);
  }

  createProject(goal: string, name: string, inputs: string[]): Promise<ProjectDoc> {
    if (this.projects.some((p) => p.goal === goal && p.name === name)) {
      return Promise.reject(
        new ApiError(409, "conflict", `project ${goal}/${name} already exists`),
      );
    }
    if (!name) {
      return Promise.reject(new ApiError(422, "validation", "name must not be empty"));
    }
    const doc = { id: `${goal}/${name}`, name, goal, inputs };
    this.projects.push(doc);
    this.datasets.set(doc.id, []);
    this.models.set(doc.id, new Map());
    return Promise.resolve(doc);
  }

  listProjects(goal?: string): Promise<ProjectDoc[]> {
    return Promise.resolve(
      this.projects.filter((p) => goal === undefined || p.goal === goal),
    );
  }

  getProject(goal: string, name: string): Promise<ProjectDoc> {
    const found = this.projects.find((p) => p.goal === goal && p.name === name);
    if (!found) {
      return Promise.reject(new ApiError(404, "not-found", "no such project"));
    }
    return Promise.resolve(found);
  }

  createDataset(
    goal: string,
    project: string,
    name: string,
    entityIds?: string[],
  ): Promise<DatasetSummary> {
    const summary = {
      name,
      n_rows: entityIds ? entityIds.length : 200,
      created_at: "1970-01-01T00:00:00Z",
    };
    this.datasets.get(`${goal}/${project}`)?.push(summary);
    return Promise.resolve(summary);
  }

  listDatasets(goal: string, project: string): Promise<DatasetSummary[]> {
    return Promise.resolve(this.datasets.get(`${goal}/${project}`) ?? []);
  }

  submitFit(
    goal: string,
    project: string,
    name: string,
    dataset: string,
    config: FitConfigBody,
  ): Promise<JobDoc> {
    this.jobCounter += 1;
    const doc: JobDoc = {
      job_id: `job-${String(this.jobCounter).padStart(4, "0")}`,
      project: `${goal}/${project}`,
      dataset,
      model_name: name,
      state: "queued",
      progress: { candidates: 0, incumbent: null },
      model: null,
      error: null,
    };
    this.pendingJob = { doc, pollsLeft: 2, config };
    return Promise.resolve(doc);
  }

  getJob(jobId: string): Promise<JobDoc> {
    const pending = this.pendingJob;
    if (!pending || pending.doc.job_id !== jobId) {
      return Promise.reject(new ApiError(404, "not-found", `unknown job ${jobId}`));
    }
    pending.pollsLeft -= 1;
    if (pending.pollsLeft > 0) {
      pending.doc = {
        ...pending.doc,
        state: "running",
        progress: { candidates: 1200, incumbent: 0.64 },
      };
    } else if (pending.doc.state !== "cancelled") {
      pending.doc = {
        ...pending.doc,
        state: "done",
        model: pending.doc.model_name,
        progress: { candidates: 4961, incumbent: 0.58 },
      };
      this.storeModel(pending.doc.project, pending.doc.model_name, pending.config);
    }
    return Promise.resolve(pending.doc);
  }

  cancelJob(jobId: string): Promise<JobDoc> {
    const pending = this.pendingJob;
    if (!pending || pending.doc.job_id !== jobId) {
      return Promise.reject(new ApiError(404, "not-found", `unknown job ${jobId}`));
    }
    pending.doc = { ...pending.doc, state: "cancelled" };
    pending.pollsLeft = 0;
    return Promise.resolve(pending.doc);
  }

  storeModel(projectId: string, name: string, config: FitConfigBody): void {
    const detail: ModelDetail = {
      name,
      model: {
        header: ["rejection_within_1y", "sexEQfemale", "diabetesEQyes"],
        bias: 1,
        coefficients: [2, -1],
        fit_config: {
          max_model_size: 5,
          coef_min: -5,
          coef_max: 5,
          bias_min: -20,
          bias_max: 20,
          l0_penalty: 0.001,
          time_limit_seconds: 60,
          solver_mode: "auto",
          random_seed: 0,
          ...config,
        },
        objective: 0.58,
        solver_status: "optimal",
        solver: "exact",
      },
      scoring_table: scoringDoc(1),
    };
    this.models.get(projectId)?.set(name, detail);
  }

  listModels(goal: string, project: string): Promise<ModelSummary[]> {
    const byName = this.models.get(`${goal}/${project}`) ?? new Map<string, ModelDetail>();
    return Promise.resolve(
      [...byName.values()].map((d) => ({
        name: d.name,
        model_size: d.model.coefficients.filter((c) => c !== 0).length,
        objective: d.model.objective,
        solver_status: d.model.solver_status,
        created_at: "1970-01-01T00:00:00Z",
      })),
    );
  }

  getModel(goal: string, project: string, model: string): Promise<ModelDetail> {
    const found = this.models.get(`${goal}/${project}`)?.get(model);
    if (!found) {
      return Promise.reject(new ApiError(404, "not-found", `no model ${model}`));
    }
    return Promise.resolve(found);
  }

  validate(
    goal: string,
    project: string,
    model: string,
    dataset: string,
    thresholds?: number[],
  ): Promise<ReportDoc> {
    const call: { model: string; dataset: string; thresholds?: number[] } = {
      model,
      dataset,
    };
    if (thresholds) call.thresholds = thresholds;
    this.validateCalls.push(call);
    const grid = thresholds
      ? [...new Set(thresholds)].sort((a, b) => a - b)
      : defaultGrid();
    const rows: ReportRow[] = grid.map((t) => ({
      threshold: t,
      tp: 10,
      fp: 5,
      tn: 20,
      fn: 5,
      // leave the highest threshold undefined to exercise gap rendering
      precision: t > 0.9 ? null : 10 / 15,
      recall: 10 / 15,
      accuracy: 30 / 40,
      f1: t > 0.9 ? null : 2 / 3,
    }));
    return Promise.resolve({ model, dataset, n: 40, rows });
  }

  /** Preload one finished project for choose-existing tests. */
  seed(): void {
    const doc = { id: `${GOAL}/demo`, name: "demo", goal: GOAL, inputs: ["sex", "diabetes"] };
    this.projects.push(doc);
    this.datasets.set(doc.id, [
      { name: "train", n_rows: 200, created_at: "1970-01-01T00:00:00Z" },
    ]);
    this.models.set(doc.id, new Map());
    this.storeModel(doc.id, "m1", { max_model_size: 2, solver_mode: "exact" });
  }
}
