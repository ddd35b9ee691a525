/** Typed client for the workbench HTTP service.
 *
 * One method per route, all asynchronous, errors normalized to ApiError
 * carrying the service's {code, message, detail} envelope.
 */

export interface FeatureEntry {
  id: string;
  label: string;
  explanation: string;
  goal_eligible: boolean;
}

export interface ProjectDoc {
  id: string;
  name: string;
  goal: string;
  inputs: string[];
}

export interface DatasetSummary {
  name: string;
  n_rows: number;
  created_at: string;
}

export interface ModelSummary {
  name: string;
  model_size: number;
  objective: number;
  solver_status: string;
  created_at: string;
}

export interface FitConfigBody {
  max_model_size?: number;
  coef_min?: number;
  coef_max?: number;
  bias_min?: number;
  bias_max?: number;
  l0_penalty?: number;
  time_limit_seconds?: number;
  solver_mode?: string;
  random_seed?: number;
}

export interface TableItem {
  column: string;
  label: string;
  points: number;
  is_binary: boolean;
}

export interface ScoringTableDoc {
  items: TableItem[];
  bias: number;
  risk_rows: [number, number][];
  warnings: string[];
}

export interface ModelDetail {
  name: string;
  model: {
    header: string[];
    bias: number;
    coefficients: number[];
    fit_config: FitConfigBody;
    objective: number;
    solver_status: string;
    solver: string;
    [key: string]: unknown;
  };
  scoring_table: ScoringTableDoc;
}

export interface JobDoc {
  job_id: string;
  project: string;
  dataset: string;
  model_name: string;
  state: "queued" | "running" | "done" | "failed" | "cancelled";
  progress: { candidates: number; incumbent: number | null };
  model: string | null;
  error: string | null;
}

export interface ReportRow {
  threshold: number;
  tp: number;
  fp: number;
  tn: number;
  fn: number;
  precision: number | null;
  recall: number | null;
  accuracy: number | null;
  f1: number | null;
}

export interface ReportDoc {
  model: string;
  dataset: string;
  n: number;
  rows: ReportRow[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail: unknown = null,
  ) {
    super(message);
  }
}

/** Everything the page needs from the server; tests substitute fakes. */
export interface Api {
  listFeatures(): Promise<FeatureEntry[]>;
  createProject(goal: string, name: string, inputs: string[]): Promise<ProjectDoc>;
  listProjects(goal?: string): Promise<ProjectDoc[]>;
  getProject(goal: string, name: string): Promise<ProjectDoc>;
  createDataset(goal: string, project: string, name: string,
                entityIds?: string[]): Promise<DatasetSummary>;
  listDatasets(goal: string, project: string): Promise<DatasetSummary[]>;
  submitFit(goal: string, project: string, name: string, dataset: string,
            config: FitConfigBody): Promise<JobDoc>;
  listModels(goal: string, project: string): Promise<ModelSummary[]>;
  getModel(goal: string, project: string, model: string): Promise<ModelDetail>;
  validate(goal: string, project: string, model: string, dataset: string,
           thresholds?: number[]): Promise<ReportDoc>;
  getJob(jobId: string): Promise<JobDoc>;
  cancelJob(jobId: string): Promise<JobDoc>;
}

export class ApiClient implements Api {
  constructor(private base: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await fetch(this.base + path, init);
    const payload = await response.json();
    if (!response.ok) {
      const env = payload as { code?: string; message?: string; detail?: unknown };
      throw new ApiError(
        response.status,
        env.code ?? "internal",
        env.message ?? response.statusText,
        env.detail ?? null,
      );
    }
    return payload as T;
  }

  listFeatures(): Promise<FeatureEntry[]> {
    return this.request("GET", "/features");
  }

  createProject(goal: string, name: string, inputs: string[]): Promise<ProjectDoc> {
    return this.request("POST", "/projects", { goal, name, inputs });
  }

  listProjects(goal?: string): Promise<ProjectDoc[]> {
    const query = goal ? `?goal=${encodeURIComponent(goal)}` : "";
    return this.request("GET", `/projects${query}`);
  }

  getProject(goal: string, name: string): Promise<ProjectDoc> {
    return this.request("GET", `/projects/${goal}/${name}`);
  }

  createDataset(goal: string, project: string, name: string,
                entityIds?: string[]): Promise<DatasetSummary> {
    const body: { name: string; entity_ids?: string[] } = { name };
    if (entityIds && entityIds.length) body.entity_ids = entityIds;
    return this.request("POST", `/projects/${goal}/${project}/datasets`, body);
  }

  listDatasets(goal: string, project: string): Promise<DatasetSummary[]> {
    return this.request("GET", `/projects/${goal}/${project}/datasets`);
  }

  submitFit(goal: string, project: string, name: string, dataset: string,
            config: FitConfigBody): Promise<JobDoc> {
    return this.request("POST", `/projects/${goal}/${project}/models`, {
      name,
      dataset,
      fit_config: config,
    });
  }

  listModels(goal: string, project: string): Promise<ModelSummary[]> {
    return this.request("GET", `/projects/${goal}/${project}/models`);
  }

  getModel(goal: string, project: string, model: string): Promise<ModelDetail> {
    return this.request("GET", `/projects/${goal}/${project}/models/${model}`);
  }

  validate(goal: string, project: string, model: string, dataset: string,
           thresholds?: number[]): Promise<ReportDoc> {
    const body: { model: string; dataset: string; thresholds?: number[] } = {
      model,
      dataset,
    };
    if (thresholds) body.thresholds = thresholds;
    return this.request("POST", `/projects/${goal}/${project}/validate`, body);
  }

  getJob(jobId: string): Promise<JobDoc> {
    return this.request("GET", `/jobs/${jobId}`);
  }

  cancelJob(jobId: string): Promise<JobDoc> {
    return this.request("POST", `/jobs/${jobId}/cancel`);
  }
}
