/** Page assembly: six workflow blocks over the HTTP service.
 *
 * The page holds no modelling logic of its own. Every artifact comes
 * from the server; the only local arithmetic is the scoring-table risk
 * mirror, which must agree with the server to within 1e-9.
 */

import {
  Api,
  ApiError,
  FitConfigBody,
  ProjectDoc,
  ReportDoc,
} from "./api.js";
import { STEP_KEYS, StepKey, Workflow } from "./state.js";
import { ScoringTableView } from "./scoringTable.js";
import { ValidationCharts } from "./charts.js";
import { JobPanel } from "./jobs.js";

const STEP_TITLES: Record<StepKey, string> = {
  goal: "1. Goal",
  features: "2. Features",
  dataset: "3. Dataset",
  "fit-params": "4. Fit parameters",
  model: "5. Model",
  validation: "6. Validation",
};

const FIT_FIELDS: [keyof FitConfigBody, string, number][] = [
  ["max_model_size", "model size", 5],
  ["coef_min", "coefficient min", -5],
  ["coef_max", "coefficient max", 5],
  ["bias_min", "bias min", -20],
  ["bias_max", "bias max", 20],
  ["l0_penalty", "sparsity penalty", 0.001],
  ["time_limit_seconds", "time limit (s)", 60],
  ["random_seed", "seed", 0],
];

export interface AppOptions {
  pollIntervalMs?: number;
}

interface BlockEls {
  root: HTMLElement;
  value: HTMLElement;
  staleBadge: HTMLElement;
  body: HTMLElement;
}

interface ActiveRun {
  model: string;
  dataset: string;
  thresholds: number[];
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function labeled(text: string, input: HTMLElement): HTMLElement {
  const wrap = el("label", "field", text + " ");
  wrap.appendChild(input);
  return wrap;
}

function numberInput(name: string, value: number, step: string): HTMLInputElement {
  const input = el("input");
  input.type = "number";
  input.name = name;
  input.step = step;
  input.value = String(value);
  return input;
}

export class App {
  workflow = new Workflow();
  charts = new ValidationCharts();
  goal: string | null = null;
  project: ProjectDoc | null = null;
  dataset: string | null = null;
  fitConfig: FitConfigBody | null = null;
  modelName: string | null = null;
  scoringView: ScoringTableView | null = null;
  jobPanel: JobPanel | null = null;
  trackingFit = false;
  activeRun: ActiveRun | null = null;

  private blockEls = new Map<StepKey, BlockEls>();
  private modelResult: HTMLElement;
  private pollMs: number;

  constructor(
    private root: HTMLElement,
    private api: Api,
    options: AppOptions = {},
  ) {
    this.pollMs = options.pollIntervalMs ?? 500;
    this.modelResult = el("div", "model-result");

    root.textContent = "";
    const page = el("main", "workbench");
    for (const key of STEP_KEYS) {
      const section = el("section", "block");
      section.dataset["step"] = key;

      const header = el("div", "block-header");
      header.appendChild(el("h2", "block-title", STEP_TITLES[key]));
      const value = el("span", "block-value");
      header.appendChild(value);
      const staleBadge = el("span", "block-stale");
      header.appendChild(staleBadge);
      header.addEventListener("click", () => {
        if (!this.workflow.block(key).open) this.show(key);
      });
      section.appendChild(header);

      const body = el("div", "block-body");
      section.appendChild(body);

      page.appendChild(section);
      this.blockEls.set(key, { root: section, value, staleBadge, body });
    }
    root.appendChild(page);

    void this.buildBody("goal");
    this.render();
  }

  els(key: StepKey): BlockEls {
    const found = this.blockEls.get(key);
    if (!found) throw new Error(`no block ${key}`);
    return found;
  }

  /** Open one block, rebuild its body, repaint headers. */
  show(key: StepKey): void {
    this.workflow.openBlock(key);
    void this.buildBody(key);
    this.render();
  }

  render(): void {
    for (const block of this.workflow.blocks) {
      const els = this.els(block.key);
      els.root.classList.toggle("open", block.open);
      els.root.classList.toggle("closed", !block.open);
      els.root.classList.toggle("stale", block.stale);
      els.value.textContent = block.summary ?? "";
      els.staleBadge.textContent = block.stale ? "stale" : "";
      els.body.style.display = block.open ? "" : "none";
    }
  }

  private advance(key: StepKey, summary: string): void {
    this.workflow.record(key, summary);
    const next = this.workflow.nextKey(key);
    if (next) this.show(next);
    else this.render();
  }

  private async buildBody(key: StepKey): Promise<void> {
    const body = this.els(key).body;
    body.textContent = "loading...";
    try {
      switch (key) {
        case "goal":
          await this.buildGoal(body);
          break;
        case "features":
          await this.buildFeatures(body);
          break;
        case "dataset":
          await this.buildDataset(body);
          break;
        case "fit-params":
          await this.buildFitParams(body);
          break;
        case "model":
          await this.buildModel(body);
          break;
        case "validation":
          await this.buildValidation(body);
          break;
      }
    } catch (err) {
      body.textContent = "";
      body.appendChild(el("p", "error", describe(err)));
    }
  }

  private choiceList<T>(
    items: T[],
    label: (item: T) => string,
    onPick: (item: T) => void | Promise<void>,
    errorEl: HTMLElement,
  ): HTMLElement {
    const list = el("ul", "choices");
    for (const item of items) {
      const entry = el("li");
      const button = el("button", "choice", label(item));
      button.addEventListener("click", () => {
        void this.guard(button, errorEl, async () => onPick(item));
      });
      entry.appendChild(button);
      list.appendChild(entry);
    }
    return list;
  }

  /** Disable a control for the duration of a server call. */
  private async guard(
    button: HTMLButtonElement,
    errorEl: HTMLElement,
    action: () => Promise<void>,
  ): Promise<void> {
    button.disabled = true;
    button.classList.add("pending");
    errorEl.textContent = "";
    try {
      await action();
    } catch (err) {
      errorEl.textContent = describe(err);
    } finally {
      button.disabled = false;
      button.classList.remove("pending");
    }
  }

  private async buildGoal(body: HTMLElement): Promise<void> {
    const [features, projects] = await Promise.all([
      this.api.listFeatures(),
      this.api.listProjects(),
    ]);
    body.textContent = "";
    const errorEl = el("p", "error");

    const fresh = el("fieldset", "create-new");
    fresh.appendChild(el("legend", undefined, "new goal"));
    const select = el("select");
    select.name = "goal-pick";
    for (const feature of features.filter((f) => f.goal_eligible)) {
      const option = el("option", undefined, `${feature.label} (${feature.id})`);
      option.value = feature.id;
      select.appendChild(option);
    }
    fresh.appendChild(labeled("predict", select));
    const use = el("button", undefined, "use goal");
    use.addEventListener("click", () => {
      void this.guard(use, errorEl, async () => {
        this.pickGoal(select.value);
      });
    });
    fresh.appendChild(use);
    body.appendChild(fresh);

    const existing = el("fieldset", "choose-existing");
    existing.appendChild(el("legend", undefined, "goals already in use"));
    const goals = [...new Set(projects.map((p) => p.goal))];
    if (goals.length === 0) {
      existing.appendChild(el("p", "empty", "no projects yet"));
    } else {
      existing.appendChild(
        this.choiceList(goals, (g) => g, (g) => this.pickGoal(g), errorEl),
      );
    }
    body.appendChild(existing);
    body.appendChild(errorEl);
  }

  private pickGoal(goal: string): void {
    this.goal = goal;
    this.advance("goal", goal);
  }

  private async buildFeatures(body: HTMLElement): Promise<void> {
    if (!this.goal) {
      body.textContent = "pick a goal first";
      return;
    }
    const goal = this.goal;
    const [features, projects] = await Promise.all([
      this.api.listFeatures(),
      this.api.listProjects(goal),
    ]);
    body.textContent = "";
    const errorEl = el("p", "error");

    const fresh = el("fieldset", "create-new");
    fresh.appendChild(el("legend", undefined, "new project"));
    const nameInput = el("input");
    nameInput.name = "project-name";
    nameInput.placeholder = "project name";
    fresh.appendChild(labeled("name", nameInput));

    const candidates = features.filter((f) => f.id !== goal);
    const pickSelect = el("select");
    pickSelect.name = "feature-pick";
    for (const feature of candidates) {
      const option = el("option", undefined, `${feature.label} (${feature.id})`);
      option.value = feature.id;
      pickSelect.appendChild(option);
    }
    const chosen: string[] = [];
    const chosenList = el("ol", "input-picks");
    const redrawChosen = () => {
      chosenList.textContent = "";
      for (const id of chosen) {
        const item = el("li", undefined, id + " ");
        const remove = el("button", "remove", "remove");
        remove.addEventListener("click", () => {
          chosen.splice(chosen.indexOf(id), 1);
          redrawChosen();
        });
        item.appendChild(remove);
        chosenList.appendChild(item);
      }
    };
    const add = el("button", undefined, "add input");
    add.addEventListener("click", () => {
      const id = pickSelect.value;
      if (id && !chosen.includes(id)) {
        chosen.push(id);
        redrawChosen();
      }
    });
    fresh.appendChild(labeled("inputs", pickSelect));
    fresh.appendChild(add);
    fresh.appendChild(chosenList);

    const create = el("button", undefined, "create project");
    create.addEventListener("click", () => {
      void this.guard(create, errorEl, async () => {
        const doc = await this.api.createProject(goal, nameInput.value.trim(), [...chosen]);
        this.pickProject(doc);
      });
    });
    fresh.appendChild(create);
    body.appendChild(fresh);

    const existing = el("fieldset", "choose-existing");
    existing.appendChild(el("legend", undefined, "existing projects"));
    if (projects.length === 0) {
      existing.appendChild(el("p", "empty", "none for this goal"));
    } else {
      existing.appendChild(
        this.choiceList(
          projects,
          (p) => `${p.name} [${p.inputs.join(", ")}]`,
          (p) => this.pickProject(p),
          errorEl,
        ),
      );
    }
    body.appendChild(existing);
    body.appendChild(errorEl);
  }

  private pickProject(doc: ProjectDoc): void {
    this.project = doc;
    this.advance("features", `${doc.name}: ${doc.inputs.join(", ")}`);
  }

  private async buildDataset(body: HTMLElement): Promise<void> {
    const project = this.project;
    if (!project) {
      body.textContent = "create or choose a project first";
      return;
    }
    const datasets = await this.api.listDatasets(project.goal, project.name);
    body.textContent = "";
    const errorEl = el("p", "error");

    const fresh = el("fieldset", "create-new");
    fresh.appendChild(el("legend", undefined, "new dataset"));
    const nameInput = el("input");
    nameInput.name = "dataset-name";
    nameInput.placeholder = "dataset name";
    fresh.appendChild(labeled("name", nameInput));
    const idsInput = el("textarea");
    idsInput.name = "entity-ids";
    idsInput.placeholder = "optional entity ids, whitespace separated";
    fresh.appendChild(labeled("restrict to", idsInput));
    const create = el("button", undefined, "create dataset");
    create.addEventListener("click", () => {
      void this.guard(create, errorEl, async () => {
        const ids = idsInput.value.split(/[\s,]+/).filter(Boolean);
        const summary = await this.api.createDataset(
          project.goal,
          project.name,
          nameInput.value.trim(),
          ids.length ? ids : undefined,
        );
        this.dataset = summary.name;
        this.advance("dataset", `${summary.name} (${summary.n_rows} rows)`);
      });
    });
    fresh.appendChild(create);
    body.appendChild(fresh);

    const existing = el("fieldset", "choose-existing");
    existing.appendChild(el("legend", undefined, "existing datasets"));
    if (datasets.length === 0) {
      existing.appendChild(el("p", "empty", "none yet"));
    } else {
      existing.appendChild(
        this.choiceList(
          datasets,
          (d) => `${d.name} (${d.n_rows} rows)`,
          (d) => {
            this.dataset = d.name;
            this.advance("dataset", `${d.name} (${d.n_rows} rows)`);
          },
          errorEl,
        ),
      );
    }
    body.appendChild(existing);
    body.appendChild(errorEl);
  }

  private async buildFitParams(body: HTMLElement): Promise<void> {
    const project = this.project;
    const models = project
      ? await this.api.listModels(project.goal, project.name)
      : [];
    body.textContent = "";
    const errorEl = el("p", "error");

    const fresh = el("fieldset", "create-new");
    fresh.appendChild(el("legend", undefined, "new settings"));
    const inputs = new Map<keyof FitConfigBody, HTMLInputElement>();
    for (const [field, label, fallback] of FIT_FIELDS) {
      const current = this.fitConfig?.[field];
      const step = field === "l0_penalty" || field === "time_limit_seconds" ? "any" : "1";
      const input = numberInput(field, typeof current === "number" ? current : fallback, step);
      inputs.set(field, input);
      fresh.appendChild(labeled(label, input));
    }
    const solver = el("select");
    solver.name = "solver_mode";
    for (const mode of ["auto", "exact", "heuristic"]) {
      const option = el("option", undefined, mode);
      option.value = mode;
      solver.appendChild(option);
    }
    solver.value = this.fitConfig?.solver_mode ?? "auto";
    fresh.appendChild(labeled("solver", solver));

    const use = el("button", undefined, "use these settings");
    use.addEventListener("click", () => {
      void this.guard(use, errorEl, async () => {
        const config: FitConfigBody = { solver_mode: solver.value };
        for (const [field, input] of inputs) {
          const value = Number(input.value);
          if (!Number.isFinite(value)) throw new Error(`${field} must be a number`);
          config[field] = value as never;
        }
        this.pickConfig(config);
      });
    });
    fresh.appendChild(use);
    body.appendChild(fresh);

    const existing = el("fieldset", "choose-existing");
    existing.appendChild(el("legend", undefined, "reuse settings from a model"));
    if (!project || models.length === 0) {
      existing.appendChild(el("p", "empty", "no fitted models yet"));
    } else {
      existing.appendChild(
        this.choiceList(
          models,
          (m) => `${m.name} (size ${m.model_size})`,
          async (m) => {
            const detail = await this.api.getModel(project.goal, project.name, m.name);
            this.pickConfig(detail.model.fit_config);
          },
          errorEl,
        ),
      );
    }
    body.appendChild(existing);
    body.appendChild(errorEl);
  }

  private pickConfig(config: FitConfigBody): void {
    this.fitConfig = config;
    const summary =
      `size ${config.max_model_size}, ` +
      `coef [${config.coef_min}, ${config.coef_max}], ` +
      `bias [${config.bias_min}, ${config.bias_max}], ` +
      `${config.solver_mode}`;
    this.advance("fit-params", summary);
  }

  private async buildModel(body: HTMLElement): Promise<void> {
    const project = this.project;
    if (!project) {
      body.textContent = "create or choose a project first";
      return;
    }
    const models = await this.api.listModels(project.goal, project.name);
    body.textContent = "";
    const errorEl = el("p", "error");

    const fresh = el("fieldset", "create-new");
    fresh.appendChild(el("legend", undefined, "fit a new model"));
    if (!this.dataset) {
      fresh.appendChild(el("p", "empty", "choose a dataset first"));
    } else if (!this.fitConfig) {
      fresh.appendChild(el("p", "empty", "choose fit parameters first"));
    } else {
      const dataset = this.dataset;
      const config = this.fitConfig;
      const nameInput = el("input");
      nameInput.name = "model-name";
      nameInput.placeholder = "model name";
      fresh.appendChild(labeled("name", nameInput));
      const fit = el("button", undefined, "fit");
      fit.name = "fit";
      fit.disabled = this.trackingFit;
      fit.addEventListener("click", () => {
        void this.guard(fit, errorEl, async () => {
          if (this.trackingFit) throw new Error("a fit is already running");
          await this.runFit(project, nameInput.value.trim(), dataset, config);
        });
      });
      fresh.appendChild(fit);
    }
    body.appendChild(fresh);

    const existing = el("fieldset", "choose-existing");
    existing.appendChild(el("legend", undefined, "existing models"));
    if (models.length === 0) {
      existing.appendChild(el("p", "empty", "none yet"));
    } else {
      existing.appendChild(
        this.choiceList(
          models,
          (m) => `${m.name} (size ${m.model_size}, ${m.solver_status})`,
          async (m) => {
            await this.showModel(project, m.name);
          },
          errorEl,
        ),
      );
    }
    body.appendChild(existing);
    body.appendChild(this.modelResult);
    body.appendChild(errorEl);
  }

  private async runFit(
    project: ProjectDoc,
    name: string,
    dataset: string,
    config: FitConfigBody,
  ): Promise<void> {
    const job = await this.api.submitFit(project.goal, project.name, name, dataset, config);
    this.trackingFit = true;
    this.modelResult.textContent = "";
    this.jobPanel = new JobPanel(this.api, job);
    this.modelResult.appendChild(this.jobPanel.element);
    try {
      const final = await this.jobPanel.track(this.api, job, {
        intervalMs: this.pollMs,
      });
      if (final.state === "done" && final.model) {
        await this.showModel(project, final.model);
      }
    } finally {
      this.trackingFit = false;
    }
  }

  /** Fetch a model and put its scoring table in the model block. */
  private async showModel(project: ProjectDoc, name: string): Promise<void> {
    const detail = await this.api.getModel(project.goal, project.name, name);
    this.modelName = name;
    this.scoringView = new ScoringTableView(detail.scoring_table);
    const keep = this.jobPanel?.element;
    this.modelResult.textContent = "";
    if (keep) this.modelResult.appendChild(keep);
    this.modelResult.appendChild(this.scoringView.element);
    // summary recorded but block stays open so the table is visible
    this.workflow.record("model", name);
    this.render();
  }

  private async buildValidation(body: HTMLElement): Promise<void> {
    const project = this.project;
    if (!project) {
      body.textContent = "create or choose a project first";
      return;
    }
    const [models, datasets] = await Promise.all([
      this.api.listModels(project.goal, project.name),
      this.api.listDatasets(project.goal, project.name),
    ]);
    body.textContent = "";
    const errorEl = el("p", "error");

    const controls = el("div", "validation-controls");
    const modelSelect = el("select");
    modelSelect.name = "model-pick";
    for (const m of models) {
      const option = el("option", undefined, m.name);
      option.value = m.name;
      modelSelect.appendChild(option);
    }
    if (this.modelName) modelSelect.value = this.modelName;
    const datasetSelect = el("select");
    datasetSelect.name = "dataset-pick";
    for (const d of datasets) {
      const option = el("option", undefined, d.name);
      option.value = d.name;
      datasetSelect.appendChild(option);
    }
    if (this.dataset) datasetSelect.value = this.dataset;
    controls.appendChild(labeled("model", modelSelect));
    controls.appendChild(labeled("dataset", datasetSelect));

    const run = el("button", undefined, "run validation");
    run.name = "run-validation";
    run.addEventListener("click", () => {
      void this.guard(run, errorEl, async () => {
        if (!modelSelect.value || !datasetSelect.value) {
          throw new Error("pick a model and a dataset");
        }
        const report = await this.api.validate(
          project.goal,
          project.name,
          modelSelect.value,
          datasetSelect.value,
        );
        this.recordRun(report);
      });
    });
    controls.appendChild(run);
    body.appendChild(controls);

    const extra = el("div", "threshold-controls");
    const thresholdInput = numberInput("threshold", 0.5, "any");
    extra.appendChild(labeled("threshold", thresholdInput));
    const addPoint = el("button", undefined, "add threshold");
    addPoint.name = "add-threshold";
    addPoint.addEventListener("click", () => {
      void this.guard(addPoint, errorEl, async () => {
        const active = this.activeRun;
        if (!active) throw new Error("run a validation first");
        const t = Number(thresholdInput.value);
        if (!Number.isFinite(t) || t <= 0 || t >= 1) {
          throw new Error("threshold must lie strictly between 0 and 1");
        }
        const report = await this.api.validate(
          project.goal,
          project.name,
          active.model,
          active.dataset,
          [...active.thresholds, t],
        );
        active.thresholds = report.rows.map((r) => r.threshold);
        this.charts.addThreshold(report);
      });
    });
    extra.appendChild(addPoint);
    body.appendChild(extra);

    body.appendChild(this.charts.element);
    body.appendChild(errorEl);
  }

  private recordRun(report: ReportDoc): void {
    const label = `${report.model} on ${report.dataset}`;
    this.charts.append(report, label);
    this.activeRun = {
      model: report.model,
      dataset: report.dataset,
      thresholds: report.rows.map((r) => r.threshold),
    };
    this.workflow.record("validation", label);
    this.render();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  if (err instanceof Error) return err.message;
  return String(err);
}

export function mountApp(root: HTMLElement, api: Api, options: AppOptions = {}): App {
  return new App(root, api, options);
}
