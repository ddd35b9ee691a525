/** Fit progress panel: polls one job until it settles. */

import type { Api, JobDoc } from "./api.js";

const TERMINAL: ReadonlySet<JobDoc["state"]> = new Set(["done", "failed", "cancelled"]);

export function isTerminal(state: JobDoc["state"]): boolean {
  return TERMINAL.has(state);
}

export interface TrackOptions {
  intervalMs?: number;
  onUpdate?: (doc: JobDoc) => void;
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class JobPanel {
  element: HTMLElement;
  private statusLine: HTMLElement;
  private cancelButton: HTMLButtonElement;
  private cancelling = false;

  constructor(api: Api, doc: JobDoc) {
    this.element = document.createElement("div");
    this.element.className = "job-panel";

    this.statusLine = document.createElement("p");
    this.statusLine.className = "job-status";
    this.element.appendChild(this.statusLine);

    this.cancelButton = document.createElement("button");
    this.cancelButton.textContent = "cancel";
    this.cancelButton.className = "job-cancel";
    this.cancelButton.addEventListener("click", () => {
      if (this.cancelling) return;
      this.cancelling = true;
      this.cancelButton.disabled = true;
      void api.cancelJob(doc.job_id).catch(() => {
        // job may already be terminal; next poll reports the truth
      });
    });
    this.element.appendChild(this.cancelButton);

    this.update(doc);
  }

  update(doc: JobDoc): void {
    const parts = [`${doc.job_id}: ${doc.state}`];
    if (doc.progress.candidates > 0) {
      parts.push(`${doc.progress.candidates} candidates`);
    }
    if (doc.progress.incumbent !== null) {
      parts.push(`best objective ${doc.progress.incumbent.toPrecision(6)}`);
    }
    if (doc.error) parts.push(doc.error);
    this.statusLine.textContent = parts.join(" | ");
    if (isTerminal(doc.state)) {
      this.cancelButton.disabled = true;
      this.element.classList.add("settled");
      this.element.dataset["state"] = doc.state;
    }
  }

  /** Poll until the job reaches a terminal state. */
  async track(api: Api, doc: JobDoc, options: TrackOptions = {}): Promise<JobDoc> {
    const interval = options.intervalMs ?? 400;
    let current = doc;
    this.update(current);
    options.onUpdate?.(current);
    while (!isTerminal(current.state)) {
      await sleep(interval);
      current = await api.getJob(current.job_id);
      this.update(current);
      options.onUpdate?.(current);
    }
    return current;
  }
}
