/** Interactive scoring table.
 *
 * Renders the items of a fitted model's scorecard. Binary items get a
 * checkbox, integer items a number input. The footer total and risk
 * recompute locally on every change; no server round trip.
 */

import type { ScoringTableDoc } from "./api.js";
import { riskProbability } from "./risk.js";

export type Selection = Record<string, number>;

export function totalFor(doc: ScoringTableDoc, selection: Selection): number {
  let total = 0;
  for (const item of doc.items) {
    const value = selection[item.column] ?? 0;
    total += item.points * value;
  }
  return total;
}

export function riskFor(doc: ScoringTableDoc, selection: Selection): number {
  return riskProbability(doc.bias, totalFor(doc, selection));
}

export class ScoringTableView {
  element: HTMLElement;
  private doc: ScoringTableDoc;
  private selection: Selection;
  private totalCell: HTMLElement;
  private riskCell: HTMLElement;
  private contribCells: Map<string, HTMLElement>;

  constructor(doc: ScoringTableDoc) {
    this.doc = doc;
    this.selection = {};
    this.contribCells = new Map();

    this.element = document.createElement("div");
    this.element.className = "scoring-table";

    const table = document.createElement("table");
    const head = document.createElement("tr");
    for (const text of ["item", "points", "value", "contribution"]) {
      const th = document.createElement("th");
      th.textContent = text;
      head.appendChild(th);
    }
    table.appendChild(head);

    for (const item of doc.items) {
      const row = document.createElement("tr");

      const label = document.createElement("td");
      label.textContent = item.label;
      row.appendChild(label);

      const points = document.createElement("td");
      points.textContent = String(item.points);
      row.appendChild(points);

      const valueCell = document.createElement("td");
      const input = document.createElement("input");
      input.dataset["column"] = item.column;
      if (item.is_binary) {
        input.type = "checkbox";
        input.addEventListener("change", () => {
          this.setValue(item.column, input.checked ? 1 : 0);
        });
      } else {
        input.type = "number";
        input.step = "1";
        input.value = "0";
        input.addEventListener("input", () => {
          const parsed = Math.trunc(Number(input.value));
          this.setValue(item.column, Number.isFinite(parsed) ? parsed : 0);
        });
      }
      valueCell.appendChild(input);
      row.appendChild(valueCell);

      const contrib = document.createElement("td");
      contrib.className = "contribution";
      contrib.textContent = "0";
      this.contribCells.set(item.column, contrib);
      row.appendChild(contrib);

      table.appendChild(row);
    }

    const footer = document.createElement("tr");
    footer.className = "score-footer";
    const footLabel = document.createElement("td");
    footLabel.textContent = `total (bias ${doc.bias})`;
    footLabel.colSpan = 3;
    footer.appendChild(footLabel);
    this.totalCell = document.createElement("td");
    this.totalCell.className = "score-total";
    footer.appendChild(this.totalCell);
    table.appendChild(footer);

    const riskRow = document.createElement("tr");
    const riskLabel = document.createElement("td");
    riskLabel.textContent = "predicted risk";
    riskLabel.colSpan = 3;
    riskRow.appendChild(riskLabel);
    this.riskCell = document.createElement("td");
    this.riskCell.className = "score-risk";
    riskRow.appendChild(this.riskCell);
    table.appendChild(riskRow);

    this.element.appendChild(table);

    if (doc.warnings.length > 0) {
      const warnings = document.createElement("ul");
      warnings.className = "warnings";
      for (const text of doc.warnings) {
        const li = document.createElement("li");
        li.textContent = text;
        warnings.appendChild(li);
      }
      this.element.appendChild(warnings);
    }

    if (doc.risk_rows.length > 0) {
      const ref = document.createElement("table");
      ref.className = "risk-reference";
      const refHead = document.createElement("tr");
      for (const text of ["score", "risk"]) {
        const th = document.createElement("th");
        th.textContent = text;
        refHead.appendChild(th);
      }
      ref.appendChild(refHead);
      for (const [score, risk] of doc.risk_rows) {
        const tr = document.createElement("tr");
        const scoreCell = document.createElement("td");
        scoreCell.textContent = String(score);
        tr.appendChild(scoreCell);
        const riskCell = document.createElement("td");
        riskCell.textContent = risk.toPrecision(6);
        tr.appendChild(riskCell);
        ref.appendChild(tr);
      }
      this.element.appendChild(ref);
    }

    this.refresh();
  }

  setValue(column: string, value: number): void {
    this.selection[column] = value;
    this.refresh();
  }

  total(): number {
    return totalFor(this.doc, this.selection);
  }

  risk(): number {
    return riskFor(this.doc, this.selection);
  }

  private refresh(): void {
    for (const item of this.doc.items) {
      const cell = this.contribCells.get(item.column);
      if (cell) cell.textContent = String(item.points * (this.selection[item.column] ?? 0));
    }
    this.totalCell.textContent = String(this.total());
    this.riskCell.textContent = this.risk().toPrecision(12);
  }
}
