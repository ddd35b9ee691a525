/** Validation comparison charts.
 *
 * Every run appends one labeled chart; earlier charts stay on screen so
 * runs can be compared side by side. Undefined metrics (0/0 divisions
 * reported as null) break the line into segments instead of plotting a
 * fake zero.
 */

import type { ReportDoc, ReportRow } from "./api.js";

export const METRICS = ["precision", "recall", "accuracy", "f1"] as const;
export type MetricName = (typeof METRICS)[number];

const COLORS: Record<MetricName, string> = {
  precision: "#2a6fdb",
  recall: "#d1462f",
  accuracy: "#2e8540",
  f1: "#8a4fbe",
};

const WIDTH = 520;
const HEIGHT = 240;
const PAD = { left: 44, right: 12, top: 12, bottom: 28 };

export interface SeriesPoint {
  threshold: number;
  value: number;
}

/** Contiguous runs of defined values; a null splits the line. */
export function seriesSegments(rows: ReportRow[], metric: MetricName): SeriesPoint[][] {
  const segments: SeriesPoint[][] = [];
  let current: SeriesPoint[] = [];
  for (const row of rows) {
    const value = row[metric];
    if (value === null) {
      if (current.length > 0) segments.push(current);
      current = [];
    } else {
      current.push({ threshold: row.threshold, value });
    }
  }
  if (current.length > 0) segments.push(current);
  return segments;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function xPos(threshold: number): number {
  return PAD.left + threshold * (WIDTH - PAD.left - PAD.right);
}

function yPos(value: number): number {
  return HEIGHT - PAD.bottom - value * (HEIGHT - PAD.top - PAD.bottom);
}

function renderSvg(report: ReportDoc): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("width", String(WIDTH));
  svg.setAttribute("height", String(HEIGHT));

  const axes = document.createElementNS(SVG_NS, "path");
  const x0 = xPos(0);
  const y0 = yPos(0);
  axes.setAttribute("d", `M ${x0} ${yPos(1)} L ${x0} ${y0} L ${xPos(1)} ${y0}`);
  axes.setAttribute("class", "axes");
  axes.setAttribute("fill", "none");
  axes.setAttribute("stroke", "#555");
  svg.appendChild(axes);

  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(xPos(tick)));
    label.setAttribute("y", String(HEIGHT - 8));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("font-size", "10");
    label.textContent = tick.toFixed(2);
    svg.appendChild(label);

    const yLabel = document.createElementNS(SVG_NS, "text");
    yLabel.setAttribute("x", String(PAD.left - 6));
    yLabel.setAttribute("y", String(yPos(tick) + 3));
    yLabel.setAttribute("text-anchor", "end");
    yLabel.setAttribute("font-size", "10");
    yLabel.textContent = tick.toFixed(2);
    svg.appendChild(yLabel);
  }

  const rows = [...report.rows].sort((a, b) => a.threshold - b.threshold);
  for (const metric of METRICS) {
    for (const segment of seriesSegments(rows, metric)) {
      if (segment.length > 1) {
        const line = document.createElementNS(SVG_NS, "polyline");
        line.setAttribute(
          "points",
          segment.map((p) => `${xPos(p.threshold)},${yPos(p.value)}`).join(" "),
        );
        line.setAttribute("fill", "none");
        line.setAttribute("stroke", COLORS[metric]);
        line.setAttribute("stroke-width", "1.5");
        line.dataset["metric"] = metric;
        svg.appendChild(line);
      }
      for (const point of segment) {
        const dot = document.createElementNS(SVG_NS, "circle");
        dot.setAttribute("cx", String(xPos(point.threshold)));
        dot.setAttribute("cy", String(yPos(point.value)));
        dot.setAttribute("r", "2.5");
        dot.setAttribute("fill", COLORS[metric]);
        dot.dataset["metric"] = metric;
        dot.dataset["threshold"] = String(point.threshold);
        svg.appendChild(dot);
      }
    }
  }
  return svg;
}

export class ValidationCharts {
  element: HTMLElement;
  private active: HTMLElement | null = null;

  constructor() {
    this.element = document.createElement("div");
    this.element.className = "validation-charts";
  }

  get count(): number {
    return this.element.querySelectorAll(".chart").length;
  }

  /** Add a new labeled chart and make it the active one. */
  append(report: ReportDoc, label: string): void {
    const figure = document.createElement("figure");
    figure.className = "chart";
    figure.dataset["label"] = label;

    const caption = document.createElement("figcaption");
    caption.textContent = `${label} (n=${report.n})`;
    figure.appendChild(caption);

    const legend = document.createElement("div");
    legend.className = "legend";
    for (const metric of METRICS) {
      const entry = document.createElement("span");
      entry.textContent = metric;
      entry.style.color = COLORS[metric];
      legend.appendChild(entry);
    }
    figure.appendChild(legend);

    figure.appendChild(renderSvg(report));
    this.element.appendChild(figure);
    this.setActive(figure);
  }

  /** Replace only the active chart's plot, leaving the others alone. */
  addThreshold(report: ReportDoc): void {
    if (!this.active) throw new Error("no active chart");
    const old = this.active.querySelector("svg");
    if (old) old.remove();
    this.active.appendChild(renderSvg(report));
  }

  activeLabel(): string | null {
    return this.active?.dataset["label"] ?? null;
  }

  private setActive(figure: HTMLElement): void {
    if (this.active) this.active.classList.remove("active");
    this.active = figure;
    figure.classList.add("active");
  }
}
