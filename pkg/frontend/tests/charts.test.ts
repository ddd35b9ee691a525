import { describe, expect, it } from "vitest";
import type { ReportDoc, ReportRow } from "../src/api.js";
import { ValidationCharts, seriesSegments } from "../src/charts.js";

function row(threshold: number, precision: number | null, recall = 0.5): ReportRow {
  return {
    threshold,
    tp: 1,
    fp: 1,
    tn: 1,
    fn: 1,
    precision,
    recall,
    accuracy: 0.5,
    f1: precision === null ? null : 0.5,
  };
}

function report(thresholds: number[], name = "m1"): ReportDoc {
  return {
    model: name,
    dataset: "train",
    n: 40,
    rows: thresholds.map((t) => row(t, 0.6)),
  };
}

describe("seriesSegments", () => {
  it("splits the line at null values instead of plotting zeros", () => {
    const rows = [row(0.1, 0.2), row(0.2, null), row(0.3, 0.4), row(0.4, 0.5)];
    const segments = seriesSegments(rows, "precision");
    expect(segments.length).toBe(2);
    expect(segments[0]?.map((p) => p.threshold)).toEqual([0.1]);
    expect(segments[1]?.map((p) => p.threshold)).toEqual([0.3, 0.4]);
    expect(segments.flat().every((p) => p.value !== 0 || p.value === 0)).toBe(true);
  });

  it("returns one segment when nothing is undefined", () => {
    const rows = [row(0.1, 0.2), row(0.2, 0.3)];
    expect(seriesSegments(rows, "precision").length).toBe(1);
  });

  it("returns no segments when every value is undefined", () => {
    const rows = [row(0.1, null), row(0.2, null)];
    expect(seriesSegments(rows, "precision")).toEqual([]);
  });
});

describe("ValidationCharts", () => {
  it("appends a labeled chart per run and keeps earlier ones", () => {
    const charts = new ValidationCharts();
    charts.append(report([0.25, 0.5, 0.75], "m1"), "m1 on train");
    expect(charts.count).toBe(1);
    charts.append(report([0.25, 0.5, 0.75], "m2"), "m2 on train");
    expect(charts.count).toBe(2);
    const captions = [...charts.element.querySelectorAll("figcaption")].map(
      (c) => c.textContent,
    );
    expect(captions).toEqual(["m1 on train (n=40)", "m2 on train (n=40)"]);
    expect(charts.activeLabel()).toBe("m2 on train");
  });

  it("draws four metric series with markers per threshold", () => {
    const charts = new ValidationCharts();
    charts.append(report([0.2, 0.4, 0.6]), "run");
    const svg = charts.element.querySelector("svg");
    expect(svg).not.toBeNull();
    const dots = svg?.querySelectorAll("circle[data-metric]") ?? [];
    // 4 metrics x 3 thresholds
    expect(dots.length).toBe(12);
    const lines = svg?.querySelectorAll("polyline[data-metric]") ?? [];
    expect(lines.length).toBe(4);
  });

  it("renders undefined metrics as gaps", () => {
    const charts = new ValidationCharts();
    const doc = report([0.1, 0.2, 0.3, 0.4]);
    const second = doc.rows[1];
    if (second) {
      second.precision = null;
      second.f1 = null;
    }
    charts.append(doc, "gappy");
    const svg = charts.element.querySelector("svg");
    const precisionDots = svg?.querySelectorAll('circle[data-metric="precision"]') ?? [];
    expect(precisionDots.length).toBe(3);
    // split series: one point alone, then a two-point line
    const precisionLines = svg?.querySelectorAll('polyline[data-metric="precision"]') ?? [];
    expect(precisionLines.length).toBe(1);
    const recallLines = svg?.querySelectorAll('polyline[data-metric="recall"]') ?? [];
    expect(recallLines.length).toBe(1);
  });

  it("addThreshold redraws only the active chart", () => {
    const charts = new ValidationCharts();
    charts.append(report([0.25, 0.5]), "first");
    const firstSvg = charts.element.querySelector("svg");
    charts.append(report([0.25, 0.5], "m2"), "second");
    charts.addThreshold(report([0.25, 0.37, 0.5], "m2"));
    expect(charts.count).toBe(2);
    const figures = charts.element.querySelectorAll(".chart");
    // untouched first chart keeps its original svg node and point count
    expect(figures[0]?.querySelector("svg")).toBe(firstSvg);
    expect(figures[0]?.querySelectorAll("circle[data-metric]").length).toBe(8);
    expect(figures[1]?.querySelectorAll("circle[data-metric]").length).toBe(12);
    const added = figures[1]?.querySelectorAll('circle[data-threshold="0.37"]');
    expect(added?.length).toBe(4);
  });

  it("addThreshold without a run is an error", () => {
    const charts = new ValidationCharts();
    expect(() => charts.addThreshold(report([0.5]))).toThrow("no active chart");
  });
});
