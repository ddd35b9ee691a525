import { describe, expect, it } from "vitest";
import { STEP_KEYS, Workflow } from "../src/state.js";

function openKeys(w: Workflow): string[] {
  return w.blocks.filter((b) => b.open).map((b) => b.key);
}

describe("Workflow", () => {
  it("starts with only the goal block open", () => {
    const w = new Workflow();
    expect(openKeys(w)).toEqual(["goal"]);
    expect(w.blocks.map((b) => b.key)).toEqual([...STEP_KEYS]);
    expect(w.blocks.every((b) => b.summary === null && !b.stale)).toBe(true);
  });

  it("keeps exactly one block open through any click sequence", () => {
    const w = new Workflow();
    for (const key of ["dataset", "goal", "validation", "model", "goal"] as const) {
      w.openBlock(key);
      expect(openKeys(w)).toEqual([key]);
    }
  });

  it("completing a step stores its summary and opens the next", () => {
    const w = new Workflow();
    w.complete("goal", "rejection_within_1y");
    expect(w.block("goal").summary).toBe("rejection_within_1y");
    expect(w.block("goal").open).toBe(false);
    expect(openKeys(w)).toEqual(["features"]);
  });

  it("completing the last step leaves it open", () => {
    const w = new Workflow();
    for (const key of STEP_KEYS) w.complete(key, `done ${key}`);
    expect(openKeys(w)).toEqual(["validation"]);
    expect(w.block("validation").summary).toBe("done validation");
  });

  it("reopening a completed block marks completed downstream blocks stale", () => {
    const w = new Workflow();
    w.complete("goal", "g");
    w.complete("features", "f");
    w.complete("dataset", "d");
    // fit-params never completed
    w.openBlock("goal");
    expect(w.block("features").stale).toBe(true);
    expect(w.block("dataset").stale).toBe(true);
    expect(w.block("fit-params").stale).toBe(false);
    expect(w.block("goal").stale).toBe(false);
  });

  it("reopening preserves downstream summaries", () => {
    const w = new Workflow();
    w.complete("goal", "g");
    w.complete("features", "f");
    w.openBlock("goal");
    expect(w.block("features").summary).toBe("f");
  });

  it("opening a never-completed block leaves everything fresh", () => {
    const w = new Workflow();
    w.complete("goal", "g");
    w.openBlock("dataset");
    expect(w.blocks.every((b) => !b.stale)).toBe(true);
  });

  it("re-completing a stale block clears only its own flag", () => {
    const w = new Workflow();
    w.complete("goal", "g");
    w.complete("features", "f");
    w.complete("dataset", "d");
    w.openBlock("goal");
    w.complete("goal", "g2");
    // goal moved focus to features; features is still stale until redone
    expect(w.block("goal").stale).toBe(false);
    expect(w.block("goal").summary).toBe("g2");
    expect(w.block("features").stale).toBe(true);
    w.complete("features", "f2");
    expect(w.block("features").stale).toBe(false);
    expect(w.block("dataset").stale).toBe(true);
  });

  it("record stores a summary without moving focus", () => {
    const w = new Workflow();
    w.openBlock("model");
    w.record("model", "m1");
    expect(openKeys(w)).toEqual(["model"]);
    expect(w.block("model").summary).toBe("m1");
  });
});
