/** Workflow block state: six steps, progressive disclosure.
 *
 * Exactly one block is open at a time. A completed block closes to a
 * one-line summary; clicking it reopens it and marks every completed
 * downstream block stale (its artifact still exists but was derived
 * from values the user may now change).
 */

export const STEP_KEYS = [
  "goal",
  "features",
  "dataset",
  "fit-params",
  "model",
  "validation",
] as const;

export type StepKey = (typeof STEP_KEYS)[number];

export interface WorkflowBlock {
  key: StepKey;
  open: boolean;
  summary: string | null;
  stale: boolean;
}

export class Workflow {
  blocks: WorkflowBlock[];

  constructor() {
    this.blocks = STEP_KEYS.map((key, i) => ({
      key,
      open: i === 0,
      summary: null,
      stale: false,
    }));
  }

  block(key: StepKey): WorkflowBlock {
    const found = this.blocks.find((b) => b.key === key);
    if (!found) throw new Error(`unknown step ${key}`);
    return found;
  }

  openKey(): StepKey {
    const open = this.blocks.find((b) => b.open);
    if (!open) throw new Error("no block open");
    return open.key;
  }

  /** Open one block, closing the rest; reopening a completed block
   * flags completed downstream blocks as stale. */
  openBlock(key: StepKey): void {
    const target = this.block(key);
    const wasCompleted = target.summary !== null;
    for (const b of this.blocks) b.open = b.key === key;
    if (wasCompleted) {
      for (const b of this.downstreamOf(key)) {
        if (b.summary !== null) b.stale = true;
      }
    }
  }

  /** Store a step's result without moving focus. */
  record(key: StepKey, summary: string): void {
    const target = this.block(key);
    target.summary = summary;
    target.stale = false;
  }

  /** Record a step's result, close it, and open the next block. */
  complete(key: StepKey, summary: string): void {
    this.record(key, summary);
    const next = this.nextKey(key);
    if (next) this.openBlock(next);
  }

  nextKey(key: StepKey): StepKey | null {
    const index = this.blocks.findIndex((b) => b.key === key);
    const next = this.blocks[index + 1];
    return next ? next.key : null;
  }

  downstreamOf(key: StepKey): WorkflowBlock[] {
    const index = this.blocks.findIndex((b) => b.key === key);
    return this.blocks.slice(index + 1);
  }
}
