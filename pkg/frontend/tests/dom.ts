/** Query helpers shared by the page tests. */

import type { StepKey } from "../src/state.js";

export function flush(ms = 5): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export async function waitFor(
  check: () => boolean,
  what: string,
  timeoutMs = 60_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!check()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await flush(50);
  }
}

export function section(root: HTMLElement, key: StepKey): HTMLElement {
  const found = root.querySelector<HTMLElement>(`[data-step="${key}"]`);
  if (!found) throw new Error(`no section ${key}`);
  return found;
}

export function body(root: HTMLElement, key: StepKey): HTMLElement {
  const found = section(root, key).querySelector<HTMLElement>(".block-body");
  if (!found) throw new Error(`no body for ${key}`);
  return found;
}

export function header(root: HTMLElement, key: StepKey): HTMLElement {
  const found = section(root, key).querySelector<HTMLElement>(".block-header");
  if (!found) throw new Error(`no header for ${key}`);
  return found;
}

export function buttonByText(container: HTMLElement, text: string): HTMLButtonElement {
  const buttons = [...container.querySelectorAll("button")];
  const found = buttons.find((b) => b.textContent === text);
  if (!found) throw new Error(`no button "${text}"`);
  return found;
}

export function input(container: HTMLElement, name: string): HTMLInputElement {
  const found = container.querySelector<HTMLInputElement>(`[name="${name}"]`);
  if (!found) throw new Error(`no input ${name}`);
  return found;
}

export function select(container: HTMLElement, name: string): HTMLSelectElement {
  const found = container.querySelector<HTMLSelectElement>(`select[name="${name}"]`);
  if (!found) throw new Error(`no select ${name}`);
  return found;
}

export function openSteps(root: HTMLElement): string[] {
  return [...root.querySelectorAll<HTMLElement>(".block.open")].map(
    (b) => b.dataset["step"] ?? "?",
  );
}
