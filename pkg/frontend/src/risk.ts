/** Client-side risk formula, kept bit-compatible with the service.
 *
 * p = 1 / (1 + exp(bias - total)), evaluated two-branch so neither tail
 * overflows, then clamped to the open interval (0, 1): the smallest
 * positive double on one side, the predecessor of 1 on the other.
 */

const MIN_P = Number.MIN_VALUE;
const MAX_P = 1 - Number.EPSILON / 2;

export function riskProbability(bias: number, total: number): number {
  const margin = total - bias;
  let p: number;
  if (margin >= 0) {
    p = 1 / (1 + Math.exp(-margin));
  } else {
    const e = Math.exp(margin);
    p = e / (1 + e);
  }
  if (p < MIN_P) return MIN_P;
  if (p > MAX_P) return MAX_P;
  return p;
}
