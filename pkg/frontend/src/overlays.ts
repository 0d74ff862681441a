/** Analytic reference curves drawn on top of the empirical figures. */

/**
 * Mass function of the presynaptic-count reference law: the chance of k
 * spikes is (1/3) * (2/3)^k, so k = 0 carries exactly 1/3.
 */
export function geometricPmf(k: number): number {
  if (!Number.isInteger(k) || k < 0) {
    throw new Error(`geometricPmf wants a count >= 0, got ${k}`);
  }
  return (1 / 3) * Math.pow(2 / 3, k);
}

/** Extinction probability of the linear birth-death comparison chain. */
export function extinctionCurve(delta: number): number {
  if (!(delta > 0)) {
    throw new Error(`extinctionCurve wants delta > 0, got ${delta}`);
  }
  return Math.min(1, delta);
}
