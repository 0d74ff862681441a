/** The four figures built from one simulation run plus a phase scan. */

import { Bin, PhasePoint, RunData, pmfOf } from "./data.js";
import { extinctionCurve, geometricPmf } from "./overlays.js";
import { DEFAULT_GEOMETRY, Panel, svgDocument } from "./svg.js";

const EMPIRICAL = "#4878a8";
const OVERLAY = "#c44e52";
const COMPARE = ["#55a868", "#8172b2", "#ccb974"];

export function seriesOrFail(run: RunData, name: string): Bin[] {
  const bins = run.histograms.get(name);
  if (!bins) {
    throw new Error(
      `series '${name}' not present in histograms.csv (found: ${[...run.histograms.keys()].join(", ")})`,
    );
  }
  return bins;
}

function finiteRight(bins: Bin[]): Bin[] {
  // The overflow bin has an infinite right edge; give it nominal width
  // so it stays visible.
  return bins.map((b) =>
    Number.isFinite(b.right) ? b : { ...b, right: b.left + (bins[0].right - bins[0].left) },
  );
}

function densityUpper(binsList: Bin[][]): number {
  let top = 0;
  for (const bins of binsList) {
    for (const b of bins) top = Math.max(top, b.density);
  }
  return top * 1.08 || 1;
}

function lambdaLabel(run: RunData): string {
  const decay = run.config["lambda"];
  return decay === undefined ? "unlabeled run" : `decay ${decay}`;
}

/** Potential distribution next to the firing-rate distribution. */
export function figureStateAndRate(run: RunData): string {
  const potential = finiteRight(seriesOrFail(run, "potential"));
  const rate = finiteRight(seriesOrFail(run, "firing_rate"));
  const geom = DEFAULT_GEOMETRY;

  const left = new Panel(geom);
  left.title("Stationary potential");
  const lx = left.xScale([0, potential[potential.length - 1].right]);
  const ly = left.yScale([0, densityUpper([potential])]);
  left.bars(potential.map((b) => ({ left: b.left, right: b.right, value: b.density })), lx, ly, EMPIRICAL);
  left.axes(lx, ly, "potential", "density");

  const right = new Panel(geom, geom.width);
  right.title("Firing rate");
  const rx = right.xScale([rate[0].left, rate[rate.length - 1].right]);
  const ry = right.yScale([0, densityUpper([rate])]);
  right.bars(rate.map((b) => ({ left: b.left, right: b.right, value: b.density })), rx, ry, EMPIRICAL);
  right.axes(rx, ry, "rate (Hz)", "density");

  return svgDocument([left, right], geom.width * 2, geom.height);
}

/** Presynaptic-count mass function with the geometric reference law. */
export function figurePresynCounts(run: RunData, logY = false): string {
  const pmf = pmfOf(run.presynCounts);
  const geom = DEFAULT_GEOMETRY;
  const panel = new Panel(geom);
  panel.title("Presynaptic spikes at time 0");

  const top = Math.max(pmf.length - 1, 8);
  const x = panel.xScale([-0.5, top + 0.5]);
  const floor = logY ? 0.5 / run.presynCounts.length : 0;
  const y = panel.yScale(logY ? [floor, 1] : [0, Math.max(...pmf) * 1.1], logY);

  panel.bars(
    pmf.map((p, k) => ({ left: k - 0.4, right: k + 0.4, value: p })),
    x, y, EMPIRICAL, floor,
  );
  const overlayPts: Array<[number, number]> = [];
  for (let k = 0; k <= top; k++) {
    const p = geometricPmf(k);
    if (!logY || p > floor) overlayPts.push([k, p]);
  }
  panel.polyline(overlayPts, x, y, OVERLAY, true);
  panel.markers(overlayPts, x, y, OVERLAY, true);
  panel.legend([
    { label: "empirical", color: EMPIRICAL },
    { label: "geometric, 1/3 at 0", color: OVERLAY },
  ]);
  panel.axes(x, y, "presynaptic spike count", logY ? "probability (log)" : "probability");
  return svgDocument([panel], geom.width, geom.height);
}

/** Potential distributions of several runs overlaid (kernel comparison). */
export function figureDecayComparison(main: RunData, compares: RunData[]): string {
  const geom = DEFAULT_GEOMETRY;
  const panel = new Panel(geom);
  panel.title("Potential distribution vs kernel decay");

  const runs = [main, ...compares];
  const seriesList = runs.map((r) => finiteRight(seriesOrFail(r, "potential")));
  const xHi = Math.max(...seriesList.map((bins) => bins[bins.length - 1].right));
  const x = panel.xScale([0, xHi]);
  const y = panel.yScale([0, densityUpper(seriesList)]);

  const legend: Array<{ label: string; color: string }> = [];
  seriesList.forEach((bins, i) => {
    const color = i === 0 ? EMPIRICAL : COMPARE[(i - 1) % COMPARE.length];
    const steps: Array<[number, number]> = [];
    for (const b of bins) {
      steps.push([b.left, b.density], [b.right, b.density]);
    }
    panel.polyline(steps, x, y, color);
    legend.push({ label: lambdaLabel(runs[i]), color });
  });
  panel.legend(legend);
  panel.axes(x, y, "potential", "density");
  return svgDocument([panel], geom.width, geom.height);
}

/** Extinction estimates against the min(1, delta) reference curve. */
export function figurePhase(points: PhasePoint[]): string {
  const geom = DEFAULT_GEOMETRY;
  const panel = new Panel(geom);
  panel.title("Branching-process extinction probability");

  const deltas = points.map((p) => p.delta);
  const xHi = Math.max(...deltas) * 1.05;
  const x = panel.xScale([0, xHi]);
  const y = panel.yScale([0, 1.05]);

  const curve: Array<[number, number]> = [];
  for (let d = xHi / 200; d <= xHi; d += xHi / 200) {
    curve.push([d, extinctionCurve(d)]);
  }
  panel.polyline(curve, x, y, OVERLAY, true);
  panel.errorBars(points.map((p) => [p.delta, p.estimate, 3 * p.stderr]), x, y, EMPIRICAL);
  panel.markers(points.map((p) => [p.delta, p.estimate]), x, y, EMPIRICAL);
  panel.legend([
    { label: "estimate (3 se)", color: EMPIRICAL },
    { label: "min(1, delta)", color: OVERLAY },
  ]);
  panel.axes(x, y, "delta", "extinction probability");
  return svgDocument([panel], geom.width, geom.height);
}
