/** Batch rendering: read one run directory (plus optional comparison
 * runs and a phase scan) and write the four SVG figures. */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";

import { loadPhase, loadRun } from "./data.js";
import {
  figureDecayComparison,
  figurePhase,
  figurePresynCounts,
  figureStateAndRate,
} from "./figures.js";

export interface RenderOptions {
  inDir: string;
  outDir: string;
  compareDirs?: string[];
  logY?: boolean;
}

export function renderAll(options: RenderOptions): string[] {
  const run = loadRun(options.inDir);
  const compares = (options.compareDirs ?? []).map(loadRun);
  const phase = loadPhase(join(options.inDir, "phase.csv"));

  mkdirSync(options.outDir, { recursive: true });
  const outputs: Array<[string, string]> = [
    ["fig_state_and_rate.svg", figureStateAndRate(run)],
    ["fig_presyn_counts.svg", figurePresynCounts(run, options.logY ?? false)],
    ["fig_decay_comparison.svg", figureDecayComparison(run, compares)],
    ["fig_phase.svg", figurePhase(phase)],
  ];
  const written: string[] = [];
  for (const [name, svg] of outputs) {
    const path = join(options.outDir, name);
    writeFileSync(path, svg, "utf8");
    written.push(path);
  }
  return written;
}
