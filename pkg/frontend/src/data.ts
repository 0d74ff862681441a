/** Loaders for the simulator's output files. */

import { readFileSync } from "fs";
import { join } from "path";

import { parseCsv, column, numericColumn, Table } from "./csv.js";

export interface Bin {
  left: number;
  right: number;
  count: number;
  density: number;
}

export interface PhasePoint {
  delta: number;
  estimate: number;
  stderr: number;
}

export interface RunData {
  /** histogram series name -> bins */
  histograms: Map<string, Bin[]>;
  /** presynaptic spike count per completed replicate */
  presynCounts: number[];
  /** model parameters echoed by the simulator */
  config: Record<string, number>;
}

function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new Error(`missing input file: ${path}`);
  }
  return parseCsv(text);
}

export function loadHistograms(path: string): Map<string, Bin[]> {
  const table = readTable(path);
  const series = column(table, "series");
  const left = numericColumn(table, "bin_left");
  const right = numericColumn(table, "bin_right");
  const count = numericColumn(table, "count");
  const density = numericColumn(table, "density");
  const out = new Map<string, Bin[]>();
  for (let i = 0; i < series.length; i++) {
    const bins = out.get(series[i]) ?? [];
    bins.push({ left: left[i], right: right[i], count: count[i], density: density[i] });
    out.set(series[i], bins);
  }
  return out;
}

export function loadPresynCounts(path: string): number[] {
  const table = readTable(path);
  return column(table, "presyn_count")
    .filter((cell) => cell !== "")
    .map((cell) => Number(cell));
}

export function loadPhase(path: string): PhasePoint[] {
  const table = readTable(path);
  const delta = numericColumn(table, "delta");
  const estimate = numericColumn(table, "extinction_estimate");
  const stderr = numericColumn(table, "stderr");
  return delta.map((d, i) => ({ delta: d, estimate: estimate[i], stderr: stderr[i] }));
}

export function loadRun(dir: string): RunData {
  const histograms = loadHistograms(join(dir, "histograms.csv"));
  const presynCounts = loadPresynCounts(join(dir, "summaries.csv"));
  let config: Record<string, number> = {};
  try {
    const report = JSON.parse(readFileSync(join(dir, "report.json"), "utf8"));
    config = report.config ?? {};
  } catch {
    throw new Error(`missing input file: ${join(dir, "report.json")}`);
  }
  return { histograms, presynCounts, config };
}

/** Empirical mass function over 0..max(counts). */
export function pmfOf(counts: number[]): number[] {
  if (counts.length === 0) {
    throw new Error("no completed replicates in summaries.csv");
  }
  const top = Math.max(...counts);
  const pmf = new Array<number>(top + 1).fill(0);
  for (const c of counts) {
    pmf[c] += 1;
  }
  return pmf.map((n) => n / counts.length);
}
