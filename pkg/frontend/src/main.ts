/**
 * CLI: render the figures from a simulation output directory.
 *
 *   node dist/main.js --in out --out figures [--compare other_run]... [--log-y]
 *
 * --in must hold histograms.csv, summaries.csv, report.json and
 * phase.csv; each --compare directory needs the same files except
 * phase.csv.  Exits nonzero naming the missing file otherwise.
 */

import { renderAll } from "./render.js";

function parseArgs(argv: string[]) {
  let inDir: string | undefined;
  let outDir: string | undefined;
  const compareDirs: string[] = [];
  let logY = false;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      const v = argv[++i];
      if (v === undefined) throw new Error(`flag ${arg} needs a value`);
      return v;
    };
    switch (arg) {
      case "--in":
        inDir = next();
        break;
      case "--out":
        outDir = next();
        break;
      case "--compare":
        compareDirs.push(next());
        break;
      case "--log-y":
        logY = true;
        break;
      default:
        throw new Error(`unknown flag ${arg}`);
    }
  }
  if (!inDir || !outDir) throw new Error("both --in and --out are required");
  return { inDir, outDir, compareDirs, logY };
}

try {
  const options = parseArgs(process.argv.slice(2));
  const written = renderAll(options);
  for (const path of written) console.log(path);
} catch (err) {
  console.error(`error: ${err instanceof Error ? err.message : err}`);
  process.exit(1);
}
