/**
 * Minimal CSV reader for the simulator's outputs: header row, comma
 * separators, '.' decimals, no quoting (the writers never emit quotes).
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV document");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new Error(`CSV row ${i + 2} has ${cells.length} cells, expected ${header.length}`);
    }
    return cells;
  });
  return { header, rows };
}

/** Column accessor that fails loudly when a column is missing. */
export function column(table: Table, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`column '${name}' not found in header [${table.header.join(", ")}]`);
  }
  return table.rows.map((row) => row[idx]);
}

export function numericColumn(table: Table, name: string): number[] {
  return column(table, name).map((cell) => {
    const v = cell === "inf" ? Infinity : Number(cell);
    if (cell !== "" && Number.isNaN(v) && cell !== "nan") {
      throw new Error(`column '${name}' holds non-numeric cell '${cell}'`);
    }
    return v;
  });
}
