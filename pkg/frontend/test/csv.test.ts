import { describe, expect, it } from "vitest";

import { column, numericColumn, parseCsv } from "../src/csv.js";

describe("parseCsv", () => {
  it("splits header and rows", () => {
    const table = parseCsv("a,b\n1,2\n3,4\n");
    expect(table.header).toEqual(["a", "b"]);
    expect(table.rows).toEqual([["1", "2"], ["3", "4"]]);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1\n")).toThrow(/row 2/);
  });

  it("rejects empty documents", () => {
    expect(() => parseCsv("")).toThrow(/empty/);
  });
});

describe("columns", () => {
  const table = parseCsv("x,y\n1.5,inf\n2.5,nan\n");

  it("fails loudly on a missing column", () => {
    expect(() => column(table, "z")).toThrow(/column 'z' not found/);
  });

  it("parses numbers including inf and nan markers", () => {
    expect(numericColumn(table, "x")).toEqual([1.5, 2.5]);
    const y = numericColumn(table, "y");
    expect(y[0]).toBe(Infinity);
    expect(Number.isNaN(y[1])).toBe(true);
  });

  it("rejects garbage cells", () => {
    const bad = parseCsv("x\nhello\n");
    expect(() => numericColumn(bad, "x")).toThrow(/non-numeric/);
  });
});
