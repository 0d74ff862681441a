import { describe, expect, it } from "vitest";

import { extinctionCurve, geometricPmf } from "../src/overlays.js";

describe("geometricPmf", () => {
  it("puts exactly one third at zero", () => {
    expect(geometricPmf(0)).toBeCloseTo(1 / 3, 12);
  });

  it("decays by two thirds per count", () => {
    expect(geometricPmf(1)).toBeCloseTo(2 / 9, 12);
    expect(geometricPmf(2)).toBeCloseTo(4 / 27, 12);
    expect(geometricPmf(3)).toBeCloseTo(8 / 81, 12);
  });

  it("sums to one", () => {
    let total = 0;
    for (let k = 0; k < 200; k++) total += geometricPmf(k);
    expect(total).toBeCloseTo(1, 12);
  });

  it("rejects non-counts", () => {
    expect(() => geometricPmf(-1)).toThrow();
    expect(() => geometricPmf(1.5)).toThrow();
  });
});

describe("extinctionCurve", () => {
  it("is delta below one and one above", () => {
    expect(extinctionCurve(0.25)).toBe(0.25);
    expect(extinctionCurve(1)).toBe(1);
    expect(extinctionCurve(2)).toBe(1);
  });

  it("rejects non-positive delta", () => {
    expect(() => extinctionCurve(0)).toThrow();
  });
});
