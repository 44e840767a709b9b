import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { parseSweepCsv } from "../src/csv.js";
import { fitLogLog } from "../src/fit.js";

const FIXTURES = join(__dirname, "fixtures");

function load(name: string) {
  const path = join(FIXTURES, name);
  return parseSweepCsv(readFileSync(path, "utf8"), path);
}

describe("fitLogLog", () => {
  it("recovers an exact square law to 1e-6", () => {
    const { rows } = load("power2.csv");
    const fit = fitLogLog(rows);
    expect(Math.abs(fit.slope - 2)).toBeLessThan(1e-6);
    expect(fit.slope.toFixed(6)).toBe("2.000000");
  });

  it("matches the harness summary slope on a real sweep", () => {
    const file = load("sweep_d2_p6_u05.csv");
    expect(file.summarySlope).not.toBeNull();
    const fit = fitLogLog(file.rows);
    expect(Math.abs(fit.slope - file.summarySlope!)).toBeLessThan(1e-6);
  });

  it("is invariant under rescaling the values", () => {
    const { rows } = load("sweep_d2_p6_u05.csv");
    const scaled = rows.map((r) => ({ ...r, value: 13.7 * r.value }));
    expect(fitLogLog(scaled).slope).toBeCloseTo(fitLogLog(rows).slope, 10);
  });

  it("rejects fewer than three rows", () => {
    const { rows } = load("power2.csv");
    expect(() => fitLogLog(rows.slice(0, 2))).toThrow(/3 rows/);
  });

  it("switches to weighted fitting when stderr is present", () => {
    const { rows } = load("power2.csv");
    const noisy = rows.map((r, i) => ({
      ...r,
      stderr: i === 0 ? 1e6 : 1e-6 * r.value,
    }));
    // huge stderr on a corrupted first point: weighting must ignore it
    noisy[0] = { ...noisy[0], value: noisy[0].value * 100 };
    const fit = fitLogLog(noisy);
    expect(Math.abs(fit.slope - 2)).toBeLessThan(1e-3);
  });
});
