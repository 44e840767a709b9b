/** Log-log slope fit identical to the harness's fit: ordinary least
 * squares on (ln N, ln value), switching to weights 1/sigma^2 with
 * sigma = max(stderr/value, 1e-12) as soon as any row carries a stderr.
 */

import type { SweepRow } from "./csv.js";

export interface FitResult {
  slope: number;
  intercept: number;
  slopeStderr: number;
}

export function fitLogLog(rows: SweepRow[]): FitResult {
  if (rows.length < 3) {
    throw new Error(`need >= 3 rows for a slope fit, got ${rows.length}`);
  }
  const x = rows.map((row) => Math.log(row.N));
  const y = rows.map((row) => Math.log(row.value));
  const haveSigma = rows.some((row) => row.stderr > 0);
  const w = rows.map((row) =>
    haveSigma ? 1 / Math.max(row.stderr / row.value, 1e-12) ** 2 : 1,
  );

  // normal equations for [slope, intercept], inverted in closed form
  let sww = 0, swx = 0, swxx = 0, swy = 0, swxy = 0;
  for (let i = 0; i < rows.length; i++) {
    sww += w[i];
    swx += w[i] * x[i];
    swxx += w[i] * x[i] * x[i];
    swy += w[i] * y[i];
    swxy += w[i] * x[i] * y[i];
  }
  const det = swxx * sww - swx * swx;
  const slope = (sww * swxy - swx * swy) / det;
  const intercept = (swxx * swy - swx * swxy) / det;

  let covSlope = sww / det;
  if (!haveSigma) {
    let chi2 = 0;
    for (let i = 0; i < rows.length; i++) {
      const resid = y[i] - slope * x[i] - intercept;
      chi2 += w[i] * resid * resid;
    }
    covSlope *= chi2 / (rows.length - 2);
  }
  return { slope, intercept, slopeStderr: Math.sqrt(Math.max(covSlope, 0)) };
}
