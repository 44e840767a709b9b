/** Deterministic SVG renderer for log-log sweep charts.
 *
 * No timestamps, no random ids, fixed canvas and fixed-precision
 * coordinates, so identical inputs produce byte-identical files.
 */

import type { SweepFile } from "./csv.js";
import { fitLogLog, type FitResult } from "./fit.js";

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = { left: 70, right: 20, top: 40, bottom: 55 };
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b"];

export interface Series {
  file: SweepFile;
  fit: FitResult;
  label: string;
}

function fmt(v: number): string {
  return v.toFixed(2);
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

interface Scale {
  (v: number): number;
}

function makeScale(lo: number, hi: number, a: number, b: number): Scale {
  const span = hi > lo ? hi - lo : 1;
  return (v) => a + ((v - lo) / span) * (b - a);
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(lo / Math.LN10) - 1; ; e++) {
    const t = e * Math.LN10;
    if (t > hi + 1e-9) break;
    if (t >= lo - 1e-9) ticks.push(t);
  }
  if (ticks.length >= 2) return ticks;
  const n = 4;
  for (let i = 0; i <= n; i++) ticks.push(lo + ((hi - lo) * i) / n);
  return ticks;
}

function tickLabel(lnV: number): string {
  const v = Math.exp(lnV);
  if (v >= 1e5 || v < 1e-3) {
    const e = Math.round(lnV / Math.LN10);
    if (Math.abs(lnV - e * Math.LN10) < 1e-9) return `1e${e}`;
    return v.toExponential(1);
  }
  return v >= 100 ? v.toFixed(0) : v.toPrecision(3).replace(/\.?0+$/, "");
}

export function renderSvg(
  seriesList: Series[],
  refExponent: number | null,
): string {
  const xs = seriesList.flatMap((s) => s.file.rows.map((r) => Math.log(r.N)));
  const ys = seriesList.flatMap((s) =>
    s.file.rows.map((r) => Math.log(r.value)),
  );
  const pad = 0.05;
  const xr = Math.max(Math.max(...xs) - Math.min(...xs), 1e-9);
  const yr = Math.max(Math.max(...ys) - Math.min(...ys), 1e-9);
  const xLo = Math.min(...xs) - pad * xr;
  const xHi = Math.max(...xs) + pad * xr;
  const yLo = Math.min(...ys) - pad * yr;
  const yHi = Math.max(...ys) + pad * yr;
  const sx = makeScale(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const sy = makeScale(yLo, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);

  const out: string[] = [];
  out.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `font-family="monospace" font-size="12">`);
  out.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  // axes and grid
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  for (const t of logTicks(xLo, xHi)) {
    const px = fmt(sx(t));
    out.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y1}" ` +
      `stroke="#dddddd"/>`);
    out.push(`<text x="${px}" y="${y0 + 18}" text-anchor="middle">` +
      `${tickLabel(t)}</text>`);
  }
  for (const t of logTicks(yLo, yHi)) {
    const py = fmt(sy(t));
    out.push(`<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" ` +
      `stroke="#dddddd"/>`);
    out.push(`<text x="${x0 - 6}" y="${py}" text-anchor="end" ` +
      `dominant-baseline="middle">${tickLabel(t)}</text>`);
  }
  out.push(`<rect x="${x0}" y="${y1}" width="${x1 - x0}" ` +
    `height="${y0 - y1}" fill="none" stroke="black"/>`);
  out.push(`<text x="${(x0 + x1) / 2}" y="${HEIGHT - 14}" ` +
    `text-anchor="middle">N (log scale)</text>`);
  out.push(`<text x="18" y="${(y0 + y1) / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 18 ${(y0 + y1) / 2})">value (log scale)</text>`);

  // dashed reference line with the predicted exponent, anchored at the
  // first point of the first series
  if (refExponent !== null && seriesList.length > 0) {
    const anchor = seriesList[0].file.rows[0];
    const c = Math.log(anchor.value) - refExponent * Math.log(anchor.N);
    out.push(`<line x1="${fmt(sx(xLo))}" y1="${fmt(sy(refExponent * xLo + c))}" ` +
      `x2="${fmt(sx(xHi))}" y2="${fmt(sy(refExponent * xHi + c))}" ` +
      `stroke="#555555" stroke-dasharray="6 4"/>`);
  }

  seriesList.forEach((s, si) => {
    const color = COLORS[si % COLORS.length];
    // fit line across the full x range
    const f = s.fit;
    out.push(`<line x1="${fmt(sx(xLo))}" ` +
      `y1="${fmt(sy(f.slope * xLo + f.intercept))}" x2="${fmt(sx(xHi))}" ` +
      `y2="${fmt(sy(f.slope * xHi + f.intercept))}" stroke="${color}" ` +
      `stroke-width="1"/>`);
    for (const row of s.file.rows) {
      const px = sx(Math.log(row.N));
      const py = sy(Math.log(row.value));
      if (row.stderr > 0) {
        const hi = sy(Math.log(row.value + row.stderr));
        const lo = sy(Math.log(Math.max(row.value - row.stderr,
          row.value * 1e-6)));
        out.push(`<line x1="${fmt(px)}" y1="${fmt(lo)}" x2="${fmt(px)}" ` +
          `y2="${fmt(hi)}" stroke="${color}"/>`);
      }
      out.push(`<circle cx="${fmt(px)}" cy="${fmt(py)}" r="3" ` +
        `fill="${color}"/>`);
    }
  });

  // legend
  seriesList.forEach((s, si) => {
    const color = COLORS[si % COLORS.length];
    const ly = MARGIN.top + 8 + 16 * si;
    out.push(`<rect x="${x0 + 8}" y="${ly - 8}" width="10" height="10" ` +
      `fill="${color}"/>`);
    out.push(`<text x="${x0 + 24}" y="${ly}" dominant-baseline="middle">` +
      `${esc(s.label)} (slope ${s.fit.slope.toFixed(6)})</text>`);
  });
  if (refExponent !== null) {
    const ly = MARGIN.top + 8 + 16 * seriesList.length;
    out.push(`<line x1="${x0 + 8}" y1="${ly - 3}" x2="${x0 + 18}" ` +
      `y2="${ly - 3}" stroke="#555555" stroke-dasharray="6 4"/>`);
    out.push(`<text x="${x0 + 24}" y="${ly}" dominant-baseline="middle">` +
      `reference slope ${refExponent.toFixed(6)}</text>`);
  }

  out.push("</svg>");
  return out.join("\n") + "\n";
}
