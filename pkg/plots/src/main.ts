#!/usr/bin/env node
/** Render static log-log charts from vmvt sweep CSV files.
 *
 * Usage: vmvt-plots sweep.csv [more.csv ...] [--out chart.svg]
 *                   [--ref-exponent E]
 *
 * Re-fits the slope of every input independently, prints it, and draws
 * scatter + error bars + fit line (+ dashed reference line) into one SVG.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { CsvError, parseSweepCsv } from "./csv.js";
import { fitLogLog } from "./fit.js";
import { renderSvg, type Series } from "./svg.js";

interface Args {
  inputs: string[];
  out: string;
  refExponent: number | null;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { inputs: [], out: "chart.svg", refExponent: null };
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--out") {
      args.out = argv[++i];
      if (args.out === undefined) throw new Error("--out needs a path");
    } else if (a === "--ref-exponent") {
      const raw = argv[++i];
      const v = Number(raw);
      if (raw === undefined || Number.isNaN(v)) {
        throw new Error("--ref-exponent needs a number");
      }
      args.refExponent = v;
    } else if (a.startsWith("-")) {
      throw new Error(`unknown flag ${a}`);
    } else {
      args.inputs.push(a);
    }
  }
  if (args.inputs.length === 0) {
    throw new Error(
      "usage: vmvt-plots <sweep.csv> [more.csv ...] [--out chart.svg] " +
      "[--ref-exponent E]",
    );
  }
  return args;
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  try {
    const seriesList: Series[] = args.inputs.map((path) => {
      const file = parseSweepCsv(readFileSync(path, "utf8"), path);
      return { file, fit: fitLogLog(file.rows), label: basename(path) };
    });
    for (const s of seriesList) {
      console.log(`slope ${s.fit.slope.toFixed(6)} ` +
        `stderr ${s.fit.slopeStderr.toFixed(6)} ${s.file.path}`);
    }
    writeFileSync(args.out, renderSvg(seriesList, args.refExponent));
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(err.message);
      return 1;
    }
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("main.js") || entry.endsWith("vmvt-plots")) {
  process.exit(run(process.argv.slice(2)));
}
