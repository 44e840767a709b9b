/** Reader for the sweep CSV schema produced by the vmvt harness.
 *
 * Layout: `# key=value` config comment lines, then the data header
 * `N,value,stderr,method,runtime_ms`, the data rows, and optionally a
 * trailing `# summary { ... }` block with the harness's fitted slope.
 * A three-column variant without stderr/runtime is tolerated (stderr 0).
 */

export interface SweepRow {
  N: number;
  value: number;
  stderr: number;
  method: string;
  runtimeMs: number;
}

export interface SweepFile {
  path: string;
  config: Map<string, string>;
  rows: SweepRow[];
  /** fitted_slope from the embedded summary block, when present. */
  summarySlope: number | null;
}

export class CsvError extends Error {
  constructor(path: string, line: number, detail: string) {
    super(`${path}:${line}: ${detail}`);
    this.name = "CsvError";
  }
}

const FULL_HEADER = ["N", "value", "stderr", "method", "runtime_ms"];

function r(raw: string): string {
  return JSON.stringify(raw);
}

function parseNumber(
  raw: string,
  path: string,
  line: number,
  field: string,
): number {
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    throw new CsvError(path, line, `field ${field}: not a number: ${r(raw)}`);
  }
  return v;
}

export function parseSweepCsv(text: string, path: string): SweepFile {
  const config = new Map<string, string>();
  const rows: SweepRow[] = [];
  let summarySlope: number | null = null;
  let header: string[] | null = null;

  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const lineNo = i + 1;
    const line = lines[i];
    if (line.trim() === "") continue;
    if (line.startsWith("#")) {
      const body = line.replace(/^#\s?/, "");
      const eq = body.indexOf("=");
      if (eq > 0 && !body.includes(":")) {
        config.set(body.slice(0, eq).trim(), body.slice(eq + 1).trim());
      }
      const m = body.match(/^\s*fitted_slope:\s*(\S+)/);
      if (m) summarySlope = Number(m[1]);
      continue;
    }
    const fields = line.split(",");
    if (header === null) {
      const names = fields.map((f) => f.trim());
      const isFull = FULL_HEADER.every((h, k) => names[k] === h)
        && names.length === FULL_HEADER.length;
      const isShort = names.length === 2 && names[0] === "N"
        && names[1] === "value";
      if (!isFull && !isShort) {
        throw new CsvError(path, lineNo,
          `bad header ${r(line)}; expected ${FULL_HEADER.join(",")}`);
      }
      header = names;
      continue;
    }
    if (fields.length !== header.length) {
      throw new CsvError(path, lineNo,
        `expected ${header.length} fields, got ${fields.length}`);
    }
    const N = parseNumber(fields[0], path, lineNo, "N");
    const value = parseNumber(fields[1], path, lineNo, "value");
    if (!(N > 0) || !(value > 0)) {
      throw new CsvError(path, lineNo, "N and value must be positive");
    }
    rows.push({
      N,
      value,
      stderr: header.length > 2
        ? parseNumber(fields[2], path, lineNo, "stderr") : 0,
      method: header.length > 2 ? fields[3].trim() : "",
      runtimeMs: header.length > 2
        ? parseNumber(fields[4], path, lineNo, "runtime_ms") : 0,
    });
  }
  if (header === null) {
    throw new CsvError(path, lines.length, "no data header found");
  }
  if (rows.length < 3) {
    throw new CsvError(path, lines.length,
      `need at least 3 data rows, got ${rows.length}`);
  }
  return { path, config, rows, summarySlope };
}
