/**
 * Reader for the simulator's CSV contract.
 *
 * Files start with a `# key = value` comment block echoing the run
 * configuration, then a header row and numeric data rows. Two schemas exist:
 *
 *   trajectory (figure 1):  gamma_t,c_phi,c_psi
 *   sweep (figures 2-6):    param_name,param_value,gamma_t,c_phi,c_psi
 */
import Papa from "papaparse";

export const TRAJECTORY_COLUMNS = ["gamma_t", "c_phi", "c_psi"] as const;
export const SWEEP_COLUMNS = [
  "param_name",
  "param_value",
  "gamma_t",
  "c_phi",
  "c_psi",
] as const;

export class CsvSchemaError extends Error {}

export interface CsvDoc {
  config: Record<string, string>;
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string): CsvDoc {
  const config: Record<string, string> = {};
  for (const line of text.split("\n")) {
    if (!line.startsWith("#")) continue;
    const body = line.slice(1);
    const eq = body.indexOf("=");
    if (eq >= 0) {
      config[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
    }
  }
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    comments: "#",
    skipEmptyLines: true,
  });
  // single-column files legitimately have no delimiter; papaparse then
  // defaults to comma and reports a benign error
  const fatal = parsed.errors.filter((e) => e.code !== "UndetectableDelimiter");
  if (fatal.length > 0) {
    throw new CsvSchemaError(`malformed CSV: ${fatal[0].message} (row ${fatal[0].row})`);
  }
  const columns = (parsed.meta.fields ?? []).slice();
  if (columns.length === 0) {
    throw new CsvSchemaError("malformed CSV: no header row");
  }
  return { config, columns, rows: parsed.data };
}

/** Raise CsvSchemaError naming the first missing column. */
export function requireColumns(doc: CsvDoc, needed: readonly string[]): void {
  for (const column of needed) {
    if (!doc.columns.includes(column)) {
      throw new CsvSchemaError(`missing column "${column}" (found: ${doc.columns.join(", ")})`);
    }
  }
}

/** Like requireColumns, but also rejects columns the schema does not define. */
export function requireExactColumns(doc: CsvDoc, needed: readonly string[]): void {
  requireColumns(doc, needed);
  for (const column of doc.columns) {
    if (!needed.includes(column)) {
      throw new CsvSchemaError(
        `unexpected column "${column}" (schema is: ${needed.join(", ")})`,
      );
    }
  }
}

/** Column as numbers; NaN cells are schema errors. */
export function numberColumn(doc: CsvDoc, name: string): number[] {
  requireColumns(doc, [name]);
  return doc.rows.map((row, i) => {
    const value = Number(row[name]);
    if (!Number.isFinite(value)) {
      throw new CsvSchemaError(`column "${name}" row ${i}: not a finite number (${row[name]})`);
    }
    return value;
  });
}
