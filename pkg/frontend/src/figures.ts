/**
 * Figure models: what gets plotted, decoupled from pixel rendering.
 *
 * Figure 1 is a two-curve line plot (C_phi, C_psi vs gamma*t). Figures 2-6
 * are two-panel surfaces (phi left, psi right) of concurrence over
 * (gamma*t, swept parameter), with the parameter axis dictated by the
 * figure's caption.
 */
import {
  CsvDoc,
  CsvSchemaError,
  SWEEP_COLUMNS,
  TRAJECTORY_COLUMNS,
  numberColumn,
  requireExactColumns,
} from "./csv.js";

export type FigureId = 1 | 2 | 3 | 4 | 5 | 6;

export interface LineFigure {
  kind: "line";
  figId: FigureId;
  xLabel: string;
  yLabel: string;
  x: number[];
  series: { label: string; y: number[] }[];
}

export interface SurfacePanel {
  title: string;
  /** gamma*t grid (columns) */
  x: number[];
  /** swept parameter values (rows) */
  y: number[];
  /** values[yi][xi], concurrence in [0, 1] */
  values: number[][];
}

export interface SurfaceFigure {
  kind: "surface";
  figId: FigureId;
  xLabel: string;
  yLabel: string;
  panels: [SurfacePanel, SurfacePanel];
}

export type FigureModel = LineFigure | SurfaceFigure;

/** Swept parameter and its axis label for each surface figure. */
export const FIGURE_AXES: Record<number, { param: string; label: string }> = {
  2: { param: "r", label: "r" },
  3: { param: "lambda_over_gamma", label: "lambda/Gamma" },
  4: { param: "r", label: "r" },
  5: { param: "alpha_sq", label: "alpha^2" },
  6: { param: "kt_over_hbar_omega0", label: "k_B T/(hbar omega0)" },
};

export const GAMMA_T_LABEL = "Gamma*t";

export function buildFigure(doc: CsvDoc, figId: number): FigureModel {
  if (!Number.isInteger(figId) || figId < 1 || figId > 6) {
    throw new CsvSchemaError(`figure id must be 1..6, got ${figId}`);
  }
  if (figId === 1) {
    return buildLineFigure(doc);
  }
  return buildSurfaceFigure(doc, figId as FigureId);
}

function requireRows(doc: CsvDoc): void {
  if (doc.rows.length === 0) {
    throw new CsvSchemaError("no data rows (header-only CSV)");
  }
}

function buildLineFigure(doc: CsvDoc): LineFigure {
  requireExactColumns(doc, TRAJECTORY_COLUMNS);
  requireRows(doc);
  return {
    kind: "line",
    figId: 1,
    xLabel: GAMMA_T_LABEL,
    yLabel: "concurrence",
    x: numberColumn(doc, "gamma_t"),
    series: [
      { label: "C_phi", y: numberColumn(doc, "c_phi") },
      { label: "C_psi", y: numberColumn(doc, "c_psi") },
    ],
  };
}

function buildSurfaceFigure(doc: CsvDoc, figId: FigureId): SurfaceFigure {
  requireExactColumns(doc, SWEEP_COLUMNS);
  requireRows(doc);
  const axis = FIGURE_AXES[figId];
  for (const [i, row] of doc.rows.entries()) {
    if (row.param_name !== axis.param) {
      throw new CsvSchemaError(
        `figure ${figId} expects param_name "${axis.param}", row ${i} has "${row.param_name}"`,
      );
    }
  }
  // group rows by parameter value, preserving first-appearance order
  const order: string[] = [];
  const groups = new Map<string, { t: number[]; phi: number[]; psi: number[] }>();
  for (const [i, row] of doc.rows.entries()) {
    const key = row.param_value;
    let group = groups.get(key);
    if (!group) {
      group = { t: [], phi: [], psi: [] };
      groups.set(key, group);
      order.push(key);
    }
    group.t.push(parseCell(row.gamma_t, "gamma_t", i));
    group.phi.push(parseCell(row.c_phi, "c_phi", i));
    group.psi.push(parseCell(row.c_psi, "c_psi", i));
  }
  const first = groups.get(order[0])!;
  for (const key of order) {
    const group = groups.get(key)!;
    if (group.t.length !== first.t.length) {
      throw new CsvSchemaError(
        `ragged sweep: param_value ${key} has ${group.t.length} rows, expected ${first.t.length}`,
      );
    }
    for (let i = 0; i < group.t.length; i++) {
      if (group.t[i] !== first.t[i]) {
        throw new CsvSchemaError(`sweep rows do not share one gamma_t grid (param_value ${key})`);
      }
    }
  }
  const y = order.map((key, i) => parseCell(key, "param_value", i));
  const make = (pick: "phi" | "psi", title: string): SurfacePanel => ({
    title,
    x: first.t.slice(),
    y,
    values: order.map((key) => groups.get(key)![pick].slice()),
  });
  return {
    kind: "surface",
    figId,
    xLabel: GAMMA_T_LABEL,
    yLabel: axis.label,
    panels: [make("phi", "C_phi"), make("psi", "C_psi")],
  };
}

function parseCell(raw: string, column: string, row: number): number {
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new CsvSchemaError(`column "${column}" row ${row}: not a finite number (${raw})`);
  }
  return value;
}
