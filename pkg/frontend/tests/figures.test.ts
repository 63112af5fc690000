import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { numberColumn, parseCsv } from "../src/csv.js";
import { buildFigure, FIGURE_AXES, GAMMA_T_LABEL } from "../src/figures.js";

function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

describe("figure 1 model", () => {
  it("is a two-series line figure whose arrays equal the CSV columns exactly", () => {
    const doc = parseCsv(fixture("fig1.csv"));
    const model = buildFigure(doc, 1);
    expect(model.kind).toBe("line");
    if (model.kind !== "line") return;
    expect(model.x).toEqual(numberColumn(doc, "gamma_t"));
    expect(model.series.map((s) => s.label)).toEqual(["C_phi", "C_psi"]);
    expect(model.series[0].y).toEqual(numberColumn(doc, "c_phi"));
    expect(model.series[1].y).toEqual(numberColumn(doc, "c_psi"));
    expect(model.xLabel).toBe(GAMMA_T_LABEL);
    expect(model.yLabel).toBe("concurrence");
  });

  it("shows a dark period then a revival in the psi curve", () => {
    const model = buildFigure(parseCsv(fixture("fig1.csv")), 1);
    if (model.kind !== "line") throw new Error("expected line figure");
    const psi = model.series[1].y;
    const firstZero = psi.findIndex((v) => v === 0);
    expect(firstZero).toBeGreaterThan(0);
    const after = psi.slice(firstZero);
    expect(Math.max(...after)).toBeGreaterThan(0); // revival
  });
});

describe("surface figure models", () => {
  for (const id of [2, 3, 4, 5, 6] as const) {
    it(`figure ${id} has two panels with the caption axes`, () => {
      const model = buildFigure(parseCsv(fixture(`fig${id}.csv`)), id);
      expect(model.kind).toBe("surface");
      if (model.kind !== "surface") return;
      expect(model.panels.length).toBe(2);
      expect(model.panels[0].title).toBe("C_phi");
      expect(model.panels[1].title).toBe("C_psi");
      expect(model.xLabel).toBe(GAMMA_T_LABEL);
      expect(model.yLabel).toBe(FIGURE_AXES[id].label);
      const [phi, psi] = model.panels;
      expect(phi.y.length).toBe(21);
      expect(phi.x.length).toBe(100);
      expect(phi.values.length).toBe(21);
      expect(phi.values[0].length).toBe(100);
      expect(psi.x).toEqual(phi.x);
      for (const row of [...phi.values, ...psi.values]) {
        for (const v of row) {
          expect(v).toBeGreaterThanOrEqual(0);
          expect(v).toBeLessThanOrEqual(1);
        }
      }
    });
  }

  it("figure 2's r = 1 edge oscillates and its low-r region is flat zero", () => {
    const model = buildFigure(parseCsv(fixture("fig2.csv")), 2);
    if (model.kind !== "surface") throw new Error("expected surface");
    const phi = model.panels[0];
    const top = phi.values[phi.y.length - 1]; // r = 1
    expect(phi.y[phi.y.length - 1]).toBe(1);
    const dips = top.filter((v) => v < 0.05).length;
    const highs = top.filter((v) => v > 0.5).length;
    expect(dips).toBeGreaterThan(0);
    expect(highs).toBeGreaterThan(0);
    const bottom = phi.values[0]; // r = 0: never entangled
    expect(Math.max(...bottom)).toBe(0);
  });

  it("figure 6 carries the T = 0 reference row first", () => {
    const model = buildFigure(parseCsv(fixture("fig6.csv")), 6);
    if (model.kind !== "surface") throw new Error("expected surface");
    expect(model.panels[0].y[0]).toBe(0);
    expect(model.panels[0].y[1]).toBeCloseTo(1e-3, 12);
  });
});

describe("schema errors", () => {
  it("rejects a header-only CSV", () => {
    const text = "# subcommand = figure\ngamma_t,c_phi,c_psi\n";
    expect(() => buildFigure(parseCsv(text), 1)).toThrow(/no data rows/);
  });

  it("rejects a sweep CSV for figure 1", () => {
    expect(() => buildFigure(parseCsv(fixture("fig2.csv")), 1)).toThrow(/unexpected column/);
  });

  it("rejects the wrong swept parameter", () => {
    expect(() => buildFigure(parseCsv(fixture("fig2.csv")), 5)).toThrow(/param_name "alpha_sq"/);
  });

  it("rejects trajectory CSVs for surface figures", () => {
    expect(() => buildFigure(parseCsv(fixture("fig1.csv")), 2)).toThrow(/missing column/);
  });

  it("rejects out-of-range figure ids", () => {
    expect(() => buildFigure(parseCsv(fixture("fig1.csv")), 7)).toThrow(/1\.\.6/);
  });

  it("rejects ragged sweeps", () => {
    const text =
      "param_name,param_value,gamma_t,c_phi,c_psi\n" +
      "r,0.5,0,1,1\nr,0.5,1,0.5,0.5\nr,1,0,1,1\n";
    expect(() => buildFigure(parseCsv(text), 2)).toThrow(/ragged sweep/);
  });
});
