/**
 * Pixel rendering of figure models.
 *
 * Figure 1 draws both concurrence curves on one axes rect; figures 2-6 draw
 * two side-by-side panels (phi left, psi right) of concurrence over
 * (gamma*t, parameter) plus a shared color scale. Surfaces are downsampled
 * to at most MAX_CELLS cells per axis for readability; the model keeps the
 * full-resolution data.
 */
import { FigureModel, LineFigure, SurfaceFigure, SurfacePanel } from "./figures.js";
import { encodePng } from "./png.js";
import { BLACK, GRAY, PHI_COLOR, PSI_COLOR, RGB, Raster, colormap } from "./raster.js";
import { textWidth } from "./font.js";

export const MAX_CELLS = 200;

export interface Grid {
  x: number[];
  y: number[];
  values: number[][];
}

/** Stride-pick rows/columns so the grid is at most maxCells on each axis. */
export function downsampleGrid(grid: Grid, maxCells: number = MAX_CELLS): Grid {
  const pick = (n: number): number[] => {
    const stride = Math.ceil(n / maxCells);
    const idx: number[] = [];
    for (let i = 0; i < n; i += stride) idx.push(i);
    return idx;
  };
  const xi = pick(grid.x.length);
  const yi = pick(grid.y.length);
  return {
    x: xi.map((i) => grid.x[i]),
    y: yi.map((i) => grid.y[i]),
    values: yi.map((j) => xi.map((i) => grid.values[j][i])),
  };
}

function ticks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push(lo + ((hi - lo) * i) / (count - 1));
  return out;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1).replace("e", "E");
  return Number(v.toPrecision(3)).toString();
}

interface Frame {
  x0: number;
  y0: number;
  w: number;
  h: number;
  xlo: number;
  xhi: number;
  ylo: number;
  yhi: number;
}

function px(f: Frame, x: number): number {
  return f.x0 + ((x - f.xlo) / (f.xhi - f.xlo || 1)) * f.w;
}

function py(f: Frame, y: number): number {
  return f.y0 + f.h - ((y - f.ylo) / (f.yhi - f.ylo || 1)) * f.h;
}

function drawAxes(r: Raster, f: Frame, xLabel: string, yLabel: string): void {
  r.line(f.x0, f.y0, f.x0, f.y0 + f.h, BLACK);
  r.line(f.x0, f.y0 + f.h, f.x0 + f.w, f.y0 + f.h, BLACK);
  r.line(f.x0 + f.w, f.y0, f.x0 + f.w, f.y0 + f.h, GRAY);
  r.line(f.x0, f.y0, f.x0 + f.w, f.y0, GRAY);
  for (const t of ticks(f.xlo, f.xhi)) {
    const x = px(f, t);
    r.line(x, f.y0 + f.h, x, f.y0 + f.h + 4, BLACK);
    const label = fmtTick(t);
    r.text(x - textWidth(label) / 2, f.y0 + f.h + 8, label);
  }
  for (const t of ticks(f.ylo, f.yhi)) {
    const y = py(f, t);
    r.line(f.x0 - 4, y, f.x0, y, BLACK);
    const label = fmtTick(t);
    r.text(f.x0 - 8 - textWidth(label), y - 3, label);
  }
  r.text(f.x0 + f.w / 2 - textWidth(xLabel) / 2, f.y0 + f.h + 24, xLabel);
  r.text(f.x0, f.y0 - 14, yLabel);
}

function renderLine(model: LineFigure): Raster {
  const r = new Raster(960, 600);
  const f: Frame = {
    x0: 80,
    y0: 40,
    w: 840,
    h: 480,
    xlo: Math.min(...model.x),
    xhi: Math.max(...model.x),
    ylo: 0,
    yhi: 1,
  };
  drawAxes(r, f, model.xLabel, model.yLabel);
  const colors: RGB[] = [PHI_COLOR, PSI_COLOR];
  model.series.forEach((series, k) => {
    const color = colors[k % colors.length];
    for (let i = 1; i < model.x.length; i++) {
      r.line(
        px(f, model.x[i - 1]),
        py(f, series.y[i - 1]),
        px(f, model.x[i]),
        py(f, series.y[i]),
        color,
        2,
      );
    }
    const lx = f.x0 + f.w - 130;
    const ly = f.y0 + 12 + 16 * k;
    r.line(lx, ly + 3, lx + 24, ly + 3, color, 2);
    r.text(lx + 30, ly, series.label);
  });
  return r;
}

function renderPanel(r: Raster, f: Frame, panel: SurfacePanel, xLabel: string, yLabel: string): void {
  const grid = downsampleGrid({ x: panel.x, y: panel.y, values: panel.values });
  const nx = grid.x.length;
  const ny = grid.y.length;
  const cw = f.w / nx;
  const ch = f.h / ny;
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      r.fillRect(f.x0 + i * cw, f.y0 + f.h - (j + 1) * ch, cw + 1, ch + 1, colormap(grid.values[j][i]));
    }
  }
  drawAxes(r, f, xLabel, yLabel);
  r.text(f.x0 + f.w / 2 - textWidth(panel.title) / 2, f.y0 - 26, panel.title);
}

function renderSurface(model: SurfaceFigure): Raster {
  const r = new Raster(1100, 620);
  const [left, right] = model.panels;
  const frames: Frame[] = [
    { x0: 95, y0: 70, w: 400, h: 440, xlo: 0, xhi: 0, ylo: 0, yhi: 0 },
    { x0: 590, y0: 70, w: 400, h: 440, xlo: 0, xhi: 0, ylo: 0, yhi: 0 },
  ];
  [left, right].forEach((panel, k) => {
    const f = frames[k];
    f.xlo = Math.min(...panel.x);
    f.xhi = Math.max(...panel.x);
    f.ylo = Math.min(...panel.y);
    f.yhi = Math.max(...panel.y);
    renderPanel(r, f, panel, model.xLabel, model.yLabel);
  });
  // shared color scale, concurrence 0..1
  const bx = 1040;
  const by = 70;
  const bh = 440;
  for (let i = 0; i < bh; i++) {
    const v = 1 - i / (bh - 1);
    r.fillRect(bx, by + i, 18, 1, colormap(v));
  }
  r.line(bx, by, bx, by + bh, BLACK);
  r.line(bx + 18, by, bx + 18, by + bh, BLACK);
  for (const v of [0, 0.5, 1]) {
    const y = by + bh - v * bh;
    r.text(bx + 24, y - 3, fmtTick(v));
  }
  r.text(bx - 6, by - 26, "C");
  return r;
}

export function renderFigure(model: FigureModel): Raster {
  return model.kind === "line" ? renderLine(model) : renderSurface(model);
}

export function renderFigureToPng(model: FigureModel): Buffer {
  const raster = renderFigure(model);
  return encodePng(raster.width, raster.height, raster.data);
}
