export {
  CsvSchemaError,
  SWEEP_COLUMNS,
  TRAJECTORY_COLUMNS,
  numberColumn,
  parseCsv,
  requireColumns,
} from "./csv.js";
export type { CsvDoc } from "./csv.js";
export { FIGURE_AXES, GAMMA_T_LABEL, buildFigure } from "./figures.js";
export type { FigureId, FigureModel, LineFigure, SurfaceFigure, SurfacePanel } from "./figures.js";
export { MAX_CELLS, downsampleGrid, renderFigure, renderFigureToPng } from "./render.js";
export type { Grid } from "./render.js";
export { Raster, colormap } from "./raster.js";
export { crc32, encodePng, PNG_SIGNATURE } from "./png.js";
export { run } from "./cli.js";
