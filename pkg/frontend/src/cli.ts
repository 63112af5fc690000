#!/usr/bin/env node
/**
 * render_figs <csv> --id N --out <png>
 *
 * Reads a simulator CSV (trajectory schema for figure 1, long-format sweep
 * schema for figures 2-6) and writes the rendered PNG.
 */
import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { CsvSchemaError, parseCsv } from "./csv.js";
import { buildFigure } from "./figures.js";
import { renderFigureToPng } from "./render.js";

const USAGE = "usage: render_figs <csv> --id N --out <png>";

interface Args {
  csv: string;
  id: number;
  out: string;
}

function parseArgs(argv: string[]): Args {
  let csv: string | undefined;
  let id: number | undefined;
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--id") {
      id = Number(argv[++i]);
    } else if (arg === "--out") {
      out = argv[++i];
    } else if (arg === "--help" || arg === "-h") {
      throw new UsageError(USAGE);
    } else if (arg.startsWith("-")) {
      throw new UsageError(`unknown option ${arg}\n${USAGE}`);
    } else if (csv === undefined) {
      csv = arg;
    } else {
      throw new UsageError(`unexpected argument ${arg}\n${USAGE}`);
    }
  }
  if (csv === undefined || out === undefined || id === undefined || !Number.isInteger(id)) {
    throw new UsageError(USAGE);
  }
  return { csv, id, out };
}

class UsageError extends Error {}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  try {
    const text = readFileSync(args.csv, "utf8");
    const model = buildFigure(parseCsv(text), args.id);
    writeFileSync(args.out, renderFigureToPng(model));
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`render_figs: ${err.message}`);
    } else {
      console.error(`render_figs: ${(err as Error).message}`);
    }
    return 1;
  }
}

const entry = process.argv[1] ? pathToFileURL(process.argv[1]).href : "";
if (import.meta.url === entry) {
  process.exit(run(process.argv.slice(2)));
}
