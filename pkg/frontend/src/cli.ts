/**
 * Render trajectory CSV files to SVG figures.
 *
 * Usage:
 *   viproj-plots render --csv PATH --kind {phase|residual|lyapunov} --out PATH
 *                       [--annotate-radius R]
 *
 * Exit codes: 0 success, 1 bad usage / schema mismatch / unrenderable data.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { CsvSchemaError, parseTrajectory } from "./csv.js";
import { PlotDataError, PLOT_KINDS, PlotKind, renderPlot } from "./plots.js";

interface RenderArgs {
  csv: string;
  kind: PlotKind;
  out: string;
  annotateRadius?: number;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): RenderArgs {
  if (argv[0] !== "render") {
    throw new UsageError("expected the 'render' command");
  }
  const args: Partial<RenderArgs> = {};
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new UsageError(`flag ${flag} needs a value`);
    }
    switch (flag) {
      case "--csv":
        args.csv = value;
        break;
      case "--out":
        args.out = value;
        break;
      case "--kind":
        if (!(PLOT_KINDS as readonly string[]).includes(value)) {
          throw new UsageError(
            `unknown kind '${value}', expected one of ${PLOT_KINDS.join("|")}`,
          );
        }
        args.kind = value as PlotKind;
        break;
      case "--annotate-radius": {
        const radius = Number(value);
        if (!Number.isFinite(radius) || radius <= 0) {
          throw new UsageError(`--annotate-radius must be a positive number, got '${value}'`);
        }
        args.annotateRadius = radius;
        break;
      }
      default:
        throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!args.csv || !args.kind || !args.out) {
    throw new UsageError("--csv, --kind and --out are required");
  }
  if (!args.out.endsWith(".svg")) {
    throw new UsageError(`unsupported output format for '${args.out}': .svg only`);
  }
  return args as RenderArgs;
}

export function main(argv: string[]): number {
  let args: RenderArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  let text: string;
  try {
    text = readFileSync(args.csv, "utf-8");
  } catch (err) {
    console.error(`cannot read ${args.csv}: ${(err as Error).message}`);
    return 1;
  }
  try {
    const trajectory = parseTrajectory(text);
    const svg = renderPlot(trajectory, args.kind, args.annotateRadius);
    writeFileSync(args.out, svg);
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`schema error in ${args.csv}: ${err.message}`);
      return 1;
    }
    if (err instanceof PlotDataError) {
      console.error(`cannot render: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${args.out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
