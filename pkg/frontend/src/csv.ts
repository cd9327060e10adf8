/**
 * Trajectory CSV parsing.
 *
 * Expected schema: header `k,u1,...,un,v1,...,vn,residual,dist,A,B` for some
 * dimension n >= 1; blank cells mean "not applicable" and parse to null.
 */

export interface TrajectoryRow {
  k: number;
  u: number[];
  v: number[] | null;
  residual: number;
  dist: number | null;
  a: number | null;
  b: number | null;
}

export interface Trajectory {
  dimension: number;
  rows: TrajectoryRow[];
}

export class CsvSchemaError extends Error {}

function splitLine(line: string): string[] {
  return line.split(",").map((cell) => cell.trim());
}

function expectedHeader(dimension: number): string[] {
  const header = ["k"];
  for (let i = 1; i <= dimension; i++) header.push(`u${i}`);
  for (let i = 1; i <= dimension; i++) header.push(`v${i}`);
  header.push("residual", "dist", "A", "B");
  return header;
}

/** Infer the dimension from a header row, or explain what is missing. */
function parseHeader(cells: string[]): number {
  if (cells[0] !== "k") {
    throw new CsvSchemaError("missing column 'k' at position 0");
  }
  let dimension = 0;
  while (cells[1 + dimension] === `u${dimension + 1}`) dimension++;
  if (dimension === 0) {
    throw new CsvSchemaError("missing column 'u1'");
  }
  const expected = expectedHeader(dimension);
  for (let i = 0; i < expected.length; i++) {
    if (cells[i] !== expected[i]) {
      throw new CsvSchemaError(
        `missing column '${expected[i]}' at position ${i}` +
          (cells[i] !== undefined ? ` (found '${cells[i]}')` : ""),
      );
    }
  }
  if (cells.length > expected.length) {
    throw new CsvSchemaError(`unexpected extra column '${cells[expected.length]}'`);
  }
  return dimension;
}

/** Parse a numeric cell; accepts the writer's non-finite spellings. */
function parseNumber(cell: string, where: string): number {
  switch (cell.toLowerCase()) {
    case "nan":
      return NaN;
    case "inf":
      return Infinity;
    case "-inf":
      return -Infinity;
  }
  const value = Number(cell);
  if (cell === "" || Number.isNaN(value)) {
    throw new CsvSchemaError(`cell ${where} is not a number: '${cell}'`);
  }
  return value;
}

function parseOptional(cell: string): number | null {
  return cell === "" ? null : parseNumber(cell, "optional");
}

export function parseTrajectory(text: string): Trajectory {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty file");
  }
  const dimension = parseHeader(splitLine(lines[0]));
  const rows: TrajectoryRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = splitLine(lines[i]);
    const u: number[] = [];
    for (let d = 0; d < dimension; d++) {
      u.push(parseNumber(cells[1 + d], `u${d + 1} (line ${i + 1})`));
    }
    const vCells = cells.slice(1 + dimension, 1 + 2 * dimension);
    const v = vCells.every((cell) => cell === "")
      ? null
      : vCells.map((cell) => Number(cell));
    rows.push({
      k: parseNumber(cells[0], `k (line ${i + 1})`),
      u,
      v,
      residual: parseNumber(cells[1 + 2 * dimension], `residual (line ${i + 1})`),
      dist: parseOptional(cells[2 + 2 * dimension]),
      a: parseOptional(cells[3 + 2 * dimension]),
      b: parseOptional(cells[4 + 2 * dimension]),
    });
  }
  if (rows.length === 0) {
    throw new CsvSchemaError("trajectory has a header but no rows");
  }
  return { dimension, rows };
}
