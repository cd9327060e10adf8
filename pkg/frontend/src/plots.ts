/**
 * The three figure kinds rendered from a trajectory:
 *
 * - phase:    the (u1, u2) path with start/origin markers and min/max-radius
 *             annotations (optionally a dashed circle at a given radius);
 * - residual: fixed-point residual versus iteration, log scale;
 * - lyapunov: the descent quantities A_k and B_k versus iteration.
 *
 * The renderer never recomputes dynamics; everything shown comes from the
 * CSV columns.
 */

import { Trajectory } from "./csv.js";
import { fmt, HEIGHT, linearScale, MARGIN, Svg, WIDTH } from "./svg.js";

export class PlotDataError extends Error {}

export const PLOT_KINDS = ["phase", "residual", "lyapunov"] as const;
export type PlotKind = (typeof PLOT_KINDS)[number];

export interface PhaseAnnotations {
  radiusMin: number;
  radiusMax: number;
  finalResidual: number;
}

const LOG_FLOOR = 1e-16;

function plotArea() {
  return {
    x0: MARGIN.left,
    x1: WIDTH - MARGIN.right,
    y0: HEIGHT - MARGIN.bottom,
    y1: MARGIN.top,
  };
}

function finiteRows(trajectory: Trajectory) {
  // a diverged run may end in a non-finite row; draw what is drawable
  return trajectory.rows.filter((row) => row.u.every(Number.isFinite));
}

export function phaseAnnotations(trajectory: Trajectory): PhaseAnnotations {
  const radii = finiteRows(trajectory).map((row) => Math.hypot(...row.u));
  return {
    radiusMin: Math.min(...radii),
    radiusMax: Math.max(...radii),
    finalResidual: trajectory.rows[trajectory.rows.length - 1].residual,
  };
}

export function renderPhase(trajectory: Trajectory, annotateRadius?: number): string {
  if (trajectory.dimension < 2) {
    throw new PlotDataError("phase plot needs at least two coordinates per iterate");
  }
  const rows = finiteRows(trajectory);
  if (rows.length === 0) {
    throw new PlotDataError("no finite iterates to draw");
  }
  const { x0, x1, y0, y1 } = plotArea();
  const xs = rows.map((row) => row.u[0]);
  const ys = rows.map((row) => row.u[1]);
  let xMin = Math.min(...xs, 0);
  let xMax = Math.max(...xs, 0);
  let yMin = Math.min(...ys, 0);
  let yMax = Math.max(...ys, 0);
  if (annotateRadius !== undefined) {
    xMin = Math.min(xMin, -annotateRadius);
    xMax = Math.max(xMax, annotateRadius);
    yMin = Math.min(yMin, -annotateRadius);
    yMax = Math.max(yMax, annotateRadius);
  }
  // keep the aspect ratio square so circles look like circles
  const spanX = xMax - xMin;
  const spanY = yMax - yMin;
  const plotW = x1 - x0;
  const plotH = y0 - y1;
  const unit = Math.max(spanX / plotW, spanY / plotH) || 1;
  const padX = (unit * plotW - spanX) / 2 + 0.04 * unit * plotW;
  const padY = (unit * plotH - spanY) / 2 + 0.04 * unit * plotH;
  const xScale = linearScale(xMin - padX, xMax + padX, x0, x1);
  const yScale = linearScale(yMin - padY, yMax + padY, y0, y1);

  const svg = new Svg("trajectory phase portrait");
  svg.axes(xScale, yScale, "u1", "u2");
  svg.polyline(
    rows.map((row) => [xScale(row.u[0]), yScale(row.u[1])]),
    "#1f77b4",
    1.1,
  );
  // markers: start point and the origin reference
  svg.circle(xScale(xs[0]), yScale(ys[0]), 4, "#d62728", "#d62728");
  svg.text(xScale(xs[0]) + 7, yScale(ys[0]) - 6, "start", "start", "#d62728");
  svg.cross(xScale(0), yScale(0), 6, "#2ca02c");
  svg.text(xScale(0) + 8, yScale(0) + 14, "origin", "start", "#2ca02c");
  if (annotateRadius !== undefined) {
    const radiusPx = Math.abs(xScale(annotateRadius) - xScale(0));
    svg.circle(xScale(0), yScale(0), radiusPx, "#999", "none", "6 4");
    svg.text(xScale(0), yScale(annotateRadius) - 6, `r = ${fmt(annotateRadius)}`,
      "middle", "#777");
  }
  const notes = phaseAnnotations(trajectory);
  svg.text(x0 + 6, y1 + 14, `radius min = ${fmt(notes.radiusMin)}`);
  svg.text(x0 + 6, y1 + 30, `radius max = ${fmt(notes.radiusMax)}`);
  svg.text(x0 + 6, y1 + 46, `final residual = ${fmt(notes.finalResidual)}`);
  return svg.render();
}

export function renderResidual(trajectory: Trajectory): string {
  const { x0, x1, y0, y1 } = plotArea();
  const points = trajectory.rows
    .filter((row) => Number.isFinite(row.residual))
    .map(
      (row) => [row.k, Math.log10(Math.max(row.residual, LOG_FLOOR))] as [number, number],
    );
  if (points.length === 0) {
    throw new PlotDataError("no finite residuals to draw");
  }
  const logs = points.map(([, log]) => log);
  const xScale = linearScale(points[0][0], points[points.length - 1][0], x0, x1);
  const yScale = linearScale(Math.min(...logs), Math.max(...logs), y0, y1);
  const svg = new Svg("fixed-point residual");
  svg.axes(xScale, yScale, "iteration k", "log10 residual");
  svg.polyline(points.map(([k, log]) => [xScale(k), yScale(log)]), "#1f77b4");
  const final = trajectory.rows[trajectory.rows.length - 1].residual;
  svg.text(x1 - 6, y1 + 14, `final residual = ${fmt(final)}`, "end");
  return svg.render();
}

export function renderLyapunov(trajectory: Trajectory): string {
  const { x0, x1, y0, y1 } = plotArea();
  const aPoints = trajectory.rows
    .filter((row) => row.a !== null)
    .map((row) => [row.k, row.a as number] as [number, number]);
  const bPoints = trajectory.rows
    .filter((row) => row.b !== null)
    .map((row) => [row.k, row.b as number] as [number, number]);
  if (aPoints.length === 0 || bPoints.length === 0) {
    throw new PlotDataError(
      "no Lyapunov columns in this trajectory (unconstrained popov/ogda runs " +
        "with a known solution log them)",
    );
  }
  const values = [...aPoints, ...bPoints].map(([, value]) => value);
  const ks = [...aPoints, ...bPoints].map(([k]) => k);
  const xScale = linearScale(Math.min(...ks), Math.max(...ks), x0, x1);
  const yScale = linearScale(Math.min(...values, 0), Math.max(...values), y0, y1);
  const svg = new Svg("descent quantities");
  svg.axes(xScale, yScale, "iteration k", "value");
  svg.polyline(aPoints.map(([k, value]) => [xScale(k), yScale(value)]), "#1f77b4");
  svg.polyline(bPoints.map(([k, value]) => [xScale(k), yScale(value)]), "#ff7f0e");
  svg.text(x1 - 6, y1 + 14, "A_k", "end", "#1f77b4");
  svg.text(x1 - 6, y1 + 30, "B_k", "end", "#ff7f0e");
  const final = trajectory.rows[trajectory.rows.length - 1].residual;
  svg.text(x0 + 6, y1 + 14, `final residual = ${fmt(final)}`);
  return svg.render();
}

export function renderPlot(
  trajectory: Trajectory,
  kind: PlotKind,
  annotateRadius?: number,
): string {
  switch (kind) {
    case "phase":
      return renderPhase(trajectory, annotateRadius);
    case "residual":
      return renderResidual(trajectory);
    case "lyapunov":
      return renderLyapunov(trajectory);
  }
}
