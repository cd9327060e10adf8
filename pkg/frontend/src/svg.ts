/**
 * Minimal deterministic SVG scene builder: fixed canvas, linear scales with
 * round tick steps, polylines, markers, and text. No timestamps or ids, so
 * repeated renders of the same data are byte-identical.
 */

export const WIDTH = 800;
export const HEIGHT = 560;
export const MARGIN = { left: 70, right: 30, top: 46, bottom: 52 };

export interface Scale {
  (value: number): number;
  min: number;
  max: number;
}

export function linearScale(
  min: number,
  max: number,
  rangeMin: number,
  rangeMax: number,
): Scale {
  if (min === max) {
    // degenerate span: pad so the single value sits mid-range
    min -= 1;
    max += 1;
  }
  const f = ((value: number) =>
    rangeMin + ((value - min) / (max - min)) * (rangeMax - rangeMin)) as Scale;
  f.min = min;
  f.max = max;
  return f;
}

/** Round tick positions covering [min, max] with a 1/2/5 step. */
export function ticks(min: number, max: number, count = 6): number[] {
  const span = max - min;
  if (span <= 0) return [min];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen =
    candidates.find((c) => span / c <= count) ?? candidates[candidates.length - 1];
  const out: number[] = [];
  for (
    let tick = Math.ceil(min / chosen) * chosen;
    tick <= max + 1e-12 * span;
    tick += chosen
  ) {
    out.push(Math.abs(tick) < 1e-12 * span ? 0 : tick);
  }
  return out;
}

export function fmt(value: number, digits = 6): string {
  if (!Number.isFinite(value)) return String(value);
  const out = value.toPrecision(digits);
  return out.includes(".") || out.includes("e")
    ? out.replace(/\.?0+($|e)/, "$1")
    : out;
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
        `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Menlo, monospace" font-size="12">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${title}</text>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.4, dash = ""): void {
    const attr = dash ? ` stroke-dasharray="${dash}"` : "";
    const path = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
    this.parts.push(
      `<polyline points="${path}" fill="none" stroke="${stroke}" stroke-width="${width}"${attr}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, stroke: string, fill = "none", dash = ""): void {
    const attr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<circle cx="${cx.toFixed(2)}" cy="${cy.toFixed(2)}" r="${r.toFixed(2)}" ` +
        `stroke="${stroke}" fill="${fill}"${attr}/>`,
    );
  }

  cross(cx: number, cy: number, size: number, stroke: string): void {
    this.parts.push(
      `<path d="M ${(cx - size).toFixed(2)} ${cy.toFixed(2)} H ${(cx + size).toFixed(2)} ` +
        `M ${cx.toFixed(2)} ${(cy - size).toFixed(2)} V ${(cy + size).toFixed(2)}" ` +
        `stroke="${stroke}" stroke-width="1.6"/>`,
    );
  }

  text(x: number, y: number, content: string, anchor = "start", fill = "#222"): void {
    this.parts.push(
      `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" text-anchor="${anchor}" fill="${fill}">` +
        `${content}</text>`,
    );
  }

  axes(
    xScale: Scale,
    yScale: Scale,
    xLabel: string,
    yLabel: string,
    yTickFormat: (v: number) => string = (v) => fmt(v, 4),
  ): void {
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    this.parts.push(
      `<path d="M ${x0} ${y1} V ${y0} H ${x1}" fill="none" stroke="#444"/>`,
    );
    for (const tick of ticks(xScale.min, xScale.max)) {
      const x = xScale(tick);
      this.parts.push(`<line x1="${x.toFixed(2)}" y1="${y0}" x2="${x.toFixed(2)}" y2="${y0 + 4}" stroke="#444"/>`);
      this.text(x, y0 + 18, fmt(tick, 4), "middle", "#444");
    }
    for (const tick of ticks(yScale.min, yScale.max)) {
      const y = yScale(tick);
      this.parts.push(`<line x1="${x0 - 4}" y1="${y.toFixed(2)}" x2="${x0}" y2="${y.toFixed(2)}" stroke="#444"/>`);
      this.text(x0 - 8, y + 4, yTickFormat(tick), "end", "#444");
    }
    this.text((x0 + x1) / 2, HEIGHT - 14, xLabel, "middle", "#444");
    this.parts.push(
      `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" fill="#444" ` +
        `transform="rotate(-90 16 ${(y0 + y1) / 2})">${yLabel}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
