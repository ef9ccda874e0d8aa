/** Deterministic SVG assembly: fixed formatting, no dates, no randomness. */
import { scaleLinear, type ScaleLinear } from "d3-scale";
import { line as d3line } from "d3-shape";

export type LinearScale = ScaleLinear<number, number>;

/** Round to 2 decimals and render the shortest form. */
export function fmt(x: number): string {
  const r = Math.round(x * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Margins {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGINS: Margins = { top: 34, right: 16, bottom: 42, left: 56 };

export class SvgDocument {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {}

  add(part: string): void {
    this.parts.push(part);
  }

  toString(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
        `viewBox="0 0 ${this.width} ${this.height}" font-family="sans-serif">`,
      `<rect width="${this.width}" height="${this.height}" fill="#ffffff"/>`,
      ...this.parts,
      `</svg>`,
      ``,
    ].join("\n");
  }
}

export function linePath(
  points: Array<[number, number]>,
  x: LinearScale,
  y: LinearScale,
): string {
  const gen = d3line<[number, number]>()
    .defined((p) => Number.isFinite(p[1]))
    .x((p) => round2(x(p[0])))
    .y((p) => round2(y(p[1])));
  return gen(points) ?? "";
}

function round2(v: number): number {
  return Math.round(v * 100) / 100;
}

export interface AxesSpec {
  x: LinearScale;
  y: LinearScale;
  xLabel: string;
  yLabel: string;
  title?: string;
}

export function makeScales(
  xDomain: [number, number],
  yDomain: [number, number],
  width: number,
  height: number,
  margins: Margins = DEFAULT_MARGINS,
): { x: LinearScale; y: LinearScale } {
  const x = scaleLinear().domain(xDomain).range([margins.left, width - margins.right]).nice();
  const y = scaleLinear().domain(yDomain).range([height - margins.bottom, margins.top]).nice();
  return { x, y };
}

export function drawAxes(doc: SvgDocument, axes: AxesSpec, margins: Margins = DEFAULT_MARGINS): void {
  const { x, y } = axes;
  const [x0, x1] = x.range();
  const [y0, y1] = y.range();
  doc.add(`<g stroke="#222222" stroke-width="1">`);
  doc.add(`<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x1)}" y2="${fmt(y0)}"/>`);
  doc.add(`<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x0)}" y2="${fmt(y1)}"/>`);
  doc.add(`</g>`);

  doc.add(`<g font-size="11" fill="#222222">`);
  for (const t of x.ticks(6)) {
    const px = fmt(x(t));
    doc.add(`<line x1="${px}" y1="${fmt(y0)}" x2="${px}" y2="${fmt(y0 + 4)}" stroke="#222222"/>`);
    doc.add(`<text x="${px}" y="${fmt(y0 + 16)}" text-anchor="middle">${fmt(t)}</text>`);
  }
  for (const t of y.ticks(6)) {
    const py = fmt(y(t));
    doc.add(`<line x1="${fmt(x0 - 4)}" y1="${py}" x2="${fmt(x0)}" y2="${py}" stroke="#222222"/>`);
    doc.add(`<text x="${fmt(x0 - 7)}" y="${fmt(Number(py) + 3.5)}" text-anchor="end">${fmt(t)}</text>`);
  }
  doc.add(`</g>`);

  const midX = (x0 + x1) / 2;
  const midY = (y0 + y1) / 2;
  doc.add(
    `<text x="${fmt(midX)}" y="${fmt(doc.height - 8)}" text-anchor="middle" font-size="12" ` +
      `fill="#222222">${escapeText(axes.xLabel)}</text>`,
  );
  doc.add(
    `<text x="14" y="${fmt(midY)}" text-anchor="middle" font-size="12" fill="#222222" ` +
      `transform="rotate(-90 14 ${fmt(midY)})">${escapeText(axes.yLabel)}</text>`,
  );
  if (axes.title) {
    doc.add(
      `<text x="${fmt(midX)}" y="20" text-anchor="middle" font-size="14" fill="#111111">` +
        `${escapeText(axes.title)}</text>`,
    );
  }
  void margins;
}

export interface LegendItem {
  label: string;
  color: string;
  dashed?: boolean;
}

export function drawLegend(doc: SvgDocument, items: LegendItem[], xStart: number, yStart: number): void {
  doc.add(`<g font-size="11" fill="#222222">`);
  items.forEach((item, i) => {
    const y = yStart + 16 * i;
    const dash = item.dashed ? ` stroke-dasharray="5,3"` : "";
    doc.add(
      `<line x1="${fmt(xStart)}" y1="${fmt(y)}" x2="${fmt(xStart + 22)}" y2="${fmt(y)}" ` +
        `stroke="${item.color}" stroke-width="2"${dash}/>`,
    );
    doc.add(`<text x="${fmt(xStart + 28)}" y="${fmt(y + 3.5)}">${escapeText(item.label)}</text>`);
  });
  doc.add(`</g>`);
}
