/** Small-multiples grid of opinion histograms, one panel per sampled time. */
import { scaleLinear } from "d3-scale";
import type { HistogramRow } from "../schema.js";
import { opinionHex } from "../color.js";
import { SvgDocument, escapeText, fmt } from "../svg.js";

const PANEL_W = 220;
const PANEL_H = 150;
const PANEL_PAD = 14;
const INNER = { top: 22, right: 8, bottom: 20, left: 10 };

interface Panel {
  time: number;
  rows: HistogramRow[];
}

function groupByTime(rows: readonly HistogramRow[]): Panel[] {
  const order: number[] = [];
  const byTime = new Map<number, HistogramRow[]>();
  for (const row of rows) {
    let bucket = byTime.get(row.time);
    if (!bucket) {
      bucket = [];
      byTime.set(row.time, bucket);
      order.push(row.time);
    }
    bucket.push(row);
  }
  return order.map((time) => ({ time, rows: byTime.get(time)! }));
}

/**
 * One bar chart per sampled time, laid out left to right, top to bottom.
 * All panels share a count axis so shapes are comparable across times.
 */
export function histogramGrid(rows: readonly HistogramRow[], columns = 3): string {
  const panels = groupByTime(rows);
  if (panels.length === 0) {
    throw new RangeError("histogramGrid: no rows to plot");
  }
  const ncols = Math.min(columns, panels.length);
  const nrows = Math.ceil(panels.length / ncols);
  const width = PANEL_PAD + ncols * (PANEL_W + PANEL_PAD);
  const height = PANEL_PAD + nrows * (PANEL_H + PANEL_PAD);
  const maxCount = Math.max(1, ...rows.map((r) => r.count));

  const doc = new SvgDocument(width, height);
  panels.forEach((panel, i) => {
    const px = PANEL_PAD + (i % ncols) * (PANEL_W + PANEL_PAD);
    const py = PANEL_PAD + Math.floor(i / ncols) * (PANEL_H + PANEL_PAD);
    drawPanel(doc, panel, px, py, maxCount);
  });
  return doc.toString();
}

function drawPanel(doc: SvgDocument, panel: Panel, px: number, py: number, maxCount: number): void {
  const x = scaleLinear()
    .domain([-1, 1])
    .range([px + INNER.left, px + PANEL_W - INNER.right]);
  const y = scaleLinear()
    .domain([0, maxCount])
    .range([py + PANEL_H - INNER.bottom, py + INNER.top]);
  const floor = py + PANEL_H - INNER.bottom;

  doc.add(`<g>`);
  doc.add(
    `<rect x="${px}" y="${py}" width="${PANEL_W}" height="${PANEL_H}" fill="none" ` +
      `stroke="#cccccc"/>`,
  );
  doc.add(
    `<text x="${fmt(px + PANEL_W / 2)}" y="${py + 15}" text-anchor="middle" font-size="11" ` +
      `fill="#222222">${escapeText(`t = ${panel.time}`)}</text>`,
  );
  for (const row of panel.rows) {
    if (row.count === 0) continue;
    const left = x(row.bin_low);
    const right = x(row.bin_high);
    const top = y(row.count);
    const center = (row.bin_low + row.bin_high) / 2;
    doc.add(
      `<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(right - left)}" ` +
        `height="${fmt(floor - top)}" fill="${opinionHex(center)}" stroke="#555555" ` +
        `stroke-width="0.4"/>`,
    );
  }
  doc.add(`<line x1="${fmt(x(-1))}" y1="${fmt(floor)}" x2="${fmt(x(1))}" y2="${fmt(floor)}" stroke="#222222"/>`);
  for (const t of [-1, 0, 1]) {
    doc.add(
      `<text x="${fmt(x(t))}" y="${fmt(floor + 14)}" text-anchor="middle" font-size="10" ` +
        `fill="#222222">${fmt(t)}</text>`,
    );
  }
  doc.add(`</g>`);
}
