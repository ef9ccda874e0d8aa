/** Ensemble band figure for a summarised metric (mean with a one-stddev band). */
import { area as d3area } from "d3-shape";
import type { SummaryRow } from "../schema.js";
import { SchemaError } from "../schema.js";
import { SvgDocument, drawAxes, linePath, makeScales } from "../svg.js";

const WIDTH = 640;
const HEIGHT = 400;

/**
 * Mean trajectory of one summary metric with a shaded mean +/- stddev band.
 *
 * Rows whose mean is NaN (the NA token) break the band and the line into
 * separate segments rather than being interpolated across.
 */
export function moransBand(
  rows: readonly SummaryRow[],
  metric = "morans_i_private",
  title?: string,
): string {
  const series = rows.filter((r) => r.metric === metric);
  if (series.length === 0) {
    const present = [...new Set(rows.map((r) => r.metric))].join(", ");
    throw new SchemaError(
      `summary contains no rows for metric ${metric}; present: ${present || "none"}`,
    );
  }

  const times = series.map((r) => r.time);
  const finite = series.filter((r) => Number.isFinite(r.mean));
  const lows = finite.map((r) => r.mean - (Number.isFinite(r.stddev) ? r.stddev : 0));
  const highs = finite.map((r) => r.mean + (Number.isFinite(r.stddev) ? r.stddev : 0));
  const yLo = Math.min(-0.1, ...lows);
  const yHi = Math.max(0.1, ...highs);

  const { x, y } = makeScales([Math.min(...times), Math.max(...times)], [yLo, yHi], WIDTH, HEIGHT);
  const doc = new SvgDocument(WIDTH, HEIGHT);
  drawAxes(doc, { x, y, xLabel: "time step", yLabel: metric, title: title ?? metric });

  const band = d3area<SummaryRow>()
    .defined((r) => Number.isFinite(r.mean))
    .x((r) => Math.round(x(r.time) * 100) / 100)
    .y0((r) => Math.round(y(r.mean - (Number.isFinite(r.stddev) ? r.stddev : 0)) * 100) / 100)
    .y1((r) => Math.round(y(r.mean + (Number.isFinite(r.stddev) ? r.stddev : 0)) * 100) / 100);
  const bandPath = band([...series]);
  if (bandPath) {
    doc.add(`<path d="${bandPath}" fill="#b2182b" fill-opacity="0.18" stroke="none"/>`);
  }

  const meanPoints: Array<[number, number]> = series.map((r) => [r.time, r.mean]);
  doc.add(
    `<path d="${linePath(meanPoints, x, y)}" fill="none" stroke="#b2182b" stroke-width="2"/>`,
  );

  const zeroY = Math.round(y(0) * 100) / 100;
  const [rx0, rx1] = x.range();
  doc.add(
    `<line x1="${rx0}" y1="${zeroY}" x2="${rx1}" y2="${zeroY}" stroke="#888888" ` +
      `stroke-width="1" stroke-dasharray="3,3"/>`,
  );
  return doc.toString();
}
