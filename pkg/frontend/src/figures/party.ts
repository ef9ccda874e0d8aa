/** Party-share figures driven by a run's timeseries rows. */
import type { TimeseriesRow } from "../schema.js";
import { PARTY_COLORS } from "../color.js";
import {
  DEFAULT_MARGINS,
  SvgDocument,
  drawAxes,
  drawLegend,
  linePath,
  makeScales,
} from "../svg.js";

const WIDTH = 640;
const HEIGHT = 400;

const PARTIES = ["centrists", "moderates", "extremists"] as const;

function points(rows: readonly TimeseriesRow[], key: keyof TimeseriesRow): Array<[number, number]> {
  return rows.map((r) => [r.time, r[key] as number]);
}

function timeDomain(rows: readonly TimeseriesRow[]): [number, number] {
  const times = rows.map((r) => r.time);
  return [Math.min(...times), Math.max(...times)];
}

function requireRows(rows: readonly TimeseriesRow[], figure: string): void {
  if (rows.length === 0) {
    throw new RangeError(`${figure}: no rows to plot`);
  }
}

/** Counts of centrists, moderates and extremists (private attitudes) over time. */
export function partyTimeseries(rows: readonly TimeseriesRow[], title = "Party sizes"): string {
  requireRows(rows, "partyTimeseries");
  const population = Math.max(
    ...rows.map((r) => r.centrists + r.moderates + r.extremists),
  );
  const { x, y } = makeScales(timeDomain(rows), [0, population], WIDTH, HEIGHT);
  const doc = new SvgDocument(WIDTH, HEIGHT);
  drawAxes(doc, { x, y, xLabel: "time step", yLabel: "agents", title });
  for (const party of PARTIES) {
    doc.add(
      `<path d="${linePath(points(rows, party), x, y)}" fill="none" ` +
        `stroke="${PARTY_COLORS[party]}" stroke-width="2"/>`,
    );
  }
  drawLegend(
    doc,
    PARTIES.map((p) => ({ label: p, color: PARTY_COLORS[p] })),
    DEFAULT_MARGINS.left + 10,
    DEFAULT_MARGINS.top + 10,
  );
  return doc.toString();
}

/** Private party counts (solid) against expressed party counts (dashed). */
export function expressedVsPrivate(
  rows: readonly TimeseriesRow[],
  title = "Expressed vs private party sizes",
): string {
  requireRows(rows, "expressedVsPrivate");
  const population = Math.max(
    ...rows.map((r) => r.centrists + r.moderates + r.extremists),
  );
  const { x, y } = makeScales(timeDomain(rows), [0, population], WIDTH, HEIGHT);
  const doc = new SvgDocument(WIDTH, HEIGHT);
  drawAxes(doc, { x, y, xLabel: "time step", yLabel: "agents", title });
  for (const party of PARTIES) {
    doc.add(
      `<path d="${linePath(points(rows, party), x, y)}" fill="none" ` +
        `stroke="${PARTY_COLORS[party]}" stroke-width="2"/>`,
    );
    const expressedKey = `expressed_${party}` as keyof TimeseriesRow;
    doc.add(
      `<path d="${linePath(points(rows, expressedKey), x, y)}" fill="none" ` +
        `stroke="${PARTY_COLORS[party]}" stroke-width="2" stroke-dasharray="5,3"/>`,
    );
  }
  drawLegend(
    doc,
    PARTIES.flatMap((p) => [
      { label: `${p} (private)`, color: PARTY_COLORS[p] },
      { label: `${p} (expressed)`, color: PARTY_COLORS[p], dashed: true },
    ]),
    DEFAULT_MARGINS.left + 10,
    DEFAULT_MARGINS.top + 10,
  );
  return doc.toString();
}
