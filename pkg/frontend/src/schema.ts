/** Column contracts for the simulator's CSV artifacts.
 *
 * Headers are fixed tuples; a file whose header deviates is rejected
 * with a diff naming every missing and unexpected column. Undefined
 * values arrive as the literal token NA and parse to NaN.
 */
import { z } from "zod";

export const NA = "NA";

export const TIMESERIES_COLUMNS = [
  "time",
  "centrists",
  "moderates",
  "extremists",
  "expressed_centrists",
  "expressed_moderates",
  "expressed_extremists",
  "morans_i_private",
  "morans_i_expressed",
  "mean_opinion",
  "stddev_opinion",
] as const;

export const HISTOGRAM_COLUMNS = ["time", "bin_low", "bin_high", "count"] as const;

export const SUMMARY_COLUMNS = ["metric", "time", "mean", "stddev"] as const;

const INT_COLUMNS = new Set([
  "time",
  "count",
  "centrists",
  "moderates",
  "extremists",
  "expressed_centrists",
  "expressed_moderates",
  "expressed_extremists",
]);

export class SchemaError extends Error {}

export function checkHeader(
  path: string,
  got: readonly string[] | undefined,
  expected: readonly string[],
): void {
  if (got && got.length === expected.length && expected.every((c, i) => got[i] === c)) {
    return;
  }
  const have = new Set(got ?? []);
  const want = new Set(expected);
  const missing = expected.filter((c) => !have.has(c));
  const unexpected = (got ?? []).filter((c) => !want.has(c));
  const parts = [`${path}: header does not match the documented schema`];
  if (missing.length) parts.push(`missing columns: ${missing.join(", ")}`);
  if (unexpected.length) parts.push(`unexpected columns: ${unexpected.join(", ")}`);
  if (!missing.length && !unexpected.length) parts.push(`column order differs`);
  throw new SchemaError(parts.join("; "));
}

export function parseCell(column: string, text: string): number {
  if (text === NA) return NaN;
  const value = Number(text);
  if (Number.isNaN(value)) {
    throw new SchemaError(`column ${column}: cannot parse ${JSON.stringify(text)} as a number`);
  }
  if (INT_COLUMNS.has(column) && !Number.isInteger(value)) {
    throw new SchemaError(`column ${column}: expected an integer, got ${text}`);
  }
  return value;
}

const count = z.number().int().nonnegative();
const measurement = z.union([z.number(), z.nan()]); // NaN encodes NA

export const timeseriesRow = z.object({
  time: z.number().int().nonnegative(),
  centrists: count,
  moderates: count,
  extremists: count,
  expressed_centrists: count,
  expressed_moderates: count,
  expressed_extremists: count,
  morans_i_private: measurement,
  morans_i_expressed: measurement,
  mean_opinion: measurement,
  stddev_opinion: measurement,
});

export const histogramRow = z.object({
  time: z.number().int().nonnegative(),
  bin_low: z.number().min(-1).max(1),
  bin_high: z.number().min(-1).max(1),
  count: count,
});

export const summaryRow = z.object({
  metric: z.string().min(1),
  time: z.number().int().nonnegative(),
  mean: measurement,
  stddev: measurement,
});

export type TimeseriesRow = z.infer<typeof timeseriesRow>;
export type HistogramRow = z.infer<typeof histogramRow>;
export type SummaryRow = z.infer<typeof summaryRow>;
