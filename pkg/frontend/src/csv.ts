/** Strict readers for the simulator's CSV artifacts. */
import { readFileSync } from "node:fs";

import Papa from "papaparse";
import type { ZodType } from "zod";

import {
  HISTOGRAM_COLUMNS,
  HistogramRow,
  SUMMARY_COLUMNS,
  SchemaError,
  SummaryRow,
  TIMESERIES_COLUMNS,
  TimeseriesRow,
  checkHeader,
  histogramRow,
  parseCell,
  summaryRow,
  timeseriesRow,
} from "./schema.js";

function readRows<T>(
  path: string,
  columns: readonly string[],
  rowSchema: ZodType<T>,
  textColumns: ReadonlySet<string> = new Set(),
): T[] {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<string[]>(text.trimEnd(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${path}: malformed CSV: ${first.message} (row ${first.row})`);
  }
  const [header, ...lines] = parsed.data;
  checkHeader(path, header, columns);
  return lines.map((cells, lineNo) => {
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${path}: row ${lineNo + 2} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    const record: Record<string, number | string> = {};
    columns.forEach((column, i) => {
      record[column] = textColumns.has(column) ? cells[i] : parseCell(column, cells[i]);
    });
    const result = rowSchema.safeParse(record);
    if (!result.success) {
      const issue = result.error.issues[0];
      throw new SchemaError(
        `${path}: row ${lineNo + 2}, column ${issue.path.join(".")}: ${issue.message}`,
      );
    }
    return result.data;
  });
}

export function readTimeseries(path: string): TimeseriesRow[] {
  return readRows(path, TIMESERIES_COLUMNS, timeseriesRow);
}

export function readHistogram(path: string): HistogramRow[] {
  return readRows(path, HISTOGRAM_COLUMNS, histogramRow);
}

export function readSummary(path: string): SummaryRow[] {
  return readRows(path, SUMMARY_COLUMNS, summaryRow, new Set(["metric"]));
}
