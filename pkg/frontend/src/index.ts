export { opinionRgb, opinionHex, rgbToHex, PARTY_COLORS } from "./color.js";
export {
  NA,
  TIMESERIES_COLUMNS,
  HISTOGRAM_COLUMNS,
  SUMMARY_COLUMNS,
  SchemaError,
  checkHeader,
  parseCell,
  type TimeseriesRow,
  type HistogramRow,
  type SummaryRow,
} from "./schema.js";
export { readTimeseries, readHistogram, readSummary } from "./csv.js";
export { PpmError, parsePpm, readPpm, type PpmImage } from "./ppm.js";
export { partyTimeseries, expressedVsPrivate } from "./figures/party.js";
export { moransBand } from "./figures/morans.js";
export { histogramGrid } from "./figures/histogram.js";
export { snapshotMosaic, type MosaicPanel } from "./figures/mosaic.js";
