#!/usr/bin/env node
/** Render SVG figures from simulator run artifacts. */
import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { readHistogram, readSummary, readTimeseries } from "./csv.js";
import { histogramGrid } from "./figures/histogram.js";
import { snapshotMosaic, type MosaicPanel } from "./figures/mosaic.js";
import { moransBand } from "./figures/morans.js";
import { expressedVsPrivate, partyTimeseries } from "./figures/party.js";
import { readPpm, PpmError } from "./ppm.js";
import { SchemaError } from "./schema.js";

const PROG = "polisim-figures";

function fail(message: string, code: number): never {
  process.stderr.write(`${PROG}: ${message}\n`);
  process.exit(code);
}

/** Run a figure builder; schema problems exit 1, IO problems exit 2. */
function emit(out: string, build: () => string): void {
  let svg: string;
  try {
    svg = build();
  } catch (err) {
    if (err instanceof SchemaError || err instanceof PpmError || err instanceof RangeError) {
      fail(err.message, 1);
    }
    if (err instanceof Error && "code" in err) {
      fail(err.message, 2);
    }
    throw err;
  }
  try {
    writeFileSync(out, svg, "utf-8");
  } catch (err) {
    fail(err instanceof Error ? err.message : String(err), 2);
  }
}

function frameLabel(path: string): string {
  const name = basename(path);
  const m = /^.+_(private|expressed)_(\d{8})\.ppm$/.exec(name);
  return m ? `${m[1]} t=${Number(m[2])}` : name;
}

const inputOption = {
  input: {
    type: "string",
    demandOption: true,
    describe: "input CSV produced by the simulator",
  },
  out: { type: "string", demandOption: true, describe: "output SVG path" },
} as const;

export function main(argv: string[]): void {
  yargs(argv)
    .scriptName(PROG)
    .usage("$0 <command> [options]")
    .command(
      "party-timeseries",
      "plot private party counts over time from a timeseries CSV",
      inputOption,
      (args) => emit(args.out, () => partyTimeseries(readTimeseries(args.input))),
    )
    .command(
      "expressed-vs-private",
      "plot private against expressed party counts from a timeseries CSV",
      inputOption,
      (args) => emit(args.out, () => expressedVsPrivate(readTimeseries(args.input))),
    )
    .command(
      "morans-band",
      "plot an ensemble mean and stddev band for one metric from a summary CSV",
      {
        ...inputOption,
        metric: { type: "string", default: "morans_i_private" },
      } as const,
      (args) => emit(args.out, () => moransBand(readSummary(args.input), args.metric)),
    )
    .command(
      "histogram-grid",
      "plot per-time opinion histograms from a histogram CSV",
      {
        ...inputOption,
        columns: { type: "number", default: 3 },
      } as const,
      (args) => emit(args.out, () => histogramGrid(readHistogram(args.input), args.columns)),
    )
    .command(
      "snapshot-mosaic <frames..>",
      "tile PPM grid snapshots into one figure",
      {
        out: inputOption.out,
        columns: { type: "number", default: 3 },
        frames: { type: "string", array: true, demandOption: true },
      } as const,
      (args) => {
        const frames = args.frames as string[];
        emit(args.out, () => {
          const panels: MosaicPanel[] = frames.map((f) => ({
            label: frameLabel(f),
            image: readPpm(f),
          }));
          return snapshotMosaic(panels, args.columns);
        });
      },
    )
    .demandCommand(1, "a figure command is required")
    .strict()
    .fail((msg, err) => {
      if (err) throw err;
      fail(msg, 1);
    })
    .parseSync();
}

main(hideBin(process.argv));
