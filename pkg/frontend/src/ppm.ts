/** Binary PPM (P6) reader for simulator grid snapshots. */
import { readFileSync } from "node:fs";

export class PpmError extends Error {}

export interface PpmImage {
  width: number;
  height: number;
  /** Row-major RGB triples, 3 bytes per pixel. */
  pixels: Uint8Array;
}

function isSpace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

export function parsePpm(data: Uint8Array, origin = "<bytes>"): PpmImage {
  // Header: "P6" then width, height, maxval as ASCII integers, each
  // followed by one whitespace byte; '#' comments may appear between
  // tokens.
  let pos = 0;
  const token = (): string => {
    while (pos < data.length && (isSpace(data[pos]) || data[pos] === 0x23)) {
      if (data[pos] === 0x23) {
        while (pos < data.length && data[pos] !== 0x0a) pos += 1;
      }
      pos += 1;
    }
    const start = pos;
    while (pos < data.length && !isSpace(data[pos])) pos += 1;
    return String.fromCharCode(...data.subarray(start, pos));
  };

  if (token() !== "P6") throw new PpmError(`${origin}: not a binary PPM (P6) file`);
  const width = Number(token());
  const height = Number(token());
  const maxval = Number(token());
  if (!Number.isInteger(width) || !Number.isInteger(height) || width <= 0 || height <= 0) {
    throw new PpmError(`${origin}: bad dimensions ${width}x${height}`);
  }
  if (maxval !== 255) throw new PpmError(`${origin}: unsupported maxval ${maxval}`);
  pos += 1; // single whitespace byte after maxval
  const expected = width * height * 3;
  const pixels = data.subarray(pos, pos + expected);
  if (pixels.length !== expected) {
    throw new PpmError(`${origin}: expected ${expected} pixel bytes, found ${pixels.length}`);
  }
  return { width, height, pixels: new Uint8Array(pixels) };
}

export function readPpm(path: string): PpmImage {
  return parsePpm(readFileSync(path), path);
}
