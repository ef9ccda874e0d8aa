/** Lattice snapshot mosaic rendered from PPM frames. */
import type { PpmImage } from "../ppm.js";
import { rgbToHex } from "../color.js";
import { SvgDocument, escapeText, fmt } from "../svg.js";

const PANEL_PAD = 16;
const LABEL_H = 18;
const TARGET_PANEL_W = 200;

export interface MosaicPanel {
  label: string;
  image: PpmImage;
}

/**
 * A grid of lattice snapshots, one panel per frame, in the order given.
 * Horizontal runs of identically coloured cells are merged into single
 * rects to keep the output compact.
 */
export function snapshotMosaic(panels: readonly MosaicPanel[], columns = 3): string {
  if (panels.length === 0) {
    throw new RangeError("snapshotMosaic: no frames to plot");
  }
  const ncols = Math.min(columns, panels.length);
  const nrows = Math.ceil(panels.length / ncols);
  const cell = Math.max(1, Math.floor(TARGET_PANEL_W / Math.max(...panels.map((p) => p.image.width))));

  const panelW = Math.max(...panels.map((p) => p.image.width)) * cell;
  const panelH = Math.max(...panels.map((p) => p.image.height)) * cell + LABEL_H;
  const width = PANEL_PAD + ncols * (panelW + PANEL_PAD);
  const height = PANEL_PAD + nrows * (panelH + PANEL_PAD);

  const doc = new SvgDocument(width, height);
  panels.forEach((panel, i) => {
    const px = PANEL_PAD + (i % ncols) * (panelW + PANEL_PAD);
    const py = PANEL_PAD + Math.floor(i / ncols) * (panelH + PANEL_PAD);
    drawPanel(doc, panel, px, py, cell);
  });
  return doc.toString();
}

function drawPanel(doc: SvgDocument, panel: MosaicPanel, px: number, py: number, cell: number): void {
  const { image } = panel;
  doc.add(`<g>`);
  doc.add(
    `<text x="${fmt(px + (image.width * cell) / 2)}" y="${py + 12}" text-anchor="middle" ` +
      `font-size="11" fill="#222222">${escapeText(panel.label)}</text>`,
  );
  const top = py + LABEL_H;
  for (let row = 0; row < image.height; row++) {
    let runStart = 0;
    let runColor = pixelHex(image, row, 0);
    for (let col = 1; col <= image.width; col++) {
      const color = col < image.width ? pixelHex(image, row, col) : "";
      if (color !== runColor) {
        doc.add(
          `<rect x="${px + runStart * cell}" y="${top + row * cell}" ` +
            `width="${(col - runStart) * cell}" height="${cell}" fill="${runColor}"/>`,
        );
        runStart = col;
        runColor = color;
      }
    }
  }
  doc.add(
    `<rect x="${px}" y="${top}" width="${image.width * cell}" height="${image.height * cell}" ` +
      `fill="none" stroke="#cccccc"/>`,
  );
  doc.add(`</g>`);
}

function pixelHex(image: PpmImage, row: number, col: number): string {
  const k = (row * image.width + col) * 3;
  return rgbToHex([image.pixels[k], image.pixels[k + 1], image.pixels[k + 2]]);
}
