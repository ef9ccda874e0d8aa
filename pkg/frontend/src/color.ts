/** Diverging opinion color scale: -1 blue, 0 white, +1 red.
 *
 * Mirrors the simulator's snapshot palette so figures and PPM rasters
 * agree.
 */
export function opinionRgb(v: number): [number, number, number] {
  const x = Math.max(-1, Math.min(1, v));
  if (x >= 0) {
    const g = Math.round(255 * (1 - x));
    return [255, g, g];
  }
  const b = Math.round(255 * (1 + x));
  return [b, b, 255];
}

export function rgbToHex([r, g, b]: [number, number, number]): string {
  const h = (c: number) => c.toString(16).padStart(2, "0");
  return `#${h(r)}${h(g)}${h(b)}`;
}

export function opinionHex(v: number): string {
  return rgbToHex(opinionRgb(v));
}

/** Fixed party palette shared by all party-count figures. */
export const PARTY_COLORS = {
  centrists: "#4d4d4d",
  moderates: "#e08214",
  extremists: "#b2182b",
} as const;
