// Affine green-to-red interpolation of a readout value in [0, 1]:
// 0 renders pure green, 1 pure red.

export function readoutColor(q: number): string {
  const v = Math.min(1, Math.max(0, q));
  const red = Math.round(255 * v);
  const green = Math.round(255 * (1 - v));
  return `rgb(${red}, ${green}, 0)`;
}

export const PURE_GREEN = readoutColor(0);
export const PURE_RED = readoutColor(1);

export function formatReadout(q: number): string {
  return q.toFixed(3);
}
