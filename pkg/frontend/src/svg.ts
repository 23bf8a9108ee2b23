/**
 * Minimal deterministic SVG helpers: fixed-precision number formatting,
 * tick placement and XML escaping.  No randomness, no timestamps, so a
 * given input always produces identical bytes.
 */

export function fmt(value: number): string {
  if (!Number.isFinite(value)) return "0";
  if (value === 0) return "0";
  const text = value.toPrecision(6);
  if (text.includes("e") || !text.includes(".")) return text;
  // strip trailing fraction zeros only
  return text.replace(/0+$/, "").replace(/\.$/, "");
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Range {
  min: number;
  max: number;
}

/** Data range padded so flat curves and single points stay visible. */
export function paddedRange(values: number[]): Range {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) return { min: 0, max: 1 };
  let min = Math.min(...finite);
  let max = Math.max(...finite);
  if (min === max) {
    const pad = min === 0 ? 1 : Math.abs(min) * 0.1;
    min -= pad;
    max += pad;
  }
  return { min, max };
}

/** Round tick positions covering the range with at most maxTicks marks. */
export function niceTicks(range: Range, maxTicks = 6): number[] {
  const span = range.max - range.min;
  const rawStep = span / Math.max(1, maxTicks - 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (power * mult >= rawStep) {
      step = power * mult;
      break;
    }
  }
  const first = Math.ceil(range.min / step) * step;
  const ticks: number[] = [];
  for (let tick = first; tick <= range.max + step * 1e-9; tick += step) {
    ticks.push(Math.abs(tick) < step * 1e-9 ? 0 : tick);
  }
  return ticks;
}

export function scaleLinear(range: Range, pixelLo: number, pixelHi: number) {
  const span = range.max - range.min;
  return (value: number) => pixelLo + ((value - range.min) / span) * (pixelHi - pixelLo);
}

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
