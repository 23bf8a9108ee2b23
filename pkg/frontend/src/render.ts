/**
 * Turns one figure specification into a multi-panel SVG string.
 *
 * All numbers are taken from the CSV files as-is; the only arithmetic here
 * is axis scaling.  Rendering the same inputs always yields identical
 * bytes.
 */

import { readFileSync, existsSync } from "fs";
import { join } from "path";

import { CsvTable, parseCsv, numericColumn, CsvError } from "./csv.js";
import { FigureSpec, PanelSpec } from "./manifest.js";
import { PALETTE, Range, escapeXml, fmt, niceTicks, paddedRange, scaleLinear } from "./svg.js";

export class MissingCsvError extends CsvError {
  constructor(path: string) {
    super(`missing CSV: ${path} does not exist`);
  }
}

const PANEL_WIDTH = 380;
const PANEL_HEIGHT = 270;
const MARGIN = { left: 62, right: 16, top: 34, bottom: 46 };
const TITLE_HEIGHT = 28;

interface Curve {
  label: string;
  color: string;
  x: number[];
  y: number[];
}

function loadCurves(panel: PanelSpec, tables: Map<string, CsvTable>): Curve[] {
  return panel.series.map((series, index) => {
    const table = tables.get(series.csv)!;
    return {
      label: series.label,
      color: PALETTE[index % PALETTE.length]!,
      x: numericColumn(table, panel.xColumn),
      y: numericColumn(table, series.yColumn ?? panel.yColumn),
    };
  });
}

function panelSvg(panel: PanelSpec, curves: Curve[], originX: number, originY: number): string {
  const plotLo = { x: originX + MARGIN.left, y: originY + MARGIN.top };
  const plotHi = {
    x: originX + PANEL_WIDTH - MARGIN.right,
    y: originY + PANEL_HEIGHT - MARGIN.bottom,
  };
  const xRange = paddedRange(curves.flatMap((c) => c.x));
  const yRange = paddedRange(curves.flatMap((c) => c.y));
  const xScale = scaleLinear(xRange, plotLo.x, plotHi.x);
  const yScale = scaleLinear(yRange, plotHi.y, plotLo.y);

  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(plotLo.x)}" y="${fmt(plotLo.y)}" width="${fmt(plotHi.x - plotLo.x)}" ` +
      `height="${fmt(plotHi.y - plotLo.y)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const tick of niceTicks(xRange)) {
    const px = xScale(tick);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(plotHi.y)}" x2="${fmt(px)}" y2="${fmt(plotHi.y + 4)}" stroke="#333"/>`,
      `<text x="${fmt(px)}" y="${fmt(plotHi.y + 17)}" font-size="10" text-anchor="middle">${fmt(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yRange, 5)) {
    const py = yScale(tick);
    parts.push(
      `<line x1="${fmt(plotLo.x - 4)}" y1="${fmt(py)}" x2="${fmt(plotLo.x)}" y2="${fmt(py)}" stroke="#333"/>`,
      `<text x="${fmt(plotLo.x - 7)}" y="${fmt(py + 3)}" font-size="10" text-anchor="end">${fmt(tick)}</text>`,
    );
  }
  for (const curve of curves) {
    const points = curve.x
      .map((x, i) => `${fmt(xScale(x))},${fmt(yScale(curve.y[i] ?? 0))}`)
      .join(" ");
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${curve.color}" stroke-width="1.3"/>`,
    );
  }
  const centerX = (plotLo.x + plotHi.x) / 2;
  parts.push(
    `<text x="${fmt(centerX)}" y="${fmt(plotHi.y + 34)}" font-size="12" text-anchor="middle">${escapeXml(panel.xLabel)}</text>`,
    `<text transform="translate(${fmt(originX + 16)},${fmt((plotLo.y + plotHi.y) / 2)}) rotate(-90)" ` +
      `font-size="12" text-anchor="middle">${escapeXml(panel.yLabel)}</text>`,
    `<text x="${fmt(plotLo.x + 6)}" y="${fmt(plotLo.y - 6)}" font-size="12">${escapeXml(panel.label)}</text>`,
  );
  // legend in the top-right corner of the panel
  curves.forEach((curve, i) => {
    const ly = plotLo.y + 12 + i * 13;
    const lx = plotHi.x - 104;
    parts.push(
      `<line x1="${fmt(lx)}" y1="${fmt(ly - 3)}" x2="${fmt(lx + 16)}" y2="${fmt(ly - 3)}" stroke="${curve.color}" stroke-width="1.3"/>`,
      `<text x="${fmt(lx + 20)}" y="${fmt(ly)}" font-size="9">${escapeXml(curve.label)}</text>`,
    );
  });
  return parts.join("\n");
}

/** Render one figure to an SVG string; throws named errors on bad inputs. */
export function renderFigure(spec: FigureSpec, dataDir: string): string {
  const tables = new Map<string, CsvTable>();
  for (const panel of spec.panels) {
    for (const series of panel.series) {
      if (!tables.has(series.csv)) {
        const path = join(dataDir, series.csv);
        if (!existsSync(path)) {
          throw new MissingCsvError(path);
        }
        tables.set(series.csv, parseCsv(readFileSync(path, "utf8"), path));
      }
    }
  }
  const columns = Math.min(2, spec.panels.length);
  const rows = Math.ceil(spec.panels.length / columns);
  const width = columns * PANEL_WIDTH;
  const height = rows * PANEL_HEIGHT + TITLE_HEIGHT;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${fmt(width / 2)}" y="19" font-size="14" text-anchor="middle">${escapeXml(spec.title)}</text>`,
  );
  spec.panels.forEach((panel, index) => {
    const originX = (index % columns) * PANEL_WIDTH;
    const originY = TITLE_HEIGHT + Math.floor(index / columns) * PANEL_HEIGHT;
    parts.push(panelSvg(panel, loadCurves(panel, tables), originX, originY));
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
