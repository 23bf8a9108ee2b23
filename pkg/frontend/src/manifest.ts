/**
 * Figure specifications: which CSV files feed which panels, and where the
 * rendered image goes.  The manifest file is produced alongside the CSVs.
 */

import { readFileSync } from "fs";

export interface SeriesSpec {
  csv: string;
  label: string;
  /** Optional override of the panel's y column for this curve. */
  yColumn?: string;
}

export interface PanelSpec {
  label: string;
  xColumn: string;
  yColumn: string;
  xLabel: string;
  yLabel: string;
  series: SeriesSpec[];
}

export interface FigureSpec {
  id: string;
  title: string;
  output: string;
  panels: PanelSpec[];
}

export interface Manifest {
  figures: FigureSpec[];
}

export class ManifestError extends Error {}

function requireString(value: unknown, where: string): string {
  if (typeof value !== "string" || value.length === 0) {
    throw new ManifestError(`expected a non-empty string at ${where}`);
  }
  return value;
}

export function parseManifest(text: string): Manifest {
  const raw = JSON.parse(text) as { figures?: unknown };
  if (!Array.isArray(raw.figures) || raw.figures.length === 0) {
    throw new ManifestError("manifest has no figures");
  }
  const figures = raw.figures.map((entry, i) => {
    const fig = entry as Record<string, unknown>;
    const id = requireString(fig.id, `figures[${i}].id`);
    const panels = fig.panels;
    if (!Array.isArray(panels) || panels.length === 0) {
      throw new ManifestError(`figure ${id} has no panels`);
    }
    const parsedPanels = panels.map((p, j) => {
      const panel = p as Record<string, unknown>;
      const series = panel.series;
      if (!Array.isArray(series) || series.length === 0) {
        throw new ManifestError(`figure ${id} panel ${j} has no series`);
      }
      return {
        label: requireString(panel.label, `${id}.panels[${j}].label`),
        xColumn: requireString(panel.xColumn, `${id}.panels[${j}].xColumn`),
        yColumn: requireString(panel.yColumn, `${id}.panels[${j}].yColumn`),
        xLabel: requireString(panel.xLabel, `${id}.panels[${j}].xLabel`),
        yLabel: requireString(panel.yLabel, `${id}.panels[${j}].yLabel`),
        series: series.map((s, k) => {
          const spec = s as Record<string, unknown>;
          const parsed: SeriesSpec = {
            csv: requireString(spec.csv, `${id}.panels[${j}].series[${k}].csv`),
            label: requireString(spec.label, `${id}.panels[${j}].series[${k}].label`),
          };
          if (spec.yColumn !== undefined) {
            parsed.yColumn = requireString(spec.yColumn, `${id}.panels[${j}].series[${k}].yColumn`);
          }
          return parsed;
        }),
      } satisfies PanelSpec;
    });
    return {
      id,
      title: requireString(fig.title, `figures[${i}].title`),
      output: requireString(fig.output, `figures[${i}].output`),
      panels: parsedPanels,
    } satisfies FigureSpec;
  });
  return { figures };
}

export function loadManifest(path: string): Manifest {
  return parseManifest(readFileSync(path, "utf8"));
}
