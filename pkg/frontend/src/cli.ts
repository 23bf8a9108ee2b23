/**
 * Batch renderer: reads the manifest written next to the CSV files and
 * emits one SVG per figure.
 *
 *   node dist/cli.js --manifest out/figure-data/figures.manifest.json --out out/figures
 *   node dist/cli.js --manifest ... --out ... --only fig3
 */

import { mkdirSync, writeFileSync } from "fs";
import { dirname, join, resolve } from "path";
import { fileURLToPath } from "url";

import { loadManifest } from "./manifest.js";
import { renderFigure } from "./render.js";

function parseArgs(argv: string[]): { manifest: string; out: string; only?: string } {
  let manifest = "";
  let out = "";
  let only: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--manifest") manifest = argv[++i] ?? "";
    else if (arg === "--out") out = argv[++i] ?? "";
    else if (arg === "--only") only = argv[++i];
    else throw new Error(`unknown argument: ${arg}`);
  }
  if (!manifest || !out) {
    throw new Error("usage: cli --manifest <figures.manifest.json> --out <dir> [--only figN]");
  }
  return { manifest, out, only };
}

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs(argv);
  } catch (error) {
    console.error(String(error instanceof Error ? error.message : error));
    return 2;
  }
  try {
    const manifest = loadManifest(args.manifest);
    const dataDir = dirname(args.manifest);
    const figures = manifest.figures.filter((f) => !args.only || f.id === args.only);
    if (figures.length === 0) {
      console.error(`no figure matches --only ${args.only}`);
      return 2;
    }
    mkdirSync(args.out, { recursive: true });
    for (const figure of figures) {
      const svg = renderFigure(figure, dataDir);
      const target = join(args.out, figure.output);
      writeFileSync(target, svg, "utf8");
      console.log(`rendered ${figure.id} -> ${target}`);
    }
    return 0;
  } catch (error) {
    console.error(String(error instanceof Error ? error.message : error));
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  fileURLToPath(import.meta.url) === resolve(process.argv[1]);

if (invokedDirectly) {
  process.exitCode = main(process.argv.slice(2));
}
