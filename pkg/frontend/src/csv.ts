/**
 * Reader for the simulator's CSV contract: `#`-prefixed comment lines,
 * a header row, comma-separated data rows.
 */

export class CsvError extends Error {}

export class EmptyCsvError extends CsvError {
  constructor(source: string) {
    super(`empty CSV: ${source} has no data rows`);
  }
}

export class MissingColumnError extends CsvError {
  constructor(source: string, column: string, available: string[]) {
    super(`missing column '${column}' in ${source} (has: ${available.join(", ")})`);
  }
}

export interface CsvTable {
  source: string;
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string, source = "<inline>"): CsvTable {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0 && !line.startsWith("#"));
  if (lines.length === 0) {
    throw new EmptyCsvError(source);
  }
  const headerLine = lines[0]!;
  const header = headerLine.split(",").map((cell) => cell.trim());
  const rows = lines.slice(1).map((line) => line.split(",").map((cell) => cell.trim()));
  if (rows.length === 0) {
    throw new EmptyCsvError(source);
  }
  return { source, header, rows };
}

/** Numeric values of one column; throws a named error if absent. */
export function numericColumn(table: CsvTable, column: string): number[] {
  const index = table.header.indexOf(column);
  if (index < 0) {
    throw new MissingColumnError(table.source, column, table.header);
  }
  return table.rows.map((row) => Number(row[index] ?? "nan"));
}
