import { readFileSync } from 'fs';
import Papa from 'papaparse';

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

export function parseCsv(text: string, source: string): Table {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const columns = parsed.meta.fields ?? [];
  if (columns.length === 0 || parsed.data.length === 0) {
    throw new Error(`${source}: CSV has no data rows`);
  }
  const fatal = parsed.errors.filter((e) => e.code !== 'TooFewFields');
  if (fatal.length > 0) {
    throw new Error(`${source}: malformed CSV (${fatal[0].message}, row ${fatal[0].row})`);
  }
  return { columns, rows: parsed.data };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, 'utf-8'), path);
}

export function requireColumns(table: Table, needed: string[], source: string): void {
  const missing = needed.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new Error(
      `${source}: missing column(s) ${missing.join(', ')}; found ${table.columns.join(', ')}`,
    );
  }
}

export function toNumber(row: Record<string, string>, column: string, source: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new Error(`${source}: column ${column} holds non-numeric value ${row[column]!}`);
  }
  return value;
}
