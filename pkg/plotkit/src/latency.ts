/**
 * Latency-versus-pairs figure from the sweep summary CSV: one series per
 * (backhaul, payload) with the pooled min/max band around the mean.
 */

import { Figure, Series } from './chart';
import { requireColumns, Table, toNumber } from './csv';

export interface LatencySelectors {
  backhaul?: string;
  payload?: number;
}

const COLUMNS = ['backhaul', 'n_pairs', 'payload_bytes', 'mean_td_ms', 'min_td_ms', 'max_td_ms'];

interface Point {
  pairs: number;
  mean: number;
  lo: number;
  hi: number;
}

export function buildLatencyFigure(
  table: Table,
  selectors: LatencySelectors = {},
  source = 'summary.csv',
): Figure {
  requireColumns(table, COLUMNS, source);

  const groups = new Map<string, Point[]>();
  const available = new Set<string>();
  for (const row of table.rows) {
    const backhaul = row.backhaul;
    const payload = toNumber(row, 'payload_bytes', source);
    available.add(`${backhaul}/${payload}`);
    if (selectors.backhaul && backhaul !== selectors.backhaul) continue;
    if (selectors.payload !== undefined && payload !== selectors.payload) continue;
    const key = `${backhaul} ${payload} B`;
    const points = groups.get(key) ?? [];
    points.push({
      pairs: toNumber(row, 'n_pairs', source),
      mean: toNumber(row, 'mean_td_ms', source),
      lo: toNumber(row, 'min_td_ms', source),
      hi: toNumber(row, 'max_td_ms', source),
    });
    groups.set(key, points);
  }

  if (groups.size === 0) {
    const wanted = [
      selectors.backhaul ?? 'any backhaul',
      selectors.payload !== undefined ? `${selectors.payload} B` : 'any payload',
    ].join(', ');
    throw new Error(
      `${source}: no series match (${wanted}); available: ${[...available].sort().join(', ')}`,
    );
  }

  const series: Series[] = [...groups.entries()].map(([label, points]) => {
    points.sort((a, b) => a.pairs - b.pairs);
    return {
      label,
      x: points.map((p) => p.pairs),
      y: points.map((p) => p.mean),
      lo: points.map((p) => p.lo),
      hi: points.map((p) => p.hi),
    };
  });
  series.sort((a, b) => a.label.localeCompare(b.label));

  return {
    title: 'MEAN END-TO-END LATENCY VS DRN-LCO PAIRS',
    xLabel: 'DRN-LCO PAIRS',
    yLabel: 'LATENCY (MS)',
    series,
  };
}
