/**
 * SNR-versus-time figure from the trace CSV: one curve per traced node and
 * direction (uplink of the first DRN, downlink of the first LCO), grouped by
 * network size when several sweeps share the file.
 */

import { Figure, Series } from './chart';
import { requireColumns, Table, toNumber } from './csv';

const COLUMNS = ['time_s', 'node_label', 'direction', 'snr_db'];

export function buildSnrFigure(table: Table, source = 'snr_trace.csv'): Figure {
  requireColumns(table, COLUMNS, source);

  const groups = new Map<string, { x: number[]; y: number[] }>();
  for (const row of table.rows) {
    const key = `${row.node_label} ${row.direction}`;
    const bucket = groups.get(key) ?? { x: [], y: [] };
    bucket.x.push(toNumber(row, 'time_s', source));
    bucket.y.push(toNumber(row, 'snr_db', source));
    groups.set(key, bucket);
  }

  const series: Series[] = [...groups.entries()].map(([label, data]) => ({
    label,
    x: data.x,
    y: data.y,
  }));
  series.sort((a, b) => a.label.localeCompare(b.label, undefined, { numeric: true }));

  return {
    title: 'SNR DURING TRANSMISSIONS OVER TIME',
    xLabel: 'TIME (S)',
    yLabel: 'SNR (DB)',
    series,
  };
}
