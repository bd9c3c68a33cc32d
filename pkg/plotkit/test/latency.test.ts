import { existsSync, statSync } from 'fs';
import { join } from 'path';
import { describe, expect, it } from 'vitest';

import { renderFigure } from '../src/chart';
import { parseCsv, readCsv } from '../src/csv';
import { buildLatencyFigure } from '../src/latency';
import { writePng } from '../src/png';
import { pngDimensions, tempDir, TESTDATA } from './helpers';

const SAMPLE = join(TESTDATA, 'summary_sample.csv');

describe('latency figure', () => {
  it('groups the three LTE payload series', () => {
    const figure = buildLatencyFigure(readCsv(SAMPLE), { backhaul: 'lte' });
    expect(figure.series.map((s) => s.label)).toEqual([
      'lte 1024 B',
      'lte 512 B',
      'lte 5120 B',
    ]);
    for (const series of figure.series) {
      expect(series.x).toEqual([1, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120]);
      expect(series.lo!.length).toBe(series.x.length);
      const sortedX = [...series.x].sort((a, b) => a - b);
      expect(series.x).toEqual(sortedX);
    }
  });

  it('selects a single mmWave series', () => {
    const figure = buildLatencyFigure(readCsv(SAMPLE), { backhaul: 'mmwave', payload: 1024 });
    expect(figure.series).toHaveLength(1);
    expect(figure.series[0].label).toBe('mmwave 1024 B');
  });

  it('renders a 1200x800 PNG', () => {
    const out = join(tempDir(), 'lte.png');
    const figure = buildLatencyFigure(readCsv(SAMPLE), { backhaul: 'lte' });
    writePng(out, renderFigure(figure));
    expect(existsSync(out)).toBe(true);
    expect(pngDimensions(out)).toEqual({ width: 1200, height: 800 });
  });

  it('renders with a log-scale y axis', () => {
    const out = join(tempDir(), 'lte-log.png');
    const figure = buildLatencyFigure(readCsv(SAMPLE), { backhaul: 'lte' });
    writePng(out, renderFigure(figure, { logY: true }));
    expect(pngDimensions(out)).toEqual({ width: 1200, height: 800 });
  });

  it('re-rendering overwrites idempotently', () => {
    const out = join(tempDir(), 'again.png');
    const figure = buildLatencyFigure(readCsv(SAMPLE), { backhaul: 'mmwave' });
    writePng(out, renderFigure(figure));
    const first = statSync(out).size;
    writePng(out, renderFigure(figure));
    expect(statSync(out).size).toBe(first);
  });

  it('diagnoses a selector that matches nothing, listing what exists', () => {
    expect(() => buildLatencyFigure(readCsv(SAMPLE), { payload: 999 })).toThrow(
      /no series match.*available:.*lte\/1024.*mmwave\/1024/s,
    );
  });

  it('rejects an empty CSV', () => {
    expect(() => readCsv(join(TESTDATA, 'empty.csv'))).toThrow(/no data rows/);
    expect(() => readCsv(join(TESTDATA, 'zero_byte.csv'))).toThrow(/no data rows/);
  });

  it('diagnoses missing columns', () => {
    const table = parseCsv('a,b\n1,2\n', 'bad.csv');
    expect(() => buildLatencyFigure(table)).toThrow(/missing column.*mean_td_ms/);
  });
});
