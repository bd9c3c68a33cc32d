import { join } from 'path';
import { describe, expect, it } from 'vitest';

import { renderFigure } from '../src/chart';
import { parseCsv, readCsv } from '../src/csv';
import { writePng } from '../src/png';
import { buildSnrFigure } from '../src/snr';
import { pngDimensions, tempDir, TESTDATA } from './helpers';

const SAMPLE = join(TESTDATA, 'snr_sample.csv');

describe('snr figure', () => {
  it('yields two curves per network size', () => {
    const figure = buildSnrFigure(readCsv(SAMPLE));
    expect(figure.series).toHaveLength(6); // three sizes, UL and DL each
    const labels = figure.series.map((s) => s.label);
    expect(labels).toContain('DRN1[n=1] UL');
    expect(labels).toContain('LCO1[n=120] DL');
    const sizes = new Set(labels.map((l) => l.replace(/.*\[n=(\d+)\].*/, '$1')));
    expect(sizes).toEqual(new Set(['1', '10', '120']));
  });

  it('renders the trace to a 1200x800 PNG', () => {
    const out = join(tempDir(), 'snr.png');
    writePng(out, renderFigure(buildSnrFigure(readCsv(SAMPLE))));
    expect(pngDimensions(out)).toEqual({ width: 1200, height: 800 });
  });

  it('handles a constant-SNR trace (flat lines)', () => {
    const rows = ['time_s,node_label,direction,snr_db']
      .concat([0, 1, 2, 3].map((t) => `${t}.0,DRN1,UL,25.000`))
      .join('\n');
    const figure = buildSnrFigure(parseCsv(rows, 'flat.csv'));
    expect(figure.series).toHaveLength(1);
    const out = join(tempDir(), 'flat.png');
    writePng(out, renderFigure(figure));
    expect(pngDimensions(out)).toEqual({ width: 1200, height: 800 });
  });

  it('rejects an empty trace', () => {
    expect(() => readCsv(join(TESTDATA, 'empty.csv'))).toThrow(/no data rows/);
  });

  it('diagnoses a trace with wrong columns', () => {
    const table = parseCsv('t,v\n1,2\n', 'wrong.csv');
    expect(() => buildSnrFigure(table)).toThrow(/missing column.*time_s/);
  });
});
