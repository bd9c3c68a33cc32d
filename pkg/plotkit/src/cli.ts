#!/usr/bin/env node
/**
 * plotkit plot --kind latency|snr --in <csv> --out <png> [--logy]
 *              [--backhaul lte|mmwave] [--payload <bytes>]
 */

import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { renderFigure } from './chart';
import { readCsv } from './csv';
import { buildLatencyFigure } from './latency';
import { writePng } from './png';
import { buildSnrFigure } from './snr';

export interface PlotArgs {
  kind: 'latency' | 'snr';
  in: string;
  out: string;
  logy?: boolean;
  backhaul?: string;
  payload?: number;
}

export function runPlot(args: PlotArgs): string {
  if (args.kind !== 'latency' && args.kind !== 'snr') {
    throw new Error(`unknown figure kind ${String(args.kind)}; expected latency or snr`);
  }
  const table = readCsv(args.in);
  const figure =
    args.kind === 'latency'
      ? buildLatencyFigure(table, { backhaul: args.backhaul, payload: args.payload }, args.in)
      : buildSnrFigure(table, args.in);
  const raster = renderFigure(figure, { width: 1200, height: 800, logY: args.logy ?? false });
  writePng(args.out, raster);
  return args.out;
}

export function main(argv: string[]): number {
  let failed = false;
  yargs(argv)
    .command(
      'plot',
      'render a figure from a harness CSV',
      (y) =>
        y
          .option('kind', { choices: ['latency', 'snr'] as const, demandOption: true })
          .option('in', { type: 'string', demandOption: true, describe: 'input CSV' })
          .option('out', { type: 'string', demandOption: true, describe: 'output PNG' })
          .option('logy', { type: 'boolean', default: false, describe: 'log-scale y axis' })
          .option('backhaul', { type: 'string', choices: ['lte', 'mmwave'] })
          .option('payload', { type: 'number', describe: 'payload bytes series filter' }),
      (args) => {
        try {
          const out = runPlot(args as PlotArgs);
          process.stdout.write(`${out}\n`);
        } catch (error) {
          process.stderr.write(`error: ${(error as Error).message}\n`);
          failed = true;
        }
      },
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg) => {
      process.stderr.write(`error: ${msg}\n`);
      failed = true;
    })
    .parseSync();
  return failed ? 1 : 0;
}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
