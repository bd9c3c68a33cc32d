/**
 * Line-chart renderer: axis scaling, ticks, optional min/max bands, legend.
 * Fixed-size PNG output is handled by the caller; this module only paints.
 */

import { BLACK, Color, GRID, mix, Raster, textHeight, textWidth, WHITE } from './raster';

export interface Series {
  label: string;
  x: number[];
  y: number[];
  /** Optional band bounds, same length as x. */
  lo?: number[];
  hi?: number[];
}

export interface Figure {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

export interface RenderOptions {
  width?: number;
  height?: number;
  logY?: boolean;
}

export const PALETTE: Color[] = [
  { r: 31, g: 119, b: 180 },
  { r: 255, g: 127, b: 14 },
  { r: 44, g: 160, b: 44 },
  { r: 214, g: 39, b: 40 },
  { r: 148, g: 103, b: 189 },
  { r: 140, g: 86, b: 75 },
  { r: 227, g: 119, b: 194 },
  { r: 127, g: 127, b: 127 },
];

const MARGIN = { left: 100, right: 40, top: 60, bottom: 80 };

export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + 1;
    lo = lo - 1;
  }
  const rawStep = (hi - lo) / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= rawStep) {
      step = mult * power;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function formatTick(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 100000 || Math.abs(v) < 0.001)) {
    const exp = Math.floor(Math.log10(Math.abs(v)));
    const mantissa = v / Math.pow(10, exp);
    const m = Math.round(mantissa * 10) / 10;
    return `${m}E${exp}`;
  }
  const text = v.toFixed(3);
  return text.replace(/\.?0+$/, '');
}

function dataRange(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!Number.isFinite(lo)) throw new Error('series contain no finite values');
  return [lo, hi];
}

export function renderFigure(figure: Figure, options: RenderOptions = {}): Raster {
  const width = options.width ?? 1200;
  const height = options.height ?? 800;
  const logY = options.logY ?? false;
  if (figure.series.length === 0) throw new Error('nothing to plot: no series');

  const raster = new Raster(width, height);
  const plot = {
    x: MARGIN.left,
    y: MARGIN.top,
    w: width - MARGIN.left - MARGIN.right,
    h: height - MARGIN.top - MARGIN.bottom,
  };

  const xs = figure.series.flatMap((s) => s.x);
  const ys = figure.series.flatMap((s) => [...s.y, ...(s.lo ?? []), ...(s.hi ?? [])]);
  let [xLo, xHi] = dataRange(xs);
  let [yLo, yHi] = dataRange(logY ? ys.filter((v) => v > 0) : ys);
  if (xLo === xHi) {
    xLo -= 1;
    xHi += 1;
  }

  const ty = (v: number) => (logY ? Math.log10(Math.max(v, 1e-12)) : v);
  let tLo: number;
  let tHi: number;
  let yTicks: number[];
  if (logY) {
    tLo = Math.floor(ty(yLo));
    tHi = Math.ceil(ty(yHi));
    if (tLo === tHi) tHi += 1;
    yTicks = [];
    for (let d = tLo; d <= tHi; d++) yTicks.push(Math.pow(10, d));
  } else {
    yTicks = niceTicks(yLo, yHi);
    const pad = (yHi - yLo || 1) * 0.05;
    tLo = Math.min(yLo - pad, yTicks[0]);
    tHi = Math.max(yHi + pad, yTicks[yTicks.length - 1]);
  }
  const xTicks = niceTicks(xLo, xHi);

  const toPx = (x: number) => plot.x + ((x - xLo) / (xHi - xLo)) * plot.w;
  const toPy = (y: number) =>
    plot.y + plot.h - ((ty(y) - tLo) / (tHi - tLo || 1)) * plot.h;

  // Grid and ticks.
  for (const tick of xTicks) {
    const px = Math.round(toPx(tick));
    raster.vline(px, plot.y, plot.y + plot.h, GRID);
    const label = formatTick(tick);
    raster.text(px - textWidth(label) / 2, plot.y + plot.h + 10, label, BLACK);
  }
  for (const tick of yTicks) {
    const py = Math.round(toPy(tick));
    raster.hline(py, plot.x, plot.x + plot.w, GRID);
    const label = formatTick(tick);
    raster.text(plot.x - textWidth(label) - 8, py - textHeight() / 2, label, BLACK);
  }

  // Bands under the lines.
  figure.series.forEach((series, index) => {
    if (!series.lo || !series.hi) return;
    const band = mix(PALETTE[index % PALETTE.length], WHITE, 0.22);
    for (let i = 0; i + 1 < series.x.length; i++) {
      const x0 = Math.round(toPx(series.x[i]));
      const x1 = Math.round(toPx(series.x[i + 1]));
      for (let px = x0; px <= x1; px++) {
        const f = x1 === x0 ? 0 : (px - x0) / (x1 - x0);
        const lo = series.lo[i] + f * (series.lo[i + 1] - series.lo[i]);
        const hi = series.hi[i] + f * (series.hi[i + 1] - series.hi[i]);
        if (logY && (lo <= 0 || hi <= 0)) continue;
        raster.vline(px, Math.round(toPy(lo)), Math.round(toPy(hi)), band);
      }
    }
  });

  // Series lines with small square markers.
  figure.series.forEach((series, index) => {
    const color = PALETTE[index % PALETTE.length];
    for (let i = 0; i + 1 < series.x.length; i++) {
      if (logY && (series.y[i] <= 0 || series.y[i + 1] <= 0)) continue;
      raster.line(
        toPx(series.x[i]),
        toPy(series.y[i]),
        toPx(series.x[i + 1]),
        toPy(series.y[i + 1]),
        color,
        2,
      );
    }
    for (let i = 0; i < series.x.length; i++) {
      if (logY && series.y[i] <= 0) continue;
      raster.fillRect(
        Math.round(toPx(series.x[i])) - 2,
        Math.round(toPy(series.y[i])) - 2,
        5,
        5,
        color,
      );
    }
  });

  // Frame on top of the data.
  raster.hline(plot.y, plot.x, plot.x + plot.w, BLACK);
  raster.hline(plot.y + plot.h, plot.x, plot.x + plot.w, BLACK);
  raster.vline(plot.x, plot.y, plot.y + plot.h, BLACK);
  raster.vline(plot.x + plot.w, plot.y, plot.y + plot.h, BLACK);

  // Title and axis labels.
  raster.text(
    Math.round(width / 2 - textWidth(figure.title) / 2),
    Math.round(MARGIN.top / 2 - textHeight() / 2),
    figure.title,
    BLACK,
  );
  raster.text(
    Math.round(plot.x + plot.w / 2 - textWidth(figure.xLabel) / 2),
    plot.y + plot.h + 40,
    figure.xLabel,
    BLACK,
  );
  raster.textVertical(
    18,
    Math.round(plot.y + plot.h / 2 + textWidth(figure.yLabel) / 2),
    figure.yLabel,
    BLACK,
  );

  drawLegend(raster, figure, plot);
  return raster;
}

function drawLegend(
  raster: Raster,
  figure: Figure,
  plot: { x: number; y: number; w: number; h: number },
): void {
  const pad = 10;
  const swatch = 24;
  const rowH = textHeight() + 8;
  const textW = Math.max(...figure.series.map((s) => textWidth(s.label)));
  const boxW = pad * 2 + swatch + 8 + textW;
  const boxH = pad * 2 + rowH * figure.series.length - 8;
  const boxX = plot.x + plot.w - boxW - 12;
  const boxY = plot.y + 12;
  raster.fillRect(boxX, boxY, boxW, boxH, WHITE);
  raster.hline(boxY, boxX, boxX + boxW, BLACK);
  raster.hline(boxY + boxH, boxX, boxX + boxW, BLACK);
  raster.vline(boxX, boxY, boxY + boxH, BLACK);
  raster.vline(boxX + boxW, boxY, boxY + boxH, BLACK);
  figure.series.forEach((series, index) => {
    const color = PALETTE[index % PALETTE.length];
    const y = boxY + pad + index * rowH;
    raster.fillRect(boxX + pad, y + textHeight() / 2 - 1, swatch, 3, color);
    raster.text(boxX + pad + swatch + 8, y, series.label, BLACK);
  });
}
