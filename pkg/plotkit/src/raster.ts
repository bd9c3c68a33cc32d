/**
 * Minimal RGBA raster with line, rectangle and bitmap-text primitives; just
 * enough canvas for batch chart rendering without native dependencies.
 */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from './font';

export interface Color {
  r: number;
  g: number;
  b: number;
}

export const BLACK: Color = { r: 0, g: 0, b: 0 };
export const WHITE: Color = { r: 255, g: 255, b: 255 };
export const GRID: Color = { r: 225, g: 225, b: 225 };

export function mix(color: Color, into: Color, weight: number): Color {
  return {
    r: Math.round(color.r * weight + into.r * (1 - weight)),
    g: Math.round(color.g * weight + into.g * (1 - weight)),
    b: Math.round(color.b * weight + into.b * (1 - weight)),
  };
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Buffer;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.data = Buffer.alloc(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const at = (y * this.width + x) * 4;
    this.data[at] = color.r;
    this.data[at + 1] = color.g;
    this.data[at + 2] = color.b;
    this.data[at + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    for (let yy = y; yy < y + h; yy++) {
      for (let xx = x; xx < x + w; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  vline(x: number, y0: number, y1: number, color: Color): void {
    const [a, b] = y0 <= y1 ? [y0, y1] : [y1, y0];
    for (let y = a; y <= b; y++) this.set(x, y, color);
  }

  hline(y: number, x0: number, x1: number, color: Color): void {
    const [a, b] = x0 <= x1 ? [x0, x1] : [x1, x0];
    for (let x = a; x <= b; x++) this.set(x, y, color);
  }

  /** Bresenham segment; thickness spreads perpendicular to the major axis. */
  line(x0: number, y0: number, x1: number, y1: number, color: Color, thickness = 1): void {
    let [cx, cy] = [Math.round(x0), Math.round(y0)];
    const [tx, ty] = [Math.round(x1), Math.round(y1)];
    const dx = Math.abs(tx - cx);
    const dy = -Math.abs(ty - cy);
    const sx = cx < tx ? 1 : -1;
    const sy = cy < ty ? 1 : -1;
    let err = dx + dy;
    const steep = -dy > dx;
    for (;;) {
      for (let t = 0; t < thickness; t++) {
        const off = t - Math.floor(thickness / 2);
        if (steep) this.set(cx + off, cy, color);
        else this.set(cx, cy + off, color);
      }
      if (cx === tx && cy === ty) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        cx += sx;
      }
      if (e2 <= dx) {
        err += dx;
        cy += sy;
      }
    }
  }

  /** Draw text with the 5x7 font; scale multiplies the dot size. */
  text(x: number, y: number, message: string, color: Color, scale = 2): void {
    let penX = x;
    for (const char of message) {
      const glyph = glyphFor(char);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (glyph[row][col] === '#') {
            this.fillRect(penX + col * scale, y + row * scale, scale, scale, color);
          }
        }
      }
      penX += (GLYPH_WIDTH + 1) * scale;
    }
  }

  /** Text rotated 90 degrees counterclockwise (for the y-axis label). */
  textVertical(x: number, y: number, message: string, color: Color, scale = 2): void {
    let penY = y;
    for (const char of message) {
      const glyph = glyphFor(char);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (glyph[row][col] === '#') {
            this.fillRect(x + row * scale, penY - col * scale, scale, scale, color);
          }
        }
      }
      penY -= (GLYPH_WIDTH + 1) * scale;
    }
  }
}

export function textWidth(message: string, scale = 2): number {
  return message.length * (GLYPH_WIDTH + 1) * scale;
}

export function textHeight(scale = 2): number {
  return GLYPH_HEIGHT * scale;
}
