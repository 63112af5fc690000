/** Minimal software raster: RGB pixel buffer with lines, rects and text. */
import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font.js";

export type RGB = readonly [number, number, number];

export const WHITE: RGB = [255, 255, 255];
export const BLACK: RGB = [20, 20, 20];
export const GRAY: RGB = [150, 150, 150];
export const PHI_COLOR: RGB = [31, 119, 180];
export const PSI_COLOR: RGB = [214, 39, 40];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8ClampedArray;

  constructor(width: number, height: number, background: RGB = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8ClampedArray(width * height * 3);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, rgb: RGB): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
  }

  get(x: number, y: number): RGB {
    const i = (y * this.width + x) * 3;
    return [this.data[i], this.data[i + 1], this.data[i + 2]];
  }

  fillRect(x0: number, y0: number, w: number, h: number, rgb: RGB): void {
    const xa = Math.max(0, Math.round(x0));
    const ya = Math.max(0, Math.round(y0));
    const xb = Math.min(this.width, Math.round(x0 + w));
    const yb = Math.min(this.height, Math.round(y0 + h));
    for (let y = ya; y < yb; y++) {
      for (let x = xa; x < xb; x++) {
        this.set(x, y, rgb);
      }
    }
  }

  /** Bresenham segment, optionally thickened by one pixel. */
  line(x0: number, y0: number, x1: number, y1: number, rgb: RGB, thick = 1): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.set(xa, ya, rgb);
      if (thick > 1) {
        this.set(xa + 1, ya, rgb);
        this.set(xa, ya + 1, rgb);
      }
      if (xa === xb && ya === yb) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        xa += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }

  /** Draw text with the built-in 5x7 font (uppercased). */
  text(x: number, y: number, s: string, rgb: RGB = BLACK, scale = 1): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const char of s) {
      const glyph = glyphFor(char);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if ((glyph[row] >> (GLYPH_WIDTH - 1 - col)) & 1) {
            this.fillRect(cx + col * scale, cy + row * scale, scale, scale, rgb);
          }
        }
      }
      cx += (GLYPH_WIDTH + 1) * scale;
    }
  }
}

/** Plasma-like five-stop colormap over [0, 1] (clamped). */
export function colormap(v: number): RGB {
  const stops: RGB[] = [
    [13, 8, 135],
    [126, 3, 168],
    [204, 71, 120],
    [248, 149, 64],
    [240, 249, 33],
  ];
  const t = Math.min(1, Math.max(0, v)) * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(t));
  const f = t - i;
  const a = stops[i];
  const b = stops[i + 1];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}
