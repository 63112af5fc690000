import { inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";

import { crc32, encodePng, PNG_SIGNATURE } from "../src/png.js";
import { Raster, colormap } from "../src/raster.js";

interface Chunk {
  type: string;
  data: Buffer;
}

function readChunks(png: Buffer): Chunk[] {
  expect(png.subarray(0, 8).equals(PNG_SIGNATURE)).toBe(true);
  const chunks: Chunk[] = [];
  let offset = 8;
  while (offset < png.length) {
    const length = png.readUInt32BE(offset);
    const type = png.subarray(offset + 4, offset + 8).toString("latin1");
    const data = png.subarray(offset + 8, offset + 8 + length);
    const crc = png.readUInt32BE(offset + 8 + length);
    expect(crc).toBe(crc32(png.subarray(offset + 4, offset + 8 + length)));
    chunks.push({ type, data });
    offset += 12 + length;
  }
  return chunks;
}

describe("encodePng", () => {
  it("produces a structurally valid PNG that round-trips pixels", () => {
    const r = new Raster(7, 5, [1, 2, 3]);
    r.set(2, 1, [200, 100, 50]);
    r.set(6, 4, [9, 8, 7]);
    const png = encodePng(r.width, r.height, r.data);
    const chunks = readChunks(png);
    expect(chunks.map((c) => c.type)).toEqual(["IHDR", "IDAT", "IEND"]);
    const ihdr = chunks[0].data;
    expect(ihdr.readUInt32BE(0)).toBe(7);
    expect(ihdr.readUInt32BE(4)).toBe(5);
    expect(ihdr[8]).toBe(8); // bit depth
    expect(ihdr[9]).toBe(2); // RGB
    const raw = inflateSync(chunks[1].data);
    expect(raw.length).toBe(5 * (1 + 7 * 3));
    for (let y = 0; y < 5; y++) {
      expect(raw[y * (1 + 21)]).toBe(0); // filter byte
    }
    const at = (x: number, y: number) => {
      const base = y * (1 + 21) + 1 + x * 3;
      return [raw[base], raw[base + 1], raw[base + 2]];
    };
    expect(at(0, 0)).toEqual([1, 2, 3]);
    expect(at(2, 1)).toEqual([200, 100, 50]);
    expect(at(6, 4)).toEqual([9, 8, 7]);
  });

  it("rejects mis-sized buffers", () => {
    expect(() => encodePng(4, 4, new Uint8ClampedArray(5))).toThrow(/length/);
  });
});

describe("raster", () => {
  it("clips out-of-bounds writes", () => {
    const r = new Raster(4, 4);
    r.set(-1, 0, [0, 0, 0]);
    r.set(0, 99, [0, 0, 0]);
    expect(r.get(0, 0)).toEqual([255, 255, 255]);
  });

  it("draws lines between endpoints", () => {
    const r = new Raster(10, 10);
    r.line(0, 0, 9, 9, [0, 0, 0]);
    expect(r.get(0, 0)).toEqual([0, 0, 0]);
    expect(r.get(5, 5)).toEqual([0, 0, 0]);
    expect(r.get(9, 9)).toEqual([0, 0, 0]);
  });

  it("renders text pixels", () => {
    const r = new Raster(20, 12);
    r.text(1, 1, "1");
    let dark = 0;
    for (let y = 0; y < 12; y++) {
      for (let x = 0; x < 20; x++) {
        if (r.get(x, y)[0] < 128) dark++;
      }
    }
    expect(dark).toBeGreaterThan(5);
  });
});

describe("colormap", () => {
  it("is monotone-ish and clamped", () => {
    expect(colormap(-1)).toEqual(colormap(0));
    expect(colormap(2)).toEqual(colormap(1));
    expect(colormap(0)).not.toEqual(colormap(1));
  });
});
