import { describe, expect, it } from "vitest";

import type { OutcomeBox } from "../src/api.js";
import {
  contourPath,
  fractionValue,
  makeScale,
  panelsFor,
} from "../src/plot.js";

const BOX: OutcomeBox = { lower: [0, 0], upper: [3, 3] };

describe("panel layout", () => {
  it("uses a single panel through dimension 2", () => {
    expect(panelsFor(1)).toHaveLength(1);
    expect(panelsFor(2)).toEqual([
      { xIndex: 0, yIndex: 1, label: "outcomes 1, 2" },
    ]);
  });

  it("shows all coordinate pairs in dimension 3", () => {
    const panels = panelsFor(3);
    expect(panels.map((p) => [p.xIndex, p.yIndex])).toEqual([
      [0, 1],
      [0, 2],
      [1, 2],
    ]);
  });
});

describe("pixel scale", () => {
  const panel = { xIndex: 0, yIndex: 1, label: "" };
  const scale = makeScale(BOX, panel, 360, 360);

  it("flips the vertical axis", () => {
    const [, lowY] = scale.toPx(0, 0);
    const [, highY] = scale.toPx(0, 3);
    expect(lowY).toBeGreaterThan(highY);
  });

  it("round-trips through the inverse map", () => {
    for (const [x, y] of [
      [0, 0],
      [3, 3],
      [1, 2],
      [-1, 4],
    ]) {
      const [px, py] = scale.toPx(x!, y!);
      const [bx, by] = scale.fromPx(px, py);
      expect(bx).toBeCloseTo(x!, 9);
      expect(by).toBeCloseTo(y!, 9);
    }
  });

  it("keeps the padded box inside the margins", () => {
    const [left] = scale.toPx(-1, 0);
    const [right] = scale.toPx(4, 0);
    expect(left).toBe(24);
    expect(right).toBe(336);
  });
});

describe("rational display values", () => {
  it("divides served fractions", () => {
    expect(fractionValue("2/1")).toBe(2);
    expect(fractionValue("20/7")).toBeCloseTo(20 / 7, 12);
    expect(fractionValue("3")).toBe(3);
  });
});

describe("contours", () => {
  const panel = { xIndex: 0, yIndex: 1, label: "" };
  const scale = makeScale(BOX, panel, 360, 360);

  function vertices(path: string): [number, number][] {
    const out: [number, number][] = [];
    for (const m of path.matchAll(/[ML] (-?[\d.]+) (-?[\d.]+)/g)) {
      out.push([Number(m[1]), Number(m[2])]);
    }
    return out;
  }

  it("draws the box contour through its four corners", () => {
    const path = contourPath("linf", [0, 0], 2, scale);
    const got = vertices(path);
    const want: [number, number][] = [
      scale.toPx(-2, -2),
      scale.toPx(2, -2),
      scale.toPx(2, 2),
      scale.toPx(-2, 2),
    ];
    expect(got).toHaveLength(4);
    for (let i = 0; i < 4; i++) {
      expect(got[i]![0]).toBeCloseTo(want[i]![0], 6);
      expect(got[i]![1]).toBeCloseTo(want[i]![1], 6);
    }
    expect(path.endsWith("Z")).toBe(true);
  });

  it("draws the diamond contour on the axes", () => {
    const path = contourPath("l1", [1, 1], 3, scale);
    const got = vertices(path);
    const want: [number, number][] = [
      scale.toPx(-2, 1),
      scale.toPx(1, -2),
      scale.toPx(4, 1),
      scale.toPx(1, 4),
    ];
    for (let i = 0; i < 4; i++) {
      expect(got[i]![0]).toBeCloseTo(want[i]![0], 6);
      expect(got[i]![1]).toBeCloseTo(want[i]![1], 6);
    }
  });

  it("draws the circle with the pixel radius of the gauge value", () => {
    const path = contourPath("euclid", [0, 0], 2, scale);
    expect(path).toContain("A ");
    const [cxPx] = scale.toPx(0, 0);
    const [edgePx] = scale.toPx(2, 0);
    const r = Math.abs(edgePx - cxPx);
    expect(path).toContain(`A ${r} ${r}`);
  });
});
