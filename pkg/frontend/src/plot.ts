/** Pure plotting geometry: panel layout, pixel scales, and contour paths.
 *
 * Everything here maps already-served values to screen coordinates; the
 * only numeric transformation is the affine pixel scale (and its inverse
 * for click handling).
 */
import type { OutcomeBox } from "./api.js";
import type { NormKind } from "./state.js";

export interface Panel {
  xIndex: number;
  yIndex: number;
  label: string;
}

/** One native panel for k <= 2, the three coordinate pairs for k = 3. */
export function panelsFor(k: number): Panel[] {
  if (k <= 1) {
    return [{ xIndex: 0, yIndex: 0, label: "outcome 1" }];
  }
  if (k === 2) {
    return [{ xIndex: 0, yIndex: 1, label: "outcomes 1, 2" }];
  }
  const panels: Panel[] = [];
  for (let i = 0; i < k; i++) {
    for (let j = i + 1; j < k; j++) {
      panels.push({
        xIndex: i,
        yIndex: j,
        label: `outcomes ${i + 1}, ${j + 1}`,
      });
    }
  }
  return panels;
}

export interface Scale {
  toPx(x: number, y: number): [number, number];
  fromPx(px: number, py: number): [number, number];
}

/** Affine map from outcome coordinates to pixels, y flipped, with margin. */
export function makeScale(
  box: OutcomeBox,
  panel: Panel,
  width: number,
  height: number,
  margin = 24,
): Scale {
  const pad = 1;
  const xLo = (box.lower[panel.xIndex] ?? 0) - pad;
  const xHi = (box.upper[panel.xIndex] ?? 0) + pad;
  const yLo = (box.lower[panel.yIndex] ?? 0) - pad;
  const yHi = (box.upper[panel.yIndex] ?? 0) + pad;
  const sx = (width - 2 * margin) / (xHi - xLo);
  const sy = (height - 2 * margin) / (yHi - yLo);
  return {
    toPx(x, y) {
      return [margin + (x - xLo) * sx, height - margin - (y - yLo) * sy];
    },
    fromPx(px, py) {
      return [xLo + (px - margin) / sx, yLo + (height - margin - py) / sy];
    },
  };
}

/** Numeric value of a served rational, for geometry only. */
export function fractionValue(value: string): number {
  const slash = value.indexOf("/");
  if (slash < 0) {
    return Number(value);
  }
  return Number(value.slice(0, slash)) / Number(value.slice(slash + 1));
}

/** SVG path for the unit-ball contour scaled to gauge value lambda around
 * the reference point: the level set the nearest point sits on. */
export function contourPath(
  kind: NormKind,
  center: [number, number],
  lambda: number,
  scale: Scale,
): string {
  const [cx, cy] = center;
  if (kind === "euclid") {
    const [px, py] = scale.toPx(cx, cy);
    const [qx] = scale.toPx(cx + lambda, cy);
    const r = Math.abs(qx - px);
    return (
      `M ${px - r} ${py} ` +
      `A ${r} ${r} 0 1 0 ${px + r} ${py} ` +
      `A ${r} ${r} 0 1 0 ${px - r} ${py} Z`
    );
  }
  const corners: [number, number][] =
    kind === "linf"
      ? [
          [cx - lambda, cy - lambda],
          [cx + lambda, cy - lambda],
          [cx + lambda, cy + lambda],
          [cx - lambda, cy + lambda],
        ]
      : [
          [cx - lambda, cy],
          [cx, cy - lambda],
          [cx + lambda, cy],
          [cx, cy + lambda],
        ];
  const px = corners.map(([x, y]) => scale.toPx(x, y));
  return (
    px.map(([x, y], i) => `${i === 0 ? "M" : "L"} ${x} ${y}`).join(" ") + " Z"
  );
}
