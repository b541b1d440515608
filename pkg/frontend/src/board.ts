/**
 * Board geometry: pure layout math so it can be tested without a DOM.
 *
 * Cyclic games sit on a ring, path-like games on a line.  A move set that
 * is not a contiguous run of the line (like an end-to-end pair) gets drawn
 * as an arc instead of a straight underline.
 */

export interface Point {
  x: number;
  y: number;
}

export type Shape = "ring" | "line";

export function boardShape(gameId: string): Shape {
  return gameId.startsWith("cn:") ? "ring" : "line";
}

export function stackCenters(shape: Shape, n: number, width: number, height: number): Point[] {
  const out: Point[] = [];
  if (shape === "ring") {
    const cx = width / 2;
    const cy = height / 2;
    const r = Math.min(width, height) / 2 - 46;
    for (let i = 0; i < n; i++) {
      const angle = -Math.PI / 2 + (2 * Math.PI * i) / n;
      out.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
    }
  } else {
    const margin = 50;
    const step = n > 1 ? (width - 2 * margin) / (n - 1) : 0;
    for (let i = 0; i < n; i++) {
      out.push({ x: margin + i * step, y: height / 2 });
    }
  }
  return out;
}

function isContiguous(set: number[]): boolean {
  const sorted = [...set].sort((a, b) => a - b);
  return sorted.every((v, i) => i === 0 || v === sorted[i - 1] + 1);
}

/** Indices of move sets that need an arc when the board is a line. */
export function arcSets(shape: Shape, moveSets: number[][]): number[] {
  if (shape === "ring") return [];
  return moveSets.flatMap((set, idx) => (isContiguous(set) ? [] : [idx]));
}

export function vertexLabel(i: number): string {
  return "abcdefghijkl"[i] ?? String(i);
}
