/**
 * SVG board rendering.  All real rules live server-side; this file only
 * turns the session state into elements and wires clicks back to it.
 */

import { arcSets, boardShape, stackCenters, vertexLabel } from "./board.js";

const SVG_NS = "http://www.w3.org/2000/svg";
export const BOARD_W = 620;
export const BOARD_H = 360;

export interface BoardCallbacks {
  onAdjust(stack: number, delta: number): void;
}

export interface BoardState {
  gameId: string;
  moveSets: number[][];
  position: number[];
  removals: number[];
  hint: number[] | null;
  highlightSet: number[] | null;
  interactive: boolean;
}

function el(name: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

export function renderBoard(
  svg: SVGSVGElement,
  state: BoardState,
  callbacks: BoardCallbacks,
): void {
  svg.innerHTML = "";
  const shape = boardShape(state.gameId);
  const n = state.position.length;
  const centers = stackCenters(shape, n, BOARD_W, BOARD_H);

  if (shape === "ring") {
    const ring = el("circle", {
      cx: BOARD_W / 2,
      cy: BOARD_H / 2,
      r: Math.min(BOARD_W, BOARD_H) / 2 - 46,
      class: "ring-outline",
    });
    svg.appendChild(ring);
  } else {
    const first = centers[0];
    const last = centers[n - 1];
    svg.appendChild(
      el("line", { x1: first.x, y1: first.y, x2: last.x, y2: last.y, class: "path-outline" }),
    );
    for (const idx of arcSets(shape, state.moveSets)) {
      const set = state.moveSets[idx];
      const a = centers[Math.min(...set)];
      const b = centers[Math.max(...set)];
      const arc = el("path", {
        d: `M ${a.x} ${a.y} Q ${(a.x + b.x) / 2} ${a.y - 110} ${b.x} ${b.y}`,
        class: "arc-outline",
      });
      svg.appendChild(arc);
    }
  }

  if (state.highlightSet) {
    for (const v of state.highlightSet) {
      const c = centers[v];
      svg.appendChild(el("circle", { cx: c.x, cy: c.y, r: 30, class: "set-glow" }));
    }
  }

  state.position.forEach((height, i) => {
    const c = centers[i];
    const group = el("g", { class: "stack" });
    const hinted = state.hint !== null && state.hint[i] > 0;
    const removing = state.removals[i] > 0;
    group.appendChild(
      el("circle", {
        cx: c.x,
        cy: c.y,
        r: 24,
        class: "stack-node" + (hinted ? " hinted" : "") + (removing ? " removing" : ""),
      }),
    );
    const heightText = el("text", { x: c.x, y: c.y + 5, class: "stack-height" });
    heightText.textContent = removing ? `${height}−${state.removals[i]}` : String(height);
    group.appendChild(heightText);
    const label = el("text", { x: c.x, y: c.y - 32, class: "stack-label" });
    label.textContent = `${vertexLabel(i)}${i}`;
    group.appendChild(label);
    if (hinted) {
      const hintText = el("text", { x: c.x, y: c.y + 46, class: "hint-amount" });
      hintText.textContent = `take ${state.hint![i]}`;
      group.appendChild(hintText);
    }
    if (state.interactive) {
      const minus = el("text", { x: c.x - 34, y: c.y + 5, class: "stepper" });
      minus.textContent = "−";
      minus.addEventListener("click", () => callbacks.onAdjust(i, -1));
      const plus = el("text", { x: c.x + 34, y: c.y + 5, class: "stepper" });
      plus.textContent = "+";
      plus.addEventListener("click", () => callbacks.onAdjust(i, +1));
      group.appendChild(minus);
      group.appendChild(plus);
    }
    svg.appendChild(group);
  });
}
