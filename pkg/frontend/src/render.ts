/** Canvas painting of a scene, plus pixel -> cell hit testing. */

import { Cell } from "./api.js";
import { Shape } from "./scene.js";

export interface ViewGeometry {
  n: number;
  size: number; // canvas css pixels (square)
  pad: number;
}

export function cellCenter(g: ViewGeometry, cell: Cell): [number, number] {
  const step = (g.size - 2 * g.pad) / Math.max(g.n - 1, 1);
  const x = g.pad + (cell[0] - 1) * step;
  // grid y grows upward, canvas y grows downward
  const y = g.size - g.pad - (cell[1] - 1) * step;
  return [x, y];
}

export function cellAtPixel(g: ViewGeometry, px: number, py: number): Cell | null {
  const step = (g.size - 2 * g.pad) / Math.max(g.n - 1, 1);
  const x = Math.round((px - g.pad) / step) + 1;
  const y = Math.round((g.size - g.pad - py) / step) + 1;
  if (x < 1 || x > g.n || y < 1 || y > g.n) return null;
  const [cx, cy] = cellCenter(g, [x, y]);
  const r = Math.max(step * 0.4, 8);
  if ((px - cx) ** 2 + (py - cy) ** 2 > r * r) return null;
  return [x, y];
}

const COLORS = {
  dot: "#c8c8c8",
  chosen: "#1664c8",
  blocked: "#e0b4b4",
  refused: "#d03030",
  ray: "#d03030",
  violation: "#e08020",
};

export function paint(ctx: CanvasRenderingContext2D, g: ViewGeometry, shapes: Shape[]): void {
  ctx.clearRect(0, 0, g.size, g.size);
  const step = (g.size - 2 * g.pad) / Math.max(g.n - 1, 1);
  const rDot = Math.max(step * 0.08, 2);
  const rPoint = Math.max(step * 0.22, 5);

  const circle = (cell: Cell, r: number, fill: string) => {
    const [x, y] = cellCenter(g, cell);
    ctx.beginPath();
    ctx.arc(x, y, r, 0, 2 * Math.PI);
    ctx.fillStyle = fill;
    ctx.fill();
  };
  const line = (from: Cell, to: Cell, color: string, width: number) => {
    const [x1, y1] = cellCenter(g, from);
    const [x2, y2] = cellCenter(g, to);
    ctx.beginPath();
    ctx.moveTo(x1, y1);
    ctx.lineTo(x2, y2);
    ctx.strokeStyle = color;
    ctx.lineWidth = width;
    ctx.stroke();
  };

  // rays under points, points over dots
  for (const s of shapes) {
    if (s.kind === "witness-ray") line(s.from, s.to, COLORS.ray, 3);
    if (s.kind === "violation-ray") line(s.from, s.to, COLORS.violation, 3);
  }
  for (const s of shapes) {
    switch (s.kind) {
      case "grid-dot":
        circle(s.cell, rDot, COLORS.dot);
        break;
      case "blocked":
        circle(s.cell, rPoint * 0.8, COLORS.blocked);
        break;
      case "chosen":
        circle(s.cell, rPoint, COLORS.chosen);
        break;
      case "refused":
        circle(s.cell, rPoint, COLORS.refused);
        break;
      case "witness-vertex":
        circle(s.cell, rPoint * 0.7, COLORS.refused);
        break;
    }
  }
}
