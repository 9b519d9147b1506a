/** Pure scene computation: board state in, drawable shapes out.
 * Coordinates stay in grid space; the renderer maps them to pixels.
 * Keeping this a pure function makes the overlay logic testable without
 * a DOM. */

import { Cell, Triple } from "./api.js";
import { Board } from "./state.js";

export type Shape =
  | { kind: "grid-dot"; cell: Cell }
  | { kind: "chosen"; cell: Cell }
  | { kind: "blocked"; cell: Cell }
  | { kind: "refused"; cell: Cell }
  | { kind: "witness-ray"; from: Cell; to: Cell }
  | { kind: "witness-vertex"; cell: Cell }
  | { kind: "violation-ray"; from: Cell; to: Cell };

function rays(t: Triple): Shape[] {
  return [
    { kind: "witness-ray", from: t.vertex, to: t.a },
    { kind: "witness-ray", from: t.vertex, to: t.c },
    { kind: "witness-vertex", cell: t.vertex },
  ];
}

export function buildScene(board: Board): Shape[] {
  const shapes: Shape[] = [];
  for (let y = 1; y <= board.n; y++) {
    for (let x = 1; x <= board.n; x++) {
      shapes.push({ kind: "grid-dot", cell: [x, y] });
    }
  }
  for (const e of board.blocked) {
    shapes.push({ kind: "blocked", cell: e.cell });
  }
  for (const p of board.chosen) {
    shapes.push({ kind: "chosen", cell: p });
  }
  if (board.refusal) {
    shapes.push({ kind: "refused", cell: board.refusal.cell });
    shapes.push(...rays(board.refusal.witness));
  }
  for (const t of board.loadViolations ?? []) {
    shapes.push(
      { kind: "violation-ray", from: t.vertex, to: t.a },
      { kind: "violation-ray", from: t.vertex, to: t.c },
    );
  }
  return shapes;
}

export function counterText(board: Board): string {
  const upper = board.bounds ? String(board.bounds.upper) : "?";
  return `${board.count} / upper ${upper}`;
}
