/** DOM wiring for the explorer: controls, canvas, status banner. */

import { ApiClient } from "./api.js";
import { buildScene, counterText } from "./scene.js";
import { ViewGeometry, cellAtPixel, paint } from "./render.js";
import { Board } from "./state.js";

const PRESETS: Record<string, string> = {
  "45°": "deg=45",
  "90°": "deg=90",
  "135°": "deg=135",
  "180°": "deg=180",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setup(): void {
  const canvas = el<HTMLCanvasElement>("board");
  const ctx = canvas.getContext("2d")!;
  const nInput = el<HTMLInputElement>("grid-n");
  const thetaSelect = el<HTMLSelectElement>("theta-preset");
  const tanInput = el<HTMLInputElement>("theta-tan");
  const counter = el<HTMLSpanElement>("counter");
  const progress = el<HTMLProgressElement>("progress");
  const banner = el<HTMLDivElement>("banner");

  for (const label of Object.keys(PRESETS)) {
    const opt = document.createElement("option");
    opt.value = PRESETS[label]!;
    opt.textContent = label;
    if (label === "135°") opt.selected = true;
    thetaSelect.appendChild(opt);
  }

  const client = new ApiClient("");
  const board = new Board(client, Number(nInput.value) || 6, thetaSelect.value);

  const geometry = (): ViewGeometry => ({ n: board.n, size: canvas.width, pad: 30 });

  const repaint = () => {
    nInput.value = String(board.n);
    paint(ctx, geometry(), buildScene(board));
    counter.textContent = counterText(board);
    progress.max = board.bounds?.upper ?? board.n * board.n;
    progress.value = board.count;
    if (board.frozen) {
      banner.textContent = "service unreachable: board is read-only";
      banner.className = "banner error";
    } else if (board.loadViolations) {
      banner.textContent = `rejected: ${board.loadViolations.length} violating triple(s) drawn`;
      banner.className = "banner warn";
    } else if (board.refusal) {
      const w = board.refusal.witness;
      banner.textContent =
        `blocked: placing (${board.refusal.cell}) forms the drawn angle at (${w.vertex})`;
      banner.className = "banner warn";
    } else {
      banner.textContent = board.lastError ?? "";
      banner.className = board.lastError ? "banner error" : "banner";
    }
  };
  board.onchange = repaint;

  canvas.addEventListener("click", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const cell = cellAtPixel(geometry(), ev.clientX - rect.left, ev.clientY - rect.top);
    if (cell) void board.toggleCell(cell).catch(() => undefined);
  });

  const currentTheta = () => (tanInput.value.trim() ? `tan=${tanInput.value.trim()}` : thetaSelect.value);
  const applyGrid = () => {
    const n = Math.max(1, Math.min(64, Number(nInput.value) || 6));
    void board.reset(n, currentTheta()).catch(() => undefined);
  };
  nInput.addEventListener("change", applyGrid);
  thetaSelect.addEventListener("change", () => {
    tanInput.value = "";
    applyGrid();
  });
  tanInput.addEventListener("change", applyGrid);

  el<HTMLButtonElement>("undo").addEventListener("click", () => board.undo());
  el<HTMLButtonElement>("redo").addEventListener("click", () => board.redo());
  el<HTMLButtonElement>("clear").addEventListener("click", applyGrid);
  el<HTMLButtonElement>("seed-two-rows").addEventListener("click", () =>
    void board.seed("two-rows").catch(() => undefined),
  );
  el<HTMLButtonElement>("seed-witness").addEventListener("click", () =>
    void board.seed("witness").catch(() => undefined),
  );

  el<HTMLButtonElement>("save").addEventListener("click", () => {
    const blob = new Blob([board.serialize()], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `construction-n${board.n}.json`;
    a.click();
    URL.revokeObjectURL(a.href);
  });

  const fileInput = el<HTMLInputElement>("load-file");
  el<HTMLButtonElement>("load").addEventListener("click", () => fileInput.click());
  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (file) void board.load(await file.text()).catch(() => undefined);
    fileInput.value = "";
  });

  void board.init().then(repaint, repaint);
  repaint();
}

setup();
