/** Round-trip against a live service: the explorer acceptance path.
 * Spawns the Python process, seeds two-rows(6) at 135 degrees, exercises
 * a refused placement with its drawn witness, and checks byte-identical
 * save/load. */

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { buildScene, counterText } from "../src/scene.js";
import { Board } from "../src/state.js";

const PORT = 8790 + (process.pid % 100);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

async function waitReady(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/api/bounds?n=2&theta=deg%3D135`);
      if (res.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "thetagrid.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitReady();
}, 30000);

afterAll(() => {
  service?.kill();
});

describe("explorer against a live service", () => {
  it("seeds two-rows(6) and shows 12 points under an upper bound of 16", async () => {
    const board = new Board(new ApiClient(BASE), 6, "deg=135");
    await board.init();
    await board.seed("two-rows");
    expect(board.count).toBe(12);
    expect(board.bounds?.upper).toBe(16);
    expect(counterText(board)).toBe("12 / upper 16");
    const chosen = buildScene(board).filter((s) => s.kind === "chosen");
    expect(chosen).toHaveLength(12);
  });

  it("refuses a placement completing a column-plus-bucket configuration", async () => {
    const board = new Board(new ApiClient(BASE), 5, "deg=135");
    await board.init();
    await board.toggleCell([3, 3]);
    await board.toggleCell([3, 1]);
    expect(board.blocked.map((e) => e.cell)).toContainEqual([2, 4]);

    await board.toggleCell([2, 4]); // would form 135 at (3,3)
    expect(board.count).toBe(2); // refused, nothing placed
    expect(board.refusal?.cell).toEqual([2, 4]);
    const rays = buildScene(board).filter((s) => s.kind === "witness-ray");
    expect(rays).toHaveLength(2); // the angle is drawn
    // both rays emanate from the witnessing vertex
    const verts = new Set(rays.map((r) => JSON.stringify(r.kind === "witness-ray" && r.from)));
    expect(verts.size).toBe(1);
  });

  it("save/load round-trips byte-identical construction JSON", async () => {
    const client = new ApiClient(BASE);
    const board = new Board(client, 6, "deg=135");
    await board.init();
    await board.seed("two-rows");

    const saved = board.serialize();
    const serverBytes = await client.constructRaw("two-rows", 6);
    expect(saved).toBe(serverBytes); // byte-identical to the CLI/service format

    const other = new Board(client, 6, "deg=135");
    await other.init();
    expect(await other.load(saved)).toBe(true);
    expect(other.serialize()).toBe(saved);
    expect(other.blocked).toEqual(board.blocked); // service determinism
  });

  it("rejects loading a violating construction and surfaces the triples", async () => {
    const board = new Board(new ApiClient(BASE), 5, "deg=135");
    await board.init();
    const ok = await board.load('{"n": 5, "points": [[2,4],[3,3],[3,1]]}');
    expect(ok).toBe(false);
    expect(board.count).toBe(0); // board unchanged
    expect(board.loadViolations).toEqual([
      { a: [2, 4], vertex: [3, 3], c: [3, 1] },
    ]);
    const overlay = buildScene(board).filter((s) => s.kind === "violation-ray");
    expect(overlay).toHaveLength(2);
  });

  it("undo replays identical blocked sets through real responses", async () => {
    const board = new Board(new ApiClient(BASE), 5, "deg=135");
    await board.init();
    await board.toggleCell([3, 3]);
    await board.toggleCell([3, 1]);
    const blockedBefore = JSON.stringify(board.blocked);
    board.undo();
    board.undo();
    expect(board.count).toBe(0);
    board.redo();
    board.redo();
    expect(JSON.stringify(board.blocked)).toBe(blockedBefore);
  });
});
