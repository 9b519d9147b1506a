/** Board state machine against a scripted stand-in service.
 * Fixture bodies are verbatim captures from the real service, so the
 * client is only ever tested against wire-true shapes. */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient, BlockedEntry } from "../src/api.js";
import { buildScene, counterText } from "../src/scene.js";
import { Board, canonical, serializeConstruction } from "../src/state.js";

const BLOCKED_33_31: BlockedEntry[] = [
  { cell: [2, 4], witness: { a: [2, 4], c: [3, 1], vertex: [3, 3] } },
  { cell: [4, 4], witness: { a: [3, 1], c: [4, 4], vertex: [3, 3] } },
  { cell: [1, 5], witness: { a: [1, 5], c: [3, 1], vertex: [3, 3] } },
  { cell: [5, 5], witness: { a: [3, 1], c: [5, 5], vertex: [3, 3] } },
];

function keyOf(points: [number, number][]): string {
  return JSON.stringify(canonical(points));
}

/** Minimal scripted service: blocked sets keyed by the chosen points. */
function installFetchStub() {
  const blockedByBoard = new Map<string, BlockedEntry[]>([
    [keyOf([]), []],
    [keyOf([[3, 3]]), []],
    [keyOf([[3, 1]]), []],
    [keyOf([[3, 3], [3, 1]]), BLOCKED_33_31],
  ]);
  const calls: string[] = [];
  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    calls.push(url.split("?")[0]!);
    const respond = (body: unknown, status = 200) =>
      new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
      });
    if (url.startsWith("/api/bounds")) {
      return respond({ external: false, formula: "3n-2", lower: 10, upper: 13 });
    }
    if (url.startsWith("/api/blocked")) {
      const req = JSON.parse(String(init?.body)) as { points: [number, number][] };
      const hit = blockedByBoard.get(keyOf(req.points));
      if (hit === undefined) {
        return respond({ error: "not-peaceful", message: "scripted refusal" }, 422);
      }
      return respond({ blocked: hit });
    }
    if (url.startsWith("/api/verify")) {
      return respond({ peaceful: true, violations: [], truncated: false });
    }
    throw new Error(`unexpected url ${url}`);
  });
  return calls;
}

describe("Board", () => {
  let board: Board;
  let calls: string[];

  beforeEach(async () => {
    calls = installFetchStub();
    board = new Board(new ApiClient(""), 5, "deg=135");
    await board.init();
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  it("places free cells and refreshes the blocked set", async () => {
    await board.toggleCell([3, 3]);
    expect(board.chosen).toEqual([[3, 3]]);
    await board.toggleCell([3, 1]);
    expect(board.chosen).toEqual([[3, 1], [3, 3]]); // canonical (y, x) order
    expect(board.blocked.map((e) => e.cell)).toEqual([[2, 4], [4, 4], [1, 5], [5, 5]]);
  });

  it("refuses a blocked cell and exposes the witnessing angle", async () => {
    await board.toggleCell([3, 3]);
    await board.toggleCell([3, 1]);
    await board.toggleCell([2, 4]);
    expect(board.chosen).toHaveLength(2); // nothing placed
    expect(board.refusal).not.toBeNull();
    expect(board.refusal!.witness.vertex).toEqual([3, 3]);
    const rays = buildScene(board).filter((s) => s.kind === "witness-ray");
    expect(rays).toHaveLength(2);
    expect(rays.map((r) => (r.kind === "witness-ray" ? r.to : null))).toEqual([
      [2, 4],
      [3, 1],
    ]);
  });

  it("removes a chosen cell on second click", async () => {
    await board.toggleCell([3, 3]);
    await board.toggleCell([3, 1]);
    await board.toggleCell([3, 1]);
    expect(board.chosen).toEqual([[3, 3]]);
    expect(board.blocked).toEqual([]);
  });

  it("undo and redo replay cached blocked sets without refetching", async () => {
    await board.toggleCell([3, 3]);
    await board.toggleCell([3, 1]);
    const fetches = calls.length;
    board.undo();
    expect(board.chosen).toEqual([[3, 3]]);
    expect(board.blocked).toEqual([]);
    board.redo();
    expect(board.chosen).toEqual([[3, 1], [3, 3]]);
    expect(board.blocked.map((e) => e.cell)).toEqual([[2, 4], [4, 4], [1, 5], [5, 5]]);
    expect(calls.length).toBe(fetches); // history is exact, no new requests
  });

  it("keeps the counter at |chosen| with the served upper bound", async () => {
    await board.toggleCell([3, 3]);
    expect(counterText(board)).toBe("1 / upper 13");
  });

  it("serializes the canonical construction JSON", async () => {
    await board.toggleCell([3, 3]);
    await board.toggleCell([3, 1]);
    expect(board.serialize()).toBe('{"n":5,"points":[[3,1],[3,3]]}');
    expect(serializeConstruction(5, [[3, 3], [3, 1]])).toBe(board.serialize());
  });

  it("freezes read-only when the service drops", async () => {
    vi.stubGlobal("fetch", async () => {
      throw new TypeError("network down");
    });
    await expect(board.toggleCell([1, 1])).rejects.toThrow();
    expect(board.frozen).toBe(true);
    expect(board.chosen).toEqual([]);
  });
});
