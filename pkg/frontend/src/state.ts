/** Board state machine.
 *
 * Invariants: the chosen set is always peaceful (blocked cells cannot be
 * placed; loads are re-verified server-side); blocked and chosen never
 * overlap; undo/redo replays cached snapshots, so history is exact
 * without refetching.  Mutations are serialized through an internal
 * queue: one in-flight request, latest click wins.
 */

import { ApiClient, BlockedEntry, BoundsResponse, Cell, Triple } from "./api.js";

export interface Refusal {
  cell: Cell;
  witness: Triple;
}

interface Snapshot {
  chosen: Cell[];
  blocked: BlockedEntry[];
}

export function cellEq(a: Cell, b: Cell): boolean {
  return a[0] === b[0] && a[1] === b[1];
}

export function canonical(points: Cell[]): Cell[] {
  return [...points].sort((p, q) => p[1] - q[1] || p[0] - q[0]);
}

/** Exactly the service's construction JSON: sorted points, compact, n first. */
export function serializeConstruction(n: number, points: Cell[]): string {
  return JSON.stringify({ n, points: canonical(points) });
}

export class Board {
  n: number;
  theta: string;
  bounds: BoundsResponse | null = null;
  /** Set when the user clicked a blocked cell: drawn, never placed. */
  refusal: Refusal | null = null;
  /** Set when a load was rejected by the server verifier. */
  loadViolations: Triple[] | null = null;
  /** True when the service is unreachable: board is read-only. */
  frozen = false;
  lastError: string | null = null;

  private snaps: Snapshot[] = [{ chosen: [], blocked: [] }];
  private cursor = 0;
  private queue: Promise<unknown> = Promise.resolve();
  onchange: () => void = () => {};

  constructor(readonly client: ApiClient, n: number, theta: string) {
    this.n = n;
    this.theta = theta;
  }

  get chosen(): Cell[] {
    return this.snaps[this.cursor]!.chosen;
  }

  get blocked(): BlockedEntry[] {
    return this.snaps[this.cursor]!.blocked;
  }

  get count(): number {
    return this.chosen.length;
  }

  isChosen(cell: Cell): boolean {
    return this.chosen.some((p) => cellEq(p, cell));
  }

  blockedEntry(cell: Cell): BlockedEntry | undefined {
    return this.blocked.find((e) => cellEq(e.cell, cell));
  }

  canUndo(): boolean {
    return this.cursor > 0;
  }

  canRedo(): boolean {
    return this.cursor < this.snaps.length - 1;
  }

  /** Serialize every mutation; rapid clicks apply in order, one request at a time. */
  private enqueue<T>(op: () => Promise<T>): Promise<T> {
    const next = this.queue.then(op, op);
    this.queue = next.catch(() => undefined);
    return next;
  }

  private async withService<T>(op: () => Promise<T>): Promise<T> {
    try {
      const out = await op();
      this.frozen = false;
      this.lastError = null;
      return out;
    } catch (err) {
      if (err instanceof TypeError) {
        // fetch network failure: freeze the board read-only
        this.frozen = true;
        this.lastError = "service unreachable";
      } else {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
      throw err;
    } finally {
      this.onchange();
    }
  }

  private pushSnapshot(chosen: Cell[], blocked: BlockedEntry[]): void {
    this.snaps = this.snaps.slice(0, this.cursor + 1);
    this.snaps.push({ chosen: canonical(chosen), blocked });
    this.cursor += 1;
  }

  private resetSnapshots(chosen: Cell[], blocked: BlockedEntry[]): void {
    this.snaps = [{ chosen: canonical(chosen), blocked }];
    this.cursor = 0;
  }

  async init(): Promise<void> {
    await this.enqueue(() =>
      this.withService(async () => {
        this.bounds = await this.client.bounds(this.n, this.theta);
      }),
    );
  }

  /** Change grid size / angle: clears the board and history. */
  async reset(n: number, theta: string): Promise<void> {
    await this.enqueue(() =>
      this.withService(async () => {
        this.n = n;
        this.theta = theta;
        this.refusal = null;
        this.loadViolations = null;
        this.bounds = await this.client.bounds(n, theta);
        this.resetSnapshots([], []);
      }),
    );
  }

  async toggleCell(cell: Cell): Promise<void> {
    await this.enqueue(() =>
      this.withService(async () => {
        this.loadViolations = null;
        if (this.isChosen(cell)) {
          const chosen = this.chosen.filter((p) => !cellEq(p, cell));
          const blocked = await this.client.blocked(this.n, this.theta, chosen);
          this.refusal = null;
          this.pushSnapshot(chosen, blocked);
          return;
        }
        const hit = this.blockedEntry(cell);
        if (hit) {
          // refused: flash the witnessing angle instead of placing
          this.refusal = { cell, witness: hit.witness };
          return;
        }
        const chosen = [...this.chosen, cell];
        const blocked = await this.client.blocked(this.n, this.theta, chosen);
        this.refusal = null;
        this.pushSnapshot(chosen, blocked);
      }),
    );
  }

  undo(): void {
    if (this.canUndo()) {
      this.cursor -= 1;
      this.refusal = null;
      this.onchange();
    }
  }

  redo(): void {
    if (this.canRedo()) {
      this.cursor += 1;
      this.refusal = null;
      this.onchange();
    }
  }

  serialize(): string {
    return serializeConstruction(this.n, this.chosen);
  }

  /** Load a construction JSON; the server verifier arbitrates validity. */
  async load(text: string): Promise<boolean> {
    return this.enqueue(() =>
      this.withService(async () => {
        let parsed: { n: number; points: Cell[] };
        try {
          parsed = JSON.parse(text) as { n: number; points: Cell[] };
        } catch {
          this.lastError = "not valid JSON";
          return false;
        }
        const points = parsed.points ?? [];
        const res = await this.client.verify(parsed.n, this.theta, points);
        if (!res.peaceful) {
          this.loadViolations = res.violations;
          return false;
        }
        const blocked = await this.client.blocked(parsed.n, this.theta, points);
        this.n = parsed.n;
        this.bounds = await this.client.bounds(parsed.n, this.theta);
        this.refusal = null;
        this.loadViolations = null;
        this.resetSnapshots(points, blocked);
        return true;
      }),
    );
  }

  /** Seed from a server-side construction (two-rows or witness). */
  async seed(kind: "two-rows" | "witness"): Promise<void> {
    await this.enqueue(() =>
      this.withService(async () => {
        if (kind === "two-rows") {
          const c = await this.client.construct("two-rows", this.n);
          const blocked = await this.client.blocked(c.n, this.theta, c.points);
          this.refusal = null;
          this.loadViolations = null;
          this.resetSnapshots(c.points, blocked);
          return;
        }
        const w = (await this.client.construct("witness", this.n, this.theta)) as unknown as {
          n: number;
          a: Cell;
          vertex: Cell;
          c: Cell;
        };
        const pts = [w.a, w.vertex, w.c];
        this.n = w.n;
        this.bounds = await this.client.bounds(w.n, this.theta);
        // a witness is by design NOT peaceful: show it as a violation overlay
        const res = await this.client.verify(w.n, this.theta, pts);
        this.loadViolations = res.violations;
        this.refusal = null;
        this.resetSnapshots([], await this.client.blocked(w.n, this.theta, []));
      }),
    );
  }
}
