/** Typed client for the thetagrid service. The browser never computes
 * geometry itself: every verdict on this board came over this wire. */

export type Cell = [number, number];

export interface Triple {
  a: Cell;
  vertex: Cell;
  c: Cell;
}

export interface VerifyResponse {
  peaceful: boolean;
  violations: Triple[];
  truncated: boolean;
}

export interface BlockedEntry {
  cell: Cell;
  witness: Triple;
}

export interface BoundsResponse {
  lower: number | null;
  upper: number;
  formula: string;
  external: boolean;
}

export interface ConstructionJson {
  n: number;
  points: Cell[];
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly body: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

async function parseError(res: Response): Promise<never> {
  let code = "http-" + res.status;
  let message = res.statusText;
  let body: Record<string, unknown> = {};
  try {
    body = (await res.json()) as Record<string, unknown>;
    if (typeof body.error === "string") code = body.error;
    if (typeof body.message === "string") message = body.message;
  } catch {
    /* non-JSON error body */
  }
  throw new ServiceError(res.status, code, message, body);
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private async get(path: string, params: Record<string, string>): Promise<Response> {
    const qs = new URLSearchParams(params).toString();
    return fetch(`${this.base}${path}?${qs}`);
  }

  private async post(path: string, payload: unknown): Promise<Response> {
    return fetch(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async verify(n: number, theta: string, points: Cell[]): Promise<VerifyResponse> {
    const res = await this.post("/api/verify", { n, theta, points });
    if (!res.ok) await parseError(res);
    return (await res.json()) as VerifyResponse;
  }

  async blocked(n: number, theta: string, points: Cell[]): Promise<BlockedEntry[]> {
    const res = await this.post("/api/blocked", { n, theta, points });
    if (!res.ok) await parseError(res);
    const body = (await res.json()) as { blocked: BlockedEntry[] };
    return body.blocked;
  }

  async bounds(n: number, theta: string): Promise<BoundsResponse> {
    const res = await this.get("/api/bounds", { n: String(n), theta });
    if (!res.ok) await parseError(res);
    return (await res.json()) as BoundsResponse;
  }

  /** Raw body, for byte-identical save/load comparisons. */
  async constructRaw(kind: string, n: number, theta?: string): Promise<string> {
    const params: Record<string, string> = { kind, n: String(n) };
    if (theta !== undefined) params.theta = theta;
    const res = await this.get("/api/construct", params);
    if (!res.ok) await parseError(res);
    return res.text();
  }

  async construct(kind: string, n: number, theta?: string): Promise<ConstructionJson> {
    return JSON.parse(await this.constructRaw(kind, n, theta)) as ConstructionJson;
  }
}
