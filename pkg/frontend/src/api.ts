/** Thin typed client for the puzzle service.  No rule logic lives here or
 * anywhere else in the frontend: every legality decision is the server's. */

import type {
  ConstructionFile,
  KilledEntry,
  Point,
  SessionState,
  Violation,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly violation: Violation | null,
    detail: string,
  ) {
    super(detail);
  }
}

async function parseError(resp: Response): Promise<never> {
  let violation: Violation | null = null;
  let detail = `${resp.status}`;
  try {
    const body = (await resp.json()) as { detail?: Violation | string };
    if (body.detail && typeof body.detail === "object") {
      violation = body.detail;
      detail = `${body.detail.reason} (${body.detail.config ?? "-"})`;
    } else if (typeof body.detail === "string") {
      detail = body.detail;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, violation, detail);
}

export class PuzzleApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  createSession(grid: { kind: string; n: number }, x: string[]): Promise<SessionState> {
    return this.post("/session", { grid, X: x });
  }

  getSession(id: string): Promise<SessionState> {
    return this.get(`/session/${id}`);
  }

  playRound(id: string, points: Point[]): Promise<SessionState> {
    return this.post(`/session/${id}/round`, { points });
  }

  undo(id: string): Promise<SessionState> {
    return this.post(`/session/${id}/undo`, {});
  }

  async killedCauses(id: string): Promise<KilledEntry[]> {
    const body = await this.get<{ killed: KilledEntry[] }>(`/session/${id}/killed`);
    return body.killed;
  }

  construction(id: string, n: number): Promise<ConstructionFile> {
    return this.get(`/constructions/${id}?n=${n}`);
  }
}
