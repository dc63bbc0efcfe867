/** Session controller: optimistic staging, pessimistic commit.
 *
 * The controller keeps the last server response untouched as the single
 * source of truth.  Staging is a local set of survivor cells; committing a
 * round posts it and either adopts the new server state or, on a 400,
 * keeps everything as it was and surfaces the violation. */

import { ApiError, PuzzleApi } from "./api.js";
import { pointKey } from "./types.js";
import type {
  ConstructionFile,
  KilledEntry,
  Point,
  SessionState,
  SolutionFile,
  Violation,
} from "./types.js";

export class SessionController {
  state: SessionState | null = null;
  causes: KilledEntry[] = [];
  staged = new Set<string>();
  lastViolation: Violation | null = null;

  constructor(private readonly api: PuzzleApi) {}

  async newGame(grid: { kind: string; n: number }, x: string[]): Promise<void> {
    this.state = await this.api.createSession(grid, x);
    this.causes = [];
    this.staged.clear();
    this.lastViolation = null;
  }

  private get id(): string {
    if (!this.state) throw new Error("no active session");
    return this.state.id;
  }

  isSurvivor(p: Point): boolean {
    const key = pointKey(p);
    return (this.state?.survivors ?? []).some((s) => pointKey(s) === key);
  }

  /** Clicking a survivor stages it; clicking a staged cell unstages it. */
  toggleStage(p: Point): boolean {
    const key = pointKey(p);
    if (this.staged.has(key)) {
      this.staged.delete(key);
      return false;
    }
    if (!this.isSurvivor(p)) {
      return false;
    }
    this.staged.add(key);
    return true;
  }

  stagedPoints(): Point[] {
    return [...this.staged]
      .map((key) => key.split(",").map(Number) as unknown as Point)
      .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  }

  /** Commit the staged set as the next round; no local mutation on failure. */
  async endRound(): Promise<boolean> {
    const points = this.stagedPoints();
    try {
      this.state = await this.api.playRound(this.id, points);
      this.staged.clear();
      this.lastViolation = null;
      await this.refreshCauses();
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.violation) {
        this.lastViolation = err.violation;
        return false;
      }
      throw err;
    }
  }

  async undo(): Promise<void> {
    this.state = await this.api.undo(this.id);
    this.staged.clear();
    this.lastViolation = null;
    await this.refreshCauses();
  }

  async refreshCauses(): Promise<void> {
    this.causes = (this.state?.killed.length ?? 0) > 0
      ? await this.api.killedCauses(this.id)
      : [];
  }

  /** Re-fetch the authoritative state; rendering must not change. */
  async refetch(): Promise<SessionState> {
    this.state = await this.api.getSession(this.id);
    await this.refreshCauses();
    return this.state;
  }

  /** The dotpuzzle solution file for the current history, byte-faithful to
   * the server's own view of the rounds. */
  exportSolution(): SolutionFile {
    if (!this.state) throw new Error("no active session");
    return {
      grid: this.state.grid,
      X: this.state.X,
      rounds: this.state.rounds,
    };
  }

  /** Fetch a server-generated construction and replay it round by round in
   * a fresh session.  Returns the construction payload for cross-checking. */
  async loadConstruction(id: string, n: number): Promise<ConstructionFile> {
    const file = await this.api.construction(id, n);
    await this.newGame(file.grid, file.X);
    for (const round of file.rounds) {
      this.staged = new Set(round.map(pointKey));
      const ok = await this.endRound();
      if (!ok) {
        throw new Error(
          `construction ${id} was rejected by the server: ${JSON.stringify(this.lastViolation)}`,
        );
      }
    }
    if (this.state && this.state.score !== file.score) {
      throw new Error(
        `replayed score ${this.state.score} differs from construction score ${file.score}`,
      );
    }
    return file;
  }
}
