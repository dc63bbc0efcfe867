/** Pure board model: the last server response plus the staged set, folded
 * into one state per cell.  Nothing here decides legality; killed cells and
 * their causes are taken verbatim from the service payloads, so a re-fetch
 * must reproduce the rendered state byte for byte. */

import { colorFor } from "./colors.js";
import { pointKey } from "./types.js";
import type { KilledEntry, Point, SessionState } from "./types.js";

export const MAX_BOARD_SIDE = 40;

export type CellState =
  | { kind: "empty" }
  | { kind: "played"; round: number }
  | { kind: "killed"; config: string; by: Point; color: string }
  | { kind: "pending" };

export interface BoardView {
  gridKind: string;
  n: number;
  score: number;
  cells: Map<string, CellState>;
}

export function gridPoints(kind: string, n: number): Point[] {
  const pts: Point[] = [];
  if (kind === "triangular") {
    for (let y = 1; y < n; y++) {
      for (let x = y + 1; x <= n; x++) pts.push([x, y]);
    }
  } else {
    for (let y = 1; y <= n; y++) {
      for (let x = 1; x <= n; x++) pts.push([x, y]);
    }
  }
  return pts;
}

export function buildBoard(
  state: SessionState,
  causes: KilledEntry[],
  staged: ReadonlySet<string>,
): BoardView {
  if (state.grid.n > MAX_BOARD_SIDE) {
    throw new Error(`board side ${state.grid.n} exceeds the cap of ${MAX_BOARD_SIDE}`);
  }
  const cells = new Map<string, CellState>();
  for (const p of gridPoints(state.grid.kind, state.grid.n)) {
    cells.set(pointKey(p), { kind: "empty" });
  }

  state.rounds.forEach((round, i) => {
    for (const p of round) {
      const key = pointKey(p);
      if (cells.get(key)?.kind === "empty") {
        cells.set(key, { kind: "played", round: i + 1 });
      }
    }
  });

  const causeByPoint = new Map(causes.map((c) => [pointKey(c.point), c]));
  for (const p of state.killed) {
    const key = pointKey(p);
    const cause = causeByPoint.get(key);
    if (!cause) {
      throw new Error(`killed point ${key} missing from the causes payload`);
    }
    cells.set(key, {
      kind: "killed",
      config: cause.config,
      by: cause.by,
      color: colorFor(cause.config),
    });
  }

  for (const key of staged) {
    const current = cells.get(key);
    if (current && current.kind !== "killed") {
      cells.set(key, { kind: "pending" });
    }
  }

  return {
    gridKind: state.grid.kind,
    n: state.grid.n,
    score: state.score,
    cells,
  };
}

/** Cells rendered as killed, sorted; used by the fidelity test and the UI legend. */
export function renderedKilled(view: BoardView): Point[] {
  const out: Point[] = [];
  for (const [key, cell] of view.cells) {
    if (cell.kind === "killed") {
      const [x, y] = key.split(",").map(Number);
      out.push([x as number, y as number]);
    }
  }
  out.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  return out;
}
