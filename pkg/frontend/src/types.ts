/** Payload shapes of the puzzle service; the client renders these verbatim. */

export type Point = [number, number];

export interface GridInfo {
  kind: "triangular" | "square";
  n: number;
}

/** Full session snapshot as returned by every state-changing endpoint. */
export interface SessionState {
  id: string;
  grid: GridInfo;
  X: string[];
  rounds: Point[][];
  killed: Point[];
  survivors: Point[];
  score: number;
  rounds_left: number;
  hash: string;
}

export interface KilledEntry {
  point: Point;
  by: Point;
  config: string;
}

/** Body of a 400 response when a round is rejected. */
export interface Violation {
  reason: string;
  points: Point[];
  config: string | null;
}

/** A puzzle construction served as a ready-to-replay solution file. */
export interface ConstructionFile {
  grid: GridInfo;
  X: string[];
  rounds: Point[][];
  score: number;
  hash: string;
}

/** The dotpuzzle solution-file shape accepted by the CLI verifier. */
export interface SolutionFile {
  grid: GridInfo;
  X: string[];
  rounds: Point[][];
}

export const pointKey = (p: Point): string => `${p[0]},${p[1]}`;
