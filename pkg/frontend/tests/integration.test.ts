/** Cross-component checks against the real backend:
 *  - the quadrant construction replayed through the client reproduces the
 *    service's own score and state hash;
 *  - an exported solution passes the command-line verifier (exit 0);
 *  - rendered killed cells equal the live payload.
 *
 * Requires the Python package to be importable (`pip install -e .` in the
 * repository root); the server is spawned on a scratch port.
 */

import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { PuzzleApi } from "../src/api.js";
import { buildBoard, renderedKilled } from "../src/board.js";
import { SessionController } from "../src/state.js";

const PYTHON = process.env.PYTHON ?? "python3";
const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ReturnType<typeof spawn>;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 60; attempt++) {
    try {
      const resp = await fetch(`${BASE}/constructions/quadrant?n=6`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("backend did not come up");
}

beforeAll(async () => {
  server = spawn(PYTHON, ["-m", "triconfig", "serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  await waitForServer();
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("against the live service", () => {
  it("replays the quadrant construction to the CLI score and hash", async () => {
    const ctl = new SessionController(new PuzzleApi(BASE));
    const file = await ctl.loadConstruction("quadrant", 8);
    expect(ctl.state?.score).toBe(file.score);
    expect(ctl.state?.hash).toBe(file.hash);

    const cli = spawnSync(
      PYTHON,
      ["-m", "triconfig", "construct", "--id", "quadrant", "--n", "8"],
      { encoding: "utf-8" },
    );
    expect(cli.status).toBe(0);
    const payload = JSON.parse(cli.stdout) as { size: number };
    expect(ctl.state?.score).toBe(payload.size);
  }, 30_000);

  it("export -> command-line verifier exits 0 and agrees on the hash", async () => {
    const ctl = new SessionController(new PuzzleApi(BASE));
    await ctl.newGame({ kind: "triangular", n: 6 }, ["taco", "nested"]);
    ctl.toggleStage([4, 2]);
    ctl.toggleStage([5, 3]);
    expect(await ctl.endRound()).toBe(true);
    ctl.toggleStage([6, 5]);
    expect(await ctl.endRound()).toBe(true);

    const dir = mkdtempSync(join(tmpdir(), "triconfig-ui-"));
    const path = join(dir, "exported.json");
    writeFileSync(path, JSON.stringify(ctl.exportSolution()));
    const verify = spawnSync(PYTHON, ["-m", "triconfig", "verify", "--file", path], {
      encoding: "utf-8",
    });
    expect(verify.status).toBe(0);
    expect(verify.stdout).toContain("score 3");

    const hash = spawnSync(
      PYTHON,
      ["-m", "triconfig", "verify", "--file", path, "--hash"],
      { encoding: "utf-8" },
    );
    expect(hash.stdout.trim()).toBe(ctl.state?.hash);
  }, 30_000);

  it("renders killed cells identical to the live payload after re-fetch", async () => {
    const ctl = new SessionController(new PuzzleApi(BASE));
    await ctl.newGame({ kind: "triangular", n: 8 }, ["nested", "swords"]);
    ctl.toggleStage([5, 2]);
    ctl.toggleStage([6, 3]);
    expect(await ctl.endRound()).toBe(true);

    const view = buildBoard(ctl.state!, ctl.causes, ctl.staged);
    expect(JSON.stringify(renderedKilled(view))).toBe(
      JSON.stringify(
        [...ctl.state!.killed].sort((a, b) => a[0] - b[0] || a[1] - b[1]),
      ),
    );

    const beforeCells = JSON.stringify([
      ...buildBoard(ctl.state!, ctl.causes, new Set()).cells.entries(),
    ]);
    await ctl.refetch();
    const afterCells = JSON.stringify([
      ...buildBoard(ctl.state!, ctl.causes, new Set()).cells.entries(),
    ]);
    expect(afterCells).toBe(beforeCells);
  }, 30_000);

  it("a same-row pair under taco comes back as a 400 violation", async () => {
    const ctl = new SessionController(new PuzzleApi(BASE));
    await ctl.newGame({ kind: "triangular", n: 6 }, ["taco"]);
    ctl.toggleStage([3, 1]);
    ctl.toggleStage([4, 1]);
    expect(await ctl.endRound()).toBe(false);
    expect(ctl.lastViolation?.config).toBe("taco");
    expect(ctl.state?.score).toBe(0);
  }, 30_000);
});
