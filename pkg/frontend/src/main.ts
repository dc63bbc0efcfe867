/** Browser wiring: renders the BoardView and forwards clicks to the
 * controller.  All state shown here comes from the last server response. */

import { PuzzleApi } from "./api.js";
import { buildBoard, MAX_BOARD_SIDE } from "./board.js";
import { CONFIG_COLORS } from "./colors.js";
import { SessionController } from "./state.js";
import { pointKey } from "./types.js";
import type { Point } from "./types.js";

const api = new PuzzleApi("");
const controller = new SessionController(api);

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function renderLegend(): void {
  const legend = $("legend");
  legend.innerHTML = "";
  for (const [name, color] of Object.entries(CONFIG_COLORS)) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = name;
    box.className = "kind-box";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = color;
    label.append(box, swatch, document.createTextNode(name));
    legend.append(label);
  }
}

function selectedKinds(): string[] {
  return [...document.querySelectorAll<HTMLInputElement>(".kind-box")]
    .filter((b) => b.checked)
    .map((b) => b.value);
}

function banner(text: string, isError: boolean): void {
  const el = $("banner");
  el.textContent = text;
  el.className = isError ? "banner error" : "banner";
}

function render(): void {
  const boardEl = $("board");
  boardEl.innerHTML = "";
  const state = controller.state;
  if (!state) return;
  $("score").textContent =
    `score ${state.score} | rounds left ${state.rounds_left} | X = ${state.X.join(",") || "none"}`;
  const view = buildBoard(state, controller.causes, controller.staged);
  const n = view.n;
  boardEl.style.gridTemplateColumns = `repeat(${n}, 22px)`;
  for (let y = n; y >= 1; y--) {
    for (let x = 1; x <= n; x++) {
      const cellEl = document.createElement("div");
      const key = pointKey([x, y]);
      const cell = view.cells.get(key);
      cellEl.className = "cell";
      if (!cell) {
        cellEl.classList.add("void");
      } else if (cell.kind === "played") {
        cellEl.classList.add("played");
        cellEl.textContent = String(cell.round);
      } else if (cell.kind === "killed") {
        cellEl.classList.add("killed");
        cellEl.style.background = cell.color;
        cellEl.title = `killed by ${cell.by[0]},${cell.by[1]} (${cell.config})`;
      } else if (cell.kind === "pending") {
        cellEl.classList.add("pending");
      }
      if (cell) {
        cellEl.addEventListener("click", () => {
          controller.toggleStage([x, y] as Point);
          render();
        });
      }
      boardEl.append(cellEl);
    }
  }
}

async function guard(action: () => Promise<void>): Promise<void> {
  try {
    await action();
    const v = controller.lastViolation;
    if (v) {
      const pts = v.points.map((p) => `(${p[0]},${p[1]})`).join(" vs ");
      banner(`rejected: ${v.reason} ${pts} forms ${v.config ?? "?"}`, true);
    } else {
      banner("", false);
    }
  } catch (err) {
    banner(String(err), true);
  }
  render();
}

function download(filename: string, payload: unknown): void {
  const blob = new Blob([JSON.stringify(payload, null, 2)], {
    type: "application/json",
  });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = filename;
  a.click();
  URL.revokeObjectURL(a.href);
}

function init(): void {
  renderLegend();
  const sizeInput = $<HTMLInputElement>("size");
  sizeInput.max = String(MAX_BOARD_SIDE);

  $("new-game").addEventListener("click", () =>
    guard(async () => {
      const kind = $<HTMLSelectElement>("grid-kind").value;
      const n = Math.min(Number(sizeInput.value), MAX_BOARD_SIDE);
      await controller.newGame({ kind, n }, selectedKinds());
    }),
  );
  $("end-round").addEventListener("click", () =>
    guard(async () => {
      await controller.endRound();
    }),
  );
  $("undo").addEventListener("click", () => guard(() => controller.undo()));
  $("export").addEventListener("click", () => {
    download("solution.json", controller.exportSolution());
  });
  $("load-construction").addEventListener("click", () =>
    guard(async () => {
      const id = $<HTMLSelectElement>("construction-id").value;
      const n = Math.min(Number(sizeInput.value), MAX_BOARD_SIDE);
      const file = await controller.loadConstruction(id, n);
      banner(`replayed ${id}(${n}): score ${file.score}`, false);
    }),
  );
}

init();
