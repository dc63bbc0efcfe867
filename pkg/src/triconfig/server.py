"""JSON API wrapping the dot-puzzle engine, one session per game.

Sessions live in memory behind an LRU cap; every mutation goes through
``PuzzleState.play_round``, so the service can never accept a round the
engine would reject.  Payloads reuse the solution-file JSON shapes.
"""

from __future__ import annotations

import os
import threading
import uuid
from collections import OrderedDict
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .constructions import (
    ConstructionSpec,
    construction_ids,
    generate,
    output_kind,
    OUT_PUZZLE,
)
from .core import ForbiddenSet
from .puzzle import Grid, PuzzleState, PuzzleViolation

SESSION_CAP = 128


class GridModel(BaseModel):
    kind: str = "triangular"
    n: int = Field(ge=1, le=64)


class SessionRequest(BaseModel):
    grid: GridModel
    X: list[str] = []


class RoundRequest(BaseModel):
    points: list[tuple[int, int]]


class _Store:
    """LRU session map; a session's mutations are serialized, reads are free."""

    def __init__(self, cap: int = SESSION_CAP):
        self.cap = cap
        self._lock = threading.Lock()
        self._sessions: "OrderedDict[str, PuzzleState]" = OrderedDict()

    def create(self, state: PuzzleState) -> str:
        sid = uuid.uuid4().hex[:12]
        with self._lock:
            self._sessions[sid] = state
            while len(self._sessions) > self.cap:
                self._sessions.popitem(last=False)
        return sid

    def get(self, sid: str) -> PuzzleState:
        with self._lock:
            if sid not in self._sessions:
                raise HTTPException(status_code=404, detail=f"unknown session {sid}")
            self._sessions.move_to_end(sid)
            return self._sessions[sid]

    def mutate(self, sid: str, step) -> PuzzleState:
        """Apply ``step`` to the current state atomically; states are
        immutable values, so holding the lock across the step is what makes
        two concurrent rounds on one session appear in some serial order."""
        with self._lock:
            if sid not in self._sessions:
                raise HTTPException(status_code=404, detail=f"unknown session {sid}")
            new_state = step(self._sessions[sid])
            self._sessions[sid] = new_state
            self._sessions.move_to_end(sid)
            return new_state


def _state_payload(sid: str, state: PuzzleState) -> dict:
    data = state.to_json()
    data.update(
        {
            "id": sid,
            "score": state.score,
            "killed": [list(p) for p in sorted(state.killed)],
            "survivors": [list(p) for p in sorted(state.survivors())],
            "rounds_left": state.grid.max_rounds - len(state.rounds),
            "hash": state.state_hash(),
        }
    )
    return data


def create_app() -> FastAPI:
    app = FastAPI(title="triconfig dot puzzle")
    store = _Store()

    @app.post("/session")
    def create_session(req: SessionRequest) -> dict:
        try:
            grid = Grid(req.grid.kind, req.grid.n)
            x = ForbiddenSet.parse(",".join(req.X) or "none")
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        state = PuzzleState.new(grid, x)
        sid = store.create(state)
        return _state_payload(sid, state)

    @app.get("/session/{sid}")
    def get_session(sid: str) -> dict:
        return _state_payload(sid, store.get(sid))

    @app.post("/session/{sid}/round")
    def play_round(sid: str, req: RoundRequest) -> dict:
        try:
            new_state = store.mutate(
                sid, lambda s: s.play_round([tuple(p) for p in req.points])
            )
        except PuzzleViolation as exc:
            raise HTTPException(status_code=400, detail=exc.to_json()) from None
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return _state_payload(sid, new_state)

    @app.post("/session/{sid}/undo")
    def undo(sid: str) -> dict:
        try:
            new_state = store.mutate(sid, lambda s: s.undo())
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        return _state_payload(sid, new_state)

    @app.get("/session/{sid}/killed")
    def killed(sid: str) -> dict:
        state = store.get(sid)
        causes = state.killed_with_causes()
        return {
            "id": sid,
            "killed": [
                {
                    "point": list(q),
                    "by": list(causes[q][0]),
                    "config": causes[q][1].mnemonic,
                }
                for q in sorted(causes)
            ],
        }

    @app.get("/constructions/{cid}")
    def construction(cid: str, n: int) -> dict:
        if cid not in construction_ids():
            raise HTTPException(status_code=404, detail=f"unknown construction {cid}")
        spec = ConstructionSpec(cid, n)
        if output_kind(spec) != OUT_PUZZLE:
            raise HTTPException(
                status_code=400, detail=f"{cid} is not a puzzle construction"
            )
        try:
            state = generate(spec)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        data = state.to_json()
        data["score"] = state.score
        data["hash"] = state.state_hash()
        return data

    frontend = _frontend_dir()
    if frontend is not None:
        app.mount("/", StaticFiles(directory=frontend, html=True), name="ui")

    return app


def _frontend_dir() -> Path | None:
    """Locate the built browser client, if present; API-only otherwise."""
    override = os.environ.get("TRICONFIG_FRONTEND")
    candidates = [Path(override)] if override else [
        Path(__file__).resolve().parents[2] / "frontend",
    ]
    for candidate in candidates:
        if candidate.is_dir() and (candidate / "index.html").is_file():
            return candidate
    return None
