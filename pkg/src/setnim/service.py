"""Stateless JSON engine service used by the play UI.

Every request carries the full game id and position, so any request order
gives the same answers and the process keeps no session state.  Errors map
to ``{code, message}`` bodies: 400 for domain validation, 422 for malformed
requests, 503 for exhausted work budgets (retry with a smaller position).
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .cli import classify_payload, solve_payload
from .errors import BudgetExceededError, SetNimError
from .games import apply_move, builtin_game, check_position, is_legal_move
from .grundy import DEFAULT_BUDGET
from .oracles import oracle_for, solve

#: Games offered in the UI picker; anything the engine knows works too.
CATALOG = [
    ("nim:3", "classic three-stack play"),
    ("cn:3,2", "3-cycle, windows of 2"),
    ("cn:4,2", "4-cycle, windows of 2"),
    ("cn:5,2", "5-cycle, windows of 2"),
    ("cn:5,3", "5-cycle, windows of 3"),
    ("cn:6,3", "6-cycle, windows of 3"),
    ("cn:7,3", "7-cycle, windows of 3"),
    ("cn:7,4", "7-cycle, windows of 4"),
    ("cn:8,3", "8-cycle, windows of 3"),
    ("pn:4,2", "4-path, windows of 2"),
    ("pn:5,3", "5-path, windows of 3"),
    ("pn:6,3", "6-path, windows of 3"),
    ("h", "6-path with the extra end-to-end move"),
]


class GameBody(BaseModel):
    game: str


class PositionBody(GameBody):
    position: list[int]


class MoveBody(PositionBody):
    move: list[int]


def create_app(budget: int = DEFAULT_BUDGET) -> FastAPI:
    app = FastAPI(title="setnim engine", version="0.1.0")

    @app.exception_handler(BudgetExceededError)
    async def _budget_handler(_req: Request, exc: BudgetExceededError):
        return JSONResponse(
            status_code=503,
            content={
                "code": exc.code,
                "message": str(exc),
                "retry": "retry with a smaller position or a larger budget",
            },
        )

    @app.exception_handler(SetNimError)
    async def _domain_handler(_req: Request, exc: SetNimError):
        return JSONResponse(status_code=400, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(_req: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422, content={"code": "BadRequest", "message": str(exc)}
        )

    @app.get("/api/games")
    def games():
        out = []
        for game_id, blurb in CATALOG:
            spec = builtin_game(game_id)
            out.append(
                {
                    "id": spec.id,
                    "n": spec.n,
                    "move_sets": [list(s) for s in spec.move_sets],
                    "description": blurb,
                    "solved": oracle_for(spec.id) is not None,
                }
            )
        return {"games": out}

    @app.post("/api/classify")
    def classify(body: PositionBody):
        return classify_payload(solve(body.game, body.position, budget=budget))

    @app.post("/api/solve")
    def solve_endpoint(body: PositionBody):
        return solve_payload(solve(body.game, body.position, budget=budget))

    @app.post("/api/legal")
    def legal(body: MoveBody):
        spec = builtin_game(body.game)
        ok, reason = is_legal_move(spec, body.position, body.move)
        out = {"legal": ok}
        if reason is not None:
            out["reason"] = reason
        return out

    @app.post("/api/apply")
    def apply_endpoint(body: MoveBody):
        spec = builtin_game(body.game)
        pos = check_position(spec, body.position)
        ok, reason = is_legal_move(spec, pos, body.move)
        if not ok:
            return JSONResponse(
                status_code=400,
                content={"code": "IllegalMove", "message": f"move rejected: {reason}"},
            )
        return {"position": list(apply_move(pos, body.move))}

    @app.post("/api/legal-sets")
    def legal_sets(body: GameBody):
        spec = builtin_game(body.game)
        return {"move_sets": [list(s) for s in spec.move_sets]}

    ui_dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dist.is_dir():  # serve the play UI when it has been built
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dist), html=True), name="ui")

    return app
