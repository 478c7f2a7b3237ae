"""JSON-over-HTTP facade over the advisory engine for the browser UI and scripts."""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .catalog import Item, ScoredItem, exact_lookup
from .evaluation import evaluate
from .history import HistoryError, SearchSession
from .mining import AssociationRule, MiningConfig
from .recommender import Advice, Engine

DEFAULT_CONSTRAINTS_RESOURCE = "airline_constraints.json"


def load_constraints(path: Path | str | None = None) -> list[dict]:
    """Airline constraint reference data, from a custom path or the bundled file."""
    if path is not None:
        raw = Path(path).read_text(encoding="utf-8")
    else:
        raw = (
            resources.files("atrs.data").joinpath(DEFAULT_CONSTRAINTS_RESOURCE).read_text("utf-8")
        )
    payload = json.loads(raw)
    return payload["constraints"]


def item_to_dict(item: Item) -> dict:
    return {
        "name": item.name,
        "carry_on": item.carry_on,
        "check_in": item.check_in,
        "prohibited": item.prohibited,
        "category": item.category,
        "description": item.description,
    }


def scored_to_dict(scored: ScoredItem, engine: Engine) -> dict:
    return {
        "item": item_to_dict(scored.item),
        "score": scored.score,
        "in_catalog": exact_lookup(engine.catalog, scored.item.name) is not None,
    }


def advice_to_dict(advice: Advice, engine: Engine) -> dict:
    return {
        "query": advice.query,
        "exact": item_to_dict(advice.exact) if advice.exact else None,
        "partials": [item_to_dict(it) for it in advice.partials],
        "similar": [scored_to_dict(si, engine) for si in advice.similar],
        "rule_recommendations": [scored_to_dict(si, engine) for si in advice.rule_recommendations],
        "recorded": advice.recorded,
    }


def session_to_dict(session: SearchSession) -> dict:
    return {
        "index": session.index,
        "items": list(session.items),
        "timestamp": session.timestamp.strftime("%Y-%m-%d %H:%M:%S"),
    }


def rule_to_dict(rule: AssociationRule) -> dict:
    infinite = math.isinf(rule.conviction)
    return {
        "antecedent": sorted(rule.antecedent),
        "consequent": sorted(rule.consequent),
        "support": rule.support,
        "confidence": rule.confidence,
        "lift": rule.lift,
        "leverage": rule.leverage,
        "conviction": None if infinite else rule.conviction,
        "conviction_infinite": infinite,
    }


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


class SearchBody(BaseModel):
    items: list[str]


def create_app(engine: Engine, constraints_path: Path | str | None = None) -> FastAPI:
    """Wire the engine into the JSON API; all mutation funnels through the engine."""
    app = FastAPI(title="baggage advisory service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    constraints = load_constraints(constraints_path)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error(400, "bad_request", "malformed parameters")

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException):
        code = {400: "bad_request", 404: "not_found"}.get(exc.status_code, "error")
        return _error(exc.status_code, code, str(exc.detail))

    @app.exception_handler(Exception)
    async def on_internal_error(request: Request, exc: Exception):
        # never leak internals: stable code, generic message
        return _error(500, "internal", "internal error")

    @app.get("/api/items/{name}")
    def get_item(name: str):
        item = exact_lookup(engine.catalog, name)
        if item is None:
            return _error(404, "not_found", f"no catalog item matches {name!r}")
        return item_to_dict(item)

    @app.get("/api/recommend")
    def get_recommend(q: str, n: int = 5, record: bool = True):
        if n < 1:
            return _error(400, "bad_request", f"n must be >= 1, got {n}")
        advice = engine.advise(q, record=record, top_n=n)
        return advice_to_dict(advice, engine)

    @app.get("/api/history")
    def get_history():
        return [session_to_dict(s) for s in engine.store.sessions]

    @app.post("/api/search")
    def post_search(body: SearchBody):
        if not body.items:
            return _error(400, "bad_request", "items must be a non-empty list")
        try:
            session = engine.record_items(body.items)
        except HistoryError as exc:
            return _error(400, "bad_request", str(exc))
        if session is None:
            return {"recorded": False, "session": None}
        return {"recorded": True, "session": session_to_dict(session)}

    @app.get("/api/rules")
    def get_rules(min_support: float | None = None, min_confidence: float | None = None):
        if min_support is None and min_confidence is None:
            rules = engine.rules
        else:
            try:
                config = MiningConfig(
                    min_support=min_support if min_support is not None else engine.config.mining.min_support,
                    min_confidence=min_confidence
                    if min_confidence is not None
                    else engine.config.mining.min_confidence,
                    max_itemset_size=engine.config.mining.max_itemset_size,
                )
            except ValueError as exc:
                return _error(400, "bad_request", str(exc))
            rules = engine.mine_with(config)
        return [rule_to_dict(r) for r in rules]

    @app.get("/api/metrics")
    def get_metrics():
        label = engine.history_path.name if engine.history_path else "history"
        return evaluate(engine.rules, engine.universe, dataset_label=label).to_dict()

    @app.get("/api/constraints")
    def get_constraints():
        return constraints

    return app
