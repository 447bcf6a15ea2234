"""JSON-over-HTTP wrapper around the service core."""

from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Sequence

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .catalog import ClothingType
from .service import BoxService, ServiceError

log = logging.getLogger("outfitbox.api")


class OccasionBody(BaseModel):
    occasion: str


class ChoicesBody(BaseModel):
    type: str
    items: Sequence[str]


class ConstraintsBody(BaseModel):
    price_ranges: dict[str, tuple[int, int]]
    budget: int


class FeedbackBody(BaseModel):
    product: str
    liked: bool


def create_app(service: BoxService, webui_dist: str | None = None) -> FastAPI:
    app = FastAPI(title="outfitbox", version="0.1.0")

    @app.exception_handler(ServiceError)
    async def service_error(_: Request, exc: ServiceError):
        return JSONResponse(
            status_code=exc.http_status, content={"error": exc.code, "detail": exc.detail}
        )

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        start = time.perf_counter()
        response = await call_next(request)
        log.info(
            "request method=%s path=%s status=%s duration_ms=%.1f",
            request.method,
            request.url.path,
            response.status_code,
            (time.perf_counter() - start) * 1000,
        )
        return response

    @app.post("/sessions")
    def create_session():
        return service.create_session()

    @app.post("/sessions/{sid}/occasion")
    def set_occasion(sid: str, body: OccasionBody):
        return service.set_occasion(sid, body.occasion)

    @app.get("/sessions/{sid}/items")
    def sample_items(sid: str, type: str, page: int = 0):
        return service.sample_items(sid, ClothingType.parse(type), page)

    @app.post("/sessions/{sid}/choices")
    def set_choices(sid: str, body: ChoicesBody):
        return service.set_choices(sid, ClothingType.parse(body.type), list(body.items))

    @app.post("/sessions/{sid}/constraints")
    def set_constraints(sid: str, body: ConstraintsBody):
        return service.set_constraints(sid, body.price_ranges, body.budget)

    @app.post("/sessions/{sid}/recommend")
    def recommend(sid: str):
        return service.recommend(sid)

    @app.get("/sessions/{sid}/recommendation")
    def get_recommendation(sid: str):
        return service.get_recommendation(sid)

    @app.post("/sessions/{sid}/feedback")
    def record_feedback(sid: str, body: FeedbackBody):
        return service.record_feedback(sid, body.product, body.liked)

    @app.get("/sessions/{sid}/hr")
    def session_hr(sid: str):
        return service.session_hr(sid)

    if webui_dist and Path(webui_dist).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=webui_dist, html=True), name="ui")

    return app
