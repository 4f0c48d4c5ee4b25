"""HTTP surface of the scoring sidecar.

Endpoints (JSON over HTTP/1.1, UTF-8):

* ``GET /v1/health`` -> {"status", "model", "max_context"}; 503 until the
  model is loaded.
* ``POST /v1/score`` with {"text": str, "spans": [[start, end], ...]} ->
  {"spans": [{"subtoken_probs": [...]}, ...], "model": str, "truncated": bool}.

Errors always carry the body {"error": string}: 400 for malformed requests
or bad spans, 422 for a span covering no subtokens, 503 before load.

Configuration comes from the environment: MODEL_NAME (checkpoint, default
bert-base-uncased), PORT, MAX_BATCH (reserved; requests are currently
scored in single forward passes, which batching must not alter anyway).
"""

from __future__ import annotations

import os
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .scoring import EmptySpanError, MaskScorer, SpanError


class ScoreRequest(BaseModel):
    text: str
    spans: list[tuple[int, int]] = Field(min_length=1)


def create_app(model_name: str | None = None, eager: bool = True) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if eager:
            app.state.scorer = MaskScorer(model_name)
        yield

    app = FastAPI(title="mlm-server", lifespan=lifespan)
    app.state.scorer = None
    app.state.max_batch = int(os.environ.get("MAX_BATCH", "8"))

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.exception_handler(SpanError)
    async def bad_spans(request: Request, exc: SpanError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(EmptySpanError)
    async def empty_span(request: Request, exc: EmptySpanError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.get("/v1/health")
    def health():
        scorer = app.state.scorer
        if scorer is None:
            return JSONResponse(status_code=503, content={"error": "model not loaded"})
        return {
            "status": "ok",
            "model": scorer.model_version,
            "max_context": scorer.max_context,
        }

    @app.post("/v1/score")
    def score(request: ScoreRequest):
        scorer = app.state.scorer
        if scorer is None:
            return JSONResponse(status_code=503, content={"error": "model not loaded"})
        outcome = scorer.score(request.text, list(request.spans))
        return {
            "spans": [{"subtoken_probs": s.subtoken_probs} for s in outcome.spans],
            "model": scorer.model_version,
            "truncated": outcome.truncated,
        }

    return app


def serve() -> None:
    import uvicorn

    uvicorn.run(create_app(), host="0.0.0.0", port=int(os.environ.get("PORT", "8321")))


if __name__ == "__main__":
    serve()
