"""The HTTP annotator: one model worker behind POST /v1/annotate."""

from __future__ import annotations

import threading

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from annotator_adapter.chunking import Classifier, annotate_text
from annotator_adapter.config import AdapterConfig


class ModelLoadFailure(Exception):
    """The configured model could not be loaded; startup must abort."""


def load_hf_classifier(config: AdapterConfig) -> Classifier:
    """Token-classification pipeline emitting (start, end, label, score).

    Labels pass through exactly as the model reports them.
    """
    try:
        from transformers import pipeline
    except ImportError as exc:
        raise ModelLoadFailure(f"transformers is not installed: {exc}") from None
    try:
        pipe = pipeline(
            "token-classification",
            model=config.model_id,
            aggregation_strategy="simple",
            device=-1 if config.device == "cpu" else config.device,
        )
    except Exception as exc:  # model hub errors are not a stable hierarchy
        raise ModelLoadFailure(f"cannot load model {config.model_id!r}: {exc}") from None

    def classify(window: str):
        for entity in pipe(window):
            yield (
                int(entity["start"]),
                int(entity["end"]),
                str(entity.get("entity_group") or entity.get("entity") or ""),
                float(entity["score"]),
            )

    return classify


def create_app(config: AdapterConfig, classifier: Classifier | None = None) -> FastAPI:
    """classifier=None loads the configured model; tests inject their own."""
    if classifier is None:
        classifier = load_hf_classifier(config)
    app = FastAPI(title="annotator-adapter", docs_url=None, redoc_url=None)
    # one inference at a time per worker
    inference_lock = threading.Lock()

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"code": "InternalError", "message": str(exc)},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "model": config.model_id}

    @app.post("/v1/annotate")
    async def annotate(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse(
                status_code=400,
                content={"code": "BadRequest", "message": "body must be JSON"},
            )
        documents = payload.get("documents") if isinstance(payload, dict) else None
        if not isinstance(documents, list):
            return JSONResponse(
                status_code=400,
                content={"code": "BadRequest", "message": "expected {'documents': [...]}"},
            )
        predictions = []
        for doc in documents:
            if not isinstance(doc, dict) or not isinstance(doc.get("text"), str):
                return JSONResponse(
                    status_code=400,
                    content={"code": "BadRequest", "message": "documents need doc_id and text"},
                )
            with inference_lock:
                spans = annotate_text(
                    doc["text"], classifier, config.max_chunk, config.overlap
                )
            predictions.append({"doc_id": doc.get("doc_id", ""), "spans": spans})
        return {"predictions": predictions}

    return app


def serve_annotator(config: AdapterConfig, classifier: Classifier | None = None) -> None:
    import uvicorn

    app = create_app(config, classifier)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
