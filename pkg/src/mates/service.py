"""HTTP JSON API over the knowledge base and both consultation flows.

`create_app` builds a self-contained FastAPI application around one
immutable knowledge base. All payloads are rendered through `wire`, so a
response body is byte-identical to serializing the corresponding
diagnosis-module result. A built web UI can be mounted at `/`; without
one the API still serves, with a plain placeholder page at the root.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import wire
from .diagnosis import Query, consult_by_disease, rank
from .kb import KnowledgeBase, UnknownIdError, default_kb, validate

_PLACEHOLDER_PAGE = """<!doctype html>
<html>
<head><meta charset="utf-8"><title>MatES</title></head>
<body>
<h1>MatES consultation service</h1>
<p>The API is running under <code>/api/v1/</code>. No web UI bundle is
installed; start the server with a UI directory to serve one here.</p>
</body>
</html>
"""


class DiseaseConsultRequest(BaseModel):
    disease_ids: list[str]


class SymptomConsultRequest(BaseModel):
    symptom_ids: list[str]


class _ApiFailure(Exception):
    """Carries a status code plus ApiError fields to the response layer."""

    def __init__(self, status: int, code: str, message: str,
                 offending_ids: tuple[str, ...] = ()) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.offending_ids = offending_ids


def _json(payload: object, status: int = 200) -> Response:
    return Response(content=wire.to_json_bytes(payload), status_code=status,
                    media_type="application/json")


def create_app(kb: KnowledgeBase | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    """Build the API app for one knowledge base (default: the bundled one).

    The KB is validated here, once. If it is invalid the app still
    constructs, but every API request answers 500 `kb_invalid`; the CLI
    refuses to start a server in that state, so this path is only
    reachable by embedding callers.
    """
    if kb is None:
        kb = default_kb()
    violations = validate(kb)

    app = FastAPI(title="MatES", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.kb = kb
    app.state.violations = violations

    def guard() -> None:
        if violations:
            detail = "; ".join(f"{v.kind}({v.subject})" for v in violations)
            raise _ApiFailure(500, "kb_invalid",
                              f"knowledge base failed validation: {detail}")

    @app.exception_handler(_ApiFailure)
    async def on_failure(request: Request, exc: _ApiFailure) -> Response:
        body = wire.error_body(exc.code, exc.message, exc.offending_ids)
        return _json(body, status=exc.status)

    @app.exception_handler(UnknownIdError)
    async def on_unknown_id(request: Request, exc: UnknownIdError) -> Response:
        body = wire.error_body("unknown_id", str(exc), exc.offending_ids)
        return _json(body, status=404)

    @app.exception_handler(RequestValidationError)
    async def on_bad_body(request: Request, exc: RequestValidationError) -> Response:
        detail = "; ".join(
            ".".join(str(part) for part in err["loc"]) + ": " + err["msg"]
            for err in exc.errors()
        )
        body = wire.error_body("bad_request", f"invalid request: {detail}")
        return _json(body, status=400)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException) -> Response:
        body = wire.error_body("bad_request", str(exc.detail))
        return _json(body, status=exc.status_code)

    @app.get("/api/v1/symptoms")
    def list_symptoms() -> Response:
        guard()
        return _json(wire.symptom_catalog(kb))

    @app.get("/api/v1/diseases")
    def list_diseases() -> Response:
        guard()
        return _json(wire.disease_catalog(kb))

    @app.post("/api/v1/consult/disease")
    def consult_disease(body: DiseaseConsultRequest) -> Response:
        guard()
        if not body.disease_ids:
            raise _ApiFailure(400, "bad_request", "disease_ids must be nonempty")
        advice = consult_by_disease(kb, body.disease_ids)
        return _json(wire.consult_disease_body(kb, advice))

    @app.post("/api/v1/consult/symptoms")
    def consult_symptoms(body: SymptomConsultRequest) -> Response:
        guard()
        result = rank(kb, Query.of(body.symptom_ids))
        return _json(wire.consult_symptoms_body(kb, result))

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:
        @app.get("/", include_in_schema=False)
        def placeholder() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER_PAGE)

    return app
