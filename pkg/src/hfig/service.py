"""HTTP render service: POST a data source, get back SVG or layout JSON.

Stateless by design: responses depend only on the request, nothing is persisted
and request bodies are never logged (posted documents are health data). The
rendering path is the same code the CLI uses, so responses are byte-identical
to file-based renders.
"""

from __future__ import annotations

import hashlib
import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from . import __version__
from .errors import DatasetError, LayoutOverflow
from .layout import LAYOUT_VERSION, LayoutConfig
from .pipeline import layout_from_source, render_source

DEFAULT_MAX_BODY_BYTES = 5 * 1024 * 1024


def _error(status: int, message: str, path: str | None = None) -> JSONResponse:
    return JSONResponse(status_code=status, content={"path": path, "message": message})


def _parse_query(request: Request) -> dict:
    params = request.query_params
    options: dict = {"snapshots": None, "latest": None, "size": None, "labels": None}

    if "snapshots" in params and "latest" in params:
        raise _QueryError("snapshots", "snapshots and latest are mutually exclusive")
    if "snapshots" in params:
        raw = params["snapshots"]
        try:
            values = tuple(int(part) for part in raw.split(",") if part)
        except ValueError:
            raise _QueryError("snapshots", "must be comma-separated epoch seconds") from None
        if not values or len(set(values)) != len(values):
            raise _QueryError("snapshots", "must list distinct timestamps")
        options["snapshots"] = values
    if "latest" in params:
        try:
            latest = int(params["latest"])
        except ValueError:
            raise _QueryError("latest", "must be an integer") from None
        if latest < 1:
            raise _QueryError("latest", "must be >= 1")
        options["latest"] = latest
    if "size" in params:
        try:
            size = float(params["size"])
        except ValueError:
            raise _QueryError("size", "must be a number") from None
        if size <= 0:
            raise _QueryError("size", "must be positive")
        options["size"] = size
    if "labels" in params:
        if params["labels"] not in ("all", "none"):
            raise _QueryError("labels", "must be 'all' or 'none'")
        options["labels"] = params["labels"]
    return options


class _QueryError(Exception):
    def __init__(self, param: str, message: str):
        self.param = param
        self.message = message
        super().__init__(message)


def create_app(
    config: LayoutConfig | None = None,
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
) -> FastAPI:
    """Build the service app; configuration is fixed at startup."""
    base_config = config if config is not None else LayoutConfig()
    app = FastAPI(title="hfig render service", version=__version__, docs_url=None, redoc_url=None)

    async def _read_body(request: Request) -> bytes | JSONResponse:
        declared = request.headers.get("content-length")
        if declared is not None and declared.isdigit() and int(declared) > max_body_bytes:
            return _error(413, f"body exceeds {max_body_bytes} bytes")
        body = await request.body()
        if len(body) > max_body_bytes:
            return _error(413, f"body exceeds {max_body_bytes} bytes")
        return body

    def _render_response(request: Request, body: bytes, as_layout: bool) -> Response:
        try:
            options = _parse_query(request)
        except _QueryError as exc:
            return _error(400, exc.message, path=f"query.{exc.param}")
        try:
            if as_layout:
                payload = layout_from_source(body, config=base_config, **options).encode("utf-8")
                media_type = "application/json"
            else:
                payload = bytes(render_source(body, config=base_config, **options))
                media_type = "image/svg+xml"
        except DatasetError as exc:
            return _error(400, exc.message, path=exc.path)
        except LayoutOverflow as exc:
            return _error(422, str(exc))
        except ValueError as exc:
            return _error(400, str(exc))
        digest = hashlib.sha256(payload).hexdigest()
        return Response(
            content=payload,
            media_type=media_type,
            headers={"ETag": f'"{digest}"', "X-Content-Sha256": digest},
        )

    @app.post("/render")
    async def render_endpoint(request: Request) -> Response:
        body = await _read_body(request)
        if isinstance(body, JSONResponse):
            return body
        return _render_response(request, body, as_layout=False)

    @app.post("/layout")
    async def layout_endpoint(request: Request) -> Response:
        body = await _read_body(request)
        if isinstance(body, JSONResponse):
            return body
        return _render_response(request, body, as_layout=True)

    @app.get("/healthz")
    async def healthz() -> Response:
        return Response(
            content=json.dumps(
                {"status": "ok", "version": __version__, "layout_version": LAYOUT_VERSION}
            ),
            media_type="application/json",
        )

    return app
