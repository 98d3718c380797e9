"""HTTP face of the pipeline.

One long-lived process keeps the knowledge tables loaded and the search
cache warm for any number of editor or terminal clients.  Content-level
failures come back as enhanced=false with a note; only a malformed
request is an HTTP-level error.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..errors import NotAnError, QuotaExhausted, TransportError
from ..knowledge import default_tables, load_tables
from ..pipeline import enhance, format_structured, summary_config_for
from ..stackoverflow import DEFAULT_TTL_SECONDS, FixtureTransport, LiveTransport
from ..tracebacks import RawCapture, parse_traceback
from .models import (
    EnhanceRequest,
    EnhanceResponse,
    HealthResponse,
    ParsedErrorModel,
    ParseRequest,
)


def create_app(
    data_dir: Path | str | None = None,
    fixtures_dir: Path | str | None = None,
    cache_dir: Path | str | None = None,
    ttl_seconds: int = DEFAULT_TTL_SECONDS,
) -> FastAPI:
    kb = load_tables(Path(data_dir)) if data_dir else default_tables()
    transport = FixtureTransport(fixtures_dir) if fixtures_dir else LiveTransport()
    use_cache = fixtures_dir is None

    app = FastAPI(title="errlens", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/parse", response_model=ParsedErrorModel)
    def parse(request: ParseRequest) -> ParsedErrorModel:
        capture = RawCapture(request.stderr_text, request.source_path, request.source_text)
        try:
            return ParsedErrorModel.from_parsed(parse_traceback(capture))
        except NotAnError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/enhance", response_model=EnhanceResponse)
    def enhance_endpoint(request: EnhanceRequest) -> EnhanceResponse:
        capture = RawCapture(request.stderr_text, request.source_path, request.source_text)
        try:
            err = parse_traceback(capture)
        except NotAnError as exc:
            return EnhanceResponse(enhanced=False, note=str(exc))
        parsed_model = ParsedErrorModel.from_parsed(err)
        try:
            enhancement = enhance(
                err,
                kb,
                source=request.source,
                transport=transport,
                cache_dir=cache_dir if use_cache else None,
                ttl_seconds=ttl_seconds,
                config=summary_config_for(request.max_sentences),
            )
        except (TransportError, QuotaExhausted) as exc:
            return EnhanceResponse(enhanced=False, error=parsed_model, note=str(exc))
        if enhancement is None:
            return EnhanceResponse(
                enhanced=False, error=parsed_model, note="no suitable answer found"
            )
        return EnhanceResponse(enhanced=True, error=parsed_model, **format_structured(enhancement))

    return app
