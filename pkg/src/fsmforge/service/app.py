"""FastAPI application exposing the analysis pipeline.

Run it with ``fsmforge serve`` or ``uvicorn fsmforge.service.app:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from . import pipeline
from .pipeline import ServiceError
from .schemas import (
    CutRequest,
    CutResponse,
    EnumRequest,
    EnumResponse,
    ErrorInfo,
    GenerateRequest,
    GenerateResponse,
    ParseRequest,
    ParseResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="fsmforge",
        version=__version__,
        description="FSM cut extraction and transition-topology enumeration "
        "for gate-level netlists.",
    )

    @app.exception_handler(ServiceError)
    async def service_error_handler(request: Request, exc: ServiceError):
        info = ErrorInfo(kind=exc.kind, message=exc.message, line=exc.line, col=exc.col)
        return JSONResponse(status_code=exc.status, content=info.model_dump())

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/version")
    def version() -> dict:
        return {"version": __version__}

    @app.post("/parse", response_model=ParseResponse)
    def parse(req: ParseRequest) -> ParseResponse:
        return pipeline.run_parse(req)

    @app.post("/cut", response_model=CutResponse)
    def cut(req: CutRequest) -> CutResponse:
        return pipeline.run_cut(req)

    @app.post("/enum", response_model=EnumResponse)
    def enum(req: EnumRequest) -> EnumResponse:
        return pipeline.run_enum(req)

    @app.post("/generate", response_model=GenerateResponse)
    def generate(req: GenerateRequest) -> GenerateResponse:
        return pipeline.run_generate(req)

    return app


app = create_app()
