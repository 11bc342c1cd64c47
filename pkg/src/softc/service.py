"""HTTP compile service.

Stateless JSON API over the pipeline: ``POST /api/compile`` takes the
structured truth-table form plus family/output/window options and returns
the full compile result; ``GET /api/families`` lists the gate libraries.
A built web UI can be mounted as static files at the root.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, Field

from .errors import InternalVerificationFailure, SoftcError, UnknownFamily
from .netlist import family_registry, family_to_struct
from .pipeline import compile_pipeline, compile_result_to_struct
from .truthtable import table_from_struct


class TableRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    in_bits: str = Field(alias="in")
    out_bits: str = Field(alias="out")


class Window(BaseModel):
    cols: int
    rows: int


class CompileRequest(BaseModel):
    inputs: list[str]
    outputs: list[str]
    rows: list[TableRow]
    family: str = "sbv"
    output: Optional[str] = None
    window: Optional[Window] = None


def _status_for(exc: SoftcError) -> int:
    if isinstance(exc, InternalVerificationFailure):
        return 500
    if isinstance(exc, UnknownFamily):
        return 404
    return 400


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="soft circuit compiler", version="0.1.0")

    @app.exception_handler(SoftcError)
    async def softc_error_handler(request: Request, exc: SoftcError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": exc.code, "message": exc.message},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "BadRequest", "message": str(exc.errors()[:3])},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/api/families")
    def families():
        return [family_to_struct(f) for f in family_registry()]

    @app.post("/api/compile")
    def compile_table(
        request: CompileRequest,
        format: str = Query("json", pattern="^(json|svg)$"),
        page: int = Query(0, ge=0),
    ):
        table = table_from_struct(
            {
                "inputs": request.inputs,
                "outputs": request.outputs,
                "rows": [{"in": r.in_bits, "out": r.out_bits} for r in request.rows],
            }
        )
        output_index = (
            table.output_index(request.output) if request.output is not None else 0
        )
        window = (request.window.cols, request.window.rows) if request.window else None
        result = compile_pipeline(
            table,
            output_index=output_index,
            family_id=request.family,
            window=window,
        )
        if format == "svg":
            if page >= len(result.svg_pages):
                return JSONResponse(
                    status_code=400,
                    content={
                        "error": "BadRequest",
                        "message": f"page {page} out of range",
                    },
                )
            return Response(
                content=result.svg_pages[page], media_type="image/svg+xml"
            )
        return JSONResponse(content=compile_result_to_struct(result))

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webui")

    return app
