"""HTTP JSON service exposing the efficiency analyses.

Stateless: every request is an independent pure computation.  Versioned
under /api/v1; the analyze endpoint returns the "report_v1" document built
in :mod:`pcmeff.report`, byte-identical to the CLI's ``--json`` output.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

from . import __version__
from .errors import (
    ConvergenceError,
    NumericalError,
    ParseError,
    ValidationError,
    VerdictConflict,
)
from .report import (
    AnalysisRequest,
    DominateResponse,
    HealthResponse,
    WeightsResponse,
    matrix_from_payload,
    resolve_weights,
    run_analysis,
)

MAX_BODY_BYTES = 64 * 1024
MAX_ITEMS = 50  # caps the O(n^2) LP row count

app = FastAPI(title="pcmeff", version=__version__)


def _error(status: int, kind: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": kind, "message": message, **extra}
    )


@app.middleware("http")
async def _cap_body_size(request: Request, call_next):
    length = request.headers.get("content-length")
    if length is not None and int(length) > MAX_BODY_BYTES:
        return _error(413, "payload_too_large",
                      f"request body exceeds {MAX_BODY_BYTES} bytes")
    return await call_next(request)


@app.exception_handler(RequestValidationError)
async def _on_request_validation(request: Request, exc: RequestValidationError):
    return _error(400, "validation", "request does not match the schema",
                  details=exc.errors())


@app.exception_handler(ValidationError)
@app.exception_handler(ParseError)
async def _on_domain_validation(request: Request, exc: Exception):
    return _error(400, "validation", str(exc))


@app.exception_handler(VerdictConflict)
async def _on_conflict(request: Request, exc: VerdictConflict):
    gv = exc.graph_verdict
    return _error(
        422, "verdict_conflict", str(exc),
        lp_optimum=exc.lp_optimum,
        graph_strongly_connected=None if gv is None else gv.strongly_connected,
        detail={k: repr(v) for k, v in exc.detail.items()},
    )


@app.exception_handler(ConvergenceError)
@app.exception_handler(NumericalError)
async def _on_numerical(request: Request, exc: Exception):
    return _error(500, "numerical", str(exc))


def _check_size(request_model: AnalysisRequest):
    n = len(request_model.matrix.entries)
    if n > MAX_ITEMS:
        raise ValidationError(f"matrix size {n} exceeds the cap of {MAX_ITEMS}")


@app.post("/api/v1/analyze")
def analyze_endpoint(body: AnalysisRequest) -> Response:
    _check_size(body)
    model = run_analysis(body)
    return Response(content=model.to_json(), media_type="application/json")


@app.post("/api/v1/dominate")
def dominate_endpoint(body: AnalysisRequest) -> DominateResponse:
    _check_size(body)
    model = run_analysis(body)
    return DominateResponse(
        verdict=model.verdict,
        weak_verdict=model.weak_verdict,
        dominator=model.dominator,
        dominance_certificate=model.dominance_certificate,
    )


@app.post("/api/v1/weights")
def weights_endpoint(body: AnalysisRequest) -> WeightsResponse:
    _check_size(body)
    m = matrix_from_payload(body.matrix)
    w, lam = resolve_weights(m, body.method, body.custom_weights)
    return WeightsResponse(
        n=m.n,
        method=body.method,
        weights=[float(x) for x in w.values],
        lambda_max=lam,
    )


@app.get("/api/v1/health")
def health_endpoint() -> HealthResponse:
    return HealthResponse()
