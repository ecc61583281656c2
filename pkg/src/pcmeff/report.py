"""Request/response models and the versioned report serialization.

The JSON report (schema tag "report_v1") is the single wire format for
verdicts: the HTTP service returns it and the CLI prints it, through the
same builder, so the two surfaces are byte-identical for identical inputs.
Indices in the JSON are 1-based to match how judgment matrices are written
down; the Python API underneath is 0-based.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .digraph import TAU_EQ, to_dot
from .efficiency import EPS_OPT, EfficiencyReport, analyze
from .errors import ValidationError
from .matrix import (
    PairwiseComparisonMatrix,
    WeightVector,
    geometric_mean_vector,
    principal_eigenvector,
)
from .matrix import _parse_entry  # fraction-aware scalar parser

SCHEMA_VERSION = "report_v1"

EIGENVECTOR = "eigenvector"
GEOMETRIC_MEAN = "geometric_mean"
CUSTOM = "custom"

Method = Literal["eigenvector", "geometric_mean", "custom"]


class MatrixPayload(BaseModel):
    """Matrix as wire data; entries may be numbers or "p/q" fraction strings."""

    n: Optional[int] = None
    entries: list[list[Union[float, str]]]


class AnalysisOptions(BaseModel):
    tau_eq: float = TAU_EQ
    eps_opt: float = EPS_OPT


class AnalysisRequest(BaseModel):
    matrix: MatrixPayload
    method: Method = EIGENVECTOR
    custom_weights: Optional[list[float]] = None
    options: AnalysisOptions = AnalysisOptions()


class IndexSetsModel(BaseModel):
    overshoot: list[list[int]]
    ties: list[list[int]]


class GraphModel(BaseModel):
    strongly_connected: bool
    scc_partition: list[list[int]]
    outdegrees: list[int]
    acyclic_tournament: bool
    topological_order: Optional[list[int]]


class CertificateRow(BaseModel):
    i: int
    j: int
    old: float
    new: float


class ReportModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    n: int
    matrix: list[list[float]]
    method: str
    weights: list[float]
    lambda_max: Optional[float]
    verdict: str
    weak_verdict: str
    lp_optimum: Optional[float]
    weak_lp_optimum: Optional[float]
    index_sets: IndexSetsModel
    graph: GraphModel
    dominator: Optional[list[float]]
    dominance_certificate: list[CertificateRow]
    near_ties: list[list[int]]
    dot: str
    options: AnalysisOptions

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


class DominateResponse(BaseModel):
    verdict: str
    weak_verdict: str
    dominator: Optional[list[float]]
    dominance_certificate: list[CertificateRow]


class WeightsResponse(BaseModel):
    n: int
    method: str
    weights: list[float]
    lambda_max: Optional[float]


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str = __version__


def matrix_from_payload(payload: MatrixPayload) -> PairwiseComparisonMatrix:
    rows = []
    for row in payload.entries:
        rows.append([
            _parse_entry(x) if isinstance(x, str) else float(x) for x in row
        ])
    if payload.n is not None and payload.n != len(rows):
        raise ValidationError('"n" does not match the entry grid')
    return PairwiseComparisonMatrix(np.array(rows, dtype=float))


def resolve_weights(
    m: PairwiseComparisonMatrix,
    method: str,
    custom_weights=None,
) -> tuple[WeightVector, float | None]:
    """Weight vector for a request; lambda_max only for the eigenvector."""
    if method == EIGENVECTOR:
        w, lam = principal_eigenvector(m)
        return w, lam
    if method == GEOMETRIC_MEAN:
        return geometric_mean_vector(m), None
    if method == CUSTOM:
        if custom_weights is None or len(custom_weights) != m.n:
            raise ValidationError("custom method needs custom_weights of length n")
        return WeightVector(np.asarray(custom_weights, dtype=float)).sum_one(), None
    raise ValidationError(f"unknown method {method!r}")


def _pairs_1based(pairs) -> list[list[int]]:
    return [[i + 1, j + 1] for i, j in pairs]


def report_model(
    report: EfficiencyReport,
    method: str,
    lambda_max: float | None,
    options: AnalysisOptions,
) -> ReportModel:
    gv = report.graph_verdict
    return ReportModel(
        n=report.matrix.n,
        matrix=[[float(x) for x in row] for row in report.matrix.entries],
        method=method,
        weights=[float(x) for x in report.weights.values],
        lambda_max=lambda_max,
        verdict=report.verdict,
        weak_verdict=report.weak_verdict,
        lp_optimum=report.lp_optimum,
        weak_lp_optimum=report.weak_lp_optimum,
        index_sets=IndexSetsModel(
            overshoot=_pairs_1based(report.index_sets.overshoot),
            ties=_pairs_1based(report.index_sets.ties),
        ),
        graph=GraphModel(
            strongly_connected=gv.strongly_connected,
            scc_partition=[[i + 1 for i in c] for c in gv.scc_partition],
            outdegrees=list(gv.outdegrees),
            acyclic_tournament=gv.acyclic_tournament,
            topological_order=(
                None if gv.topological_order is None
                else [i + 1 for i in gv.topological_order]
            ),
        ),
        dominator=(
            None if report.dominator is None
            else [float(x) for x in report.dominator.values]
        ),
        dominance_certificate=[
            CertificateRow(i=i + 1, j=j + 1, old=old, new=new)
            for i, j, old, new in report.dominance_certificate
        ],
        near_ties=_pairs_1based(report.digraph.near_ties),
        dot=to_dot(report.digraph),
        options=options,
    )


def run_analysis(request: AnalysisRequest) -> ReportModel:
    """Full pipeline: payload -> matrix -> weights -> merged verdict report."""
    m = matrix_from_payload(request.matrix)
    w, lam = resolve_weights(m, request.method, request.custom_weights)
    report = analyze(m, w, request.options.tau_eq, request.options.eps_opt)
    return report_model(report, request.method, lam, request.options)
