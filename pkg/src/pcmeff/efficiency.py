"""Pareto efficiency tests for weight vectors.

Two independent routes decide every verdict and must agree:

* a combinatorial route: strong connectivity of the dominance digraph
  (efficiency), or its degeneration into the acyclic tournament (strict
  improvability in every position), and
* a linear-programming route: a log-domain program whose optimum is 0
  exactly when no improving vector exists, and whose optimal point, made
  positive again componentwise, is an improving vector otherwise.

Disagreement beyond tolerance raises VerdictConflict instead of silently
trusting either side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import simplex
from .digraph import (
    TAU_EQ,
    DominanceDigraph,
    GraphVerdict,
    build_digraph,
    strongly_connected,
)
from .errors import (
    ConsistentInput,
    EqualityWitness,
    NumericalError,
    PreconditionError,
    ValidationError,
    VerdictConflict,
)
from .matrix import (
    SUM_ONE,
    PairwiseComparisonMatrix,
    WeightVector,
    ratio_matrix,
    residuals,
)

# Verdict cut on the LP optimum.  Log-domain data is O(1) for judgment-scale
# entries, so 1e-7 sits far above simplex feasibility noise and far below
# real dominance gaps.
EPS_OPT = 1e-7

# Relative guard for the ratio comparisons inside the dominance checker.
DOM_TOL = 1e-9

EFFICIENT = "efficient"
INEFFICIENT = "inefficient"
WEAKLY_EFFICIENT = "weakly_efficient"
STRONGLY_INEFFICIENT = "strongly_inefficient"

KIND_NONE = "none"
KIND_DOMINATES = "dominates"
KIND_INTERNAL = "dominates_internally"
KIND_STRONG = "dominates_strongly"


@dataclass(frozen=True)
class IndexSets:
    """Classification of the off-diagonal positions of a pair.

    ``overshoot`` holds ordered pairs (i, j) whose ratio w_i/w_j strictly
    exceeds a_ij; ``ties`` holds pairs (i, j), i < j, whose ratio matches
    a_ij within the tie band.  Every unordered pair lands in exactly one of
    {overshoot as (i,j), overshoot as (j,i), ties}.
    """

    overshoot: tuple
    ties: tuple


@dataclass(frozen=True)
class DominanceRelation:
    """Outcome of comparing a candidate vector against an incumbent."""

    kind: str
    is_dominating: bool
    is_internal: bool
    is_strong: bool


@dataclass(eq=False)
class EfficiencyReport:
    """Everything a caller needs to audit a verdict."""

    matrix: PairwiseComparisonMatrix
    weights: WeightVector
    index_sets: IndexSets
    digraph: DominanceDigraph
    graph_verdict: GraphVerdict
    verdict: str | None = None
    weak_verdict: str | None = None
    lp_optimum: float | None = None
    weak_lp_optimum: float | None = None
    dominator: WeightVector | None = None
    dominance_certificate: tuple = ()
    provenance: dict = field(default_factory=dict)


def index_sets(
    m: PairwiseComparisonMatrix, w: WeightVector, tau_eq: float = TAU_EQ
) -> IndexSets:
    """Split ordered pairs into strict overshoots and ties (see IndexSets)."""
    a = m.entries
    v = w.values
    if v.size != m.n:
        raise ValidationError("weight vector length does not match matrix size")
    overshoot = []
    ties = []
    for i in range(m.n):
        for j in range(i + 1, m.n):
            rel = (v[i] / v[j]) / a[i, j]
            if abs(rel - 1.0) <= tau_eq:
                ties.append((i, j))
            elif rel > 1.0:
                overshoot.append((i, j))
            else:
                overshoot.append((j, i))
    return IndexSets(tuple(sorted(overshoot)), tuple(ties))


def _log_data(m: PairwiseComparisonMatrix, w: WeightVector):
    return np.log(m.entries), np.log(w.values)


def build_efficiency_lp(
    m: PairwiseComparisonMatrix, w: WeightVector, sets: IndexSets
) -> simplex.LpProblem:
    """Log-domain efficiency program for the pair.

    Variables: one free y per item (y_1 pinned to 0, i.e. first-one
    normalization of the candidate) and one slack s >= 0 per overshoot
    pair measuring how far that ratio moved toward its matrix entry.
    Objective: minimize the negated sum of slacks, so the optimum is 0
    exactly when no ratio can move without pushing another one away.
    """
    if not sets.overshoot:
        raise ConsistentInput(
            "no ratio overshoots its entry: the vector reproduces the matrix "
            "and is efficient"
        )
    b, v = _log_data(m, w)
    n = m.n
    nvar = n + len(sets.overshoot)
    names = [f"y{k + 1}" for k in range(n)]
    names += [f"s_{i + 1}_{j + 1}" for i, j in sets.overshoot]

    objective = np.zeros(nvar)
    objective[n:] = -1.0
    rows = []
    for k, (i, j) in enumerate(sets.overshoot):
        lhs = np.zeros(nvar)
        lhs[j], lhs[i] = 1.0, -1.0
        rows.append(simplex.LpConstraint(lhs, simplex.LE, -b[i, j]))
        lhs = np.zeros(nvar)
        lhs[i], lhs[j] = 1.0, -1.0
        lhs[n + k] = 1.0
        rows.append(simplex.LpConstraint(lhs, simplex.LE, v[i] - v[j]))
    for i, j in sets.ties:
        lhs = np.zeros(nvar)
        lhs[i], lhs[j] = 1.0, -1.0
        rows.append(simplex.LpConstraint(lhs, simplex.EQ, b[i, j]))
    anchor = np.zeros(nvar)
    anchor[0] = 1.0
    rows.append(simplex.LpConstraint(anchor, simplex.EQ, 0.0))

    free = np.zeros(nvar, dtype=bool)
    free[:n] = True
    return simplex.LpProblem(objective, rows, free, tuple(names))


def build_weak_lp(
    m: PairwiseComparisonMatrix, w: WeightVector, sets: IndexSets
) -> simplex.LpProblem:
    """Log-domain weak-efficiency program: one shared slack for all pairs.

    Requires a tie-free pair (a tie already certifies weak efficiency), in
    which case the overshoot set covers every unordered pair once.
    """
    if sets.ties:
        raise EqualityWitness(
            "some ratio matches its entry exactly; the vector is weakly "
            "efficient without solving"
        )
    b, v = _log_data(m, w)
    n = m.n
    nvar = n + 1
    names = tuple([f"y{k + 1}" for k in range(n)] + ["s"])

    objective = np.zeros(nvar)
    objective[n] = -1.0
    rows = []
    for i, j in sets.overshoot:
        lhs = np.zeros(nvar)
        lhs[j], lhs[i] = 1.0, -1.0
        rows.append(simplex.LpConstraint(lhs, simplex.LE, -b[i, j]))
        lhs = np.zeros(nvar)
        lhs[i], lhs[j] = 1.0, -1.0
        lhs[n] = 1.0
        rows.append(simplex.LpConstraint(lhs, simplex.LE, v[i] - v[j]))
    anchor = np.zeros(nvar)
    anchor[0] = 1.0
    rows.append(simplex.LpConstraint(anchor, simplex.EQ, 0.0))

    free = np.zeros(nvar, dtype=bool)
    free[:n] = True
    return simplex.LpProblem(objective, rows, free, names)


def dominates(
    m: PairwiseComparisonMatrix,
    candidate: WeightVector,
    incumbent: WeightVector,
    tol: float = DOM_TOL,
) -> DominanceRelation:
    """Strongest dominance relation of candidate over incumbent.

    Plain dominance: no residual grows and at least one shrinks.  Internal
    dominance additionally keeps every ratio on its original side of the
    matrix entry while moving it toward the entry.  Strong dominance
    shrinks every off-diagonal residual strictly.  All comparisons carry a
    relative guard of ``tol`` so vectors produced in floating point do not
    flip verdicts on noise.
    """
    a = m.entries
    rc = ratio_matrix(candidate)
    rw = ratio_matrix(incumbent)
    fc = np.abs(rc - a)
    fw = np.abs(rw - a)
    off = ~np.eye(m.n, dtype=bool)
    slack = tol * np.maximum(1.0, a)

    weak_all = bool(np.all(fc[off] <= (fw + slack)[off]))
    strict_any = bool(np.any(fc[off] < (fw - slack)[off]))
    strong_all = bool(np.all(fc[off] < (fw - slack)[off]))
    is_dominating = weak_all and strict_any

    up = rw >= a  # entry not above the incumbent ratio
    down = rw <= a
    ok_up = ~up | ((rc >= a * (1.0 - tol)) & (rc <= rw * (1.0 + tol)))
    ok_down = ~down | ((rc <= a * (1.0 + tol)) & (rc >= rw * (1.0 - tol)))
    moved = (up & (rc < rw * (1.0 - tol))) | (down & (rc > rw * (1.0 + tol)))
    internal_all = bool(np.all((ok_up & ok_down)[off]))
    internal_any = bool(np.any(moved[off]))
    is_internal = internal_all and internal_any and is_dominating
    is_strong = strong_all

    if is_strong:
        kind = KIND_STRONG
    elif is_internal:
        kind = KIND_INTERNAL
    elif is_dominating:
        kind = KIND_DOMINATES
    else:
        kind = KIND_NONE
    return DominanceRelation(kind, is_dominating, is_internal, is_strong)


def _certificate(m, old_w: WeightVector, new_w: WeightVector) -> tuple:
    """Rows (i, j, old residual, new residual) where the dominator strictly
    improves the approximation."""
    old_r = residuals(m, old_w)
    new_r = residuals(m, new_w)
    slack = 1e-12 * np.maximum(1.0, m.entries)
    out = []
    for i in range(m.n):
        for j in range(m.n):
            if i != j and new_r[i, j] < old_r[i, j] - slack[i, j]:
                out.append((i, j, float(old_r[i, j]), float(new_r[i, j])))
    return tuple(out)


def _exp_weights(y: np.ndarray) -> WeightVector:
    return WeightVector(np.exp(y)).sum_one()


def _solved(lp: simplex.LpProblem, eps_opt: float) -> simplex.LpSolution:
    sol = simplex.solve(lp)
    if sol.status != simplex.OPTIMAL:
        raise NumericalError(f"efficiency program ended {sol.status}")
    if sol.optimum > eps_opt:
        raise NumericalError(
            f"optimum {sol.optimum!r} above zero: the incumbent itself is "
            "feasible, so this cannot happen with a sound solver"
        )
    return sol


def test_efficiency(
    m: PairwiseComparisonMatrix,
    w: WeightVector,
    tau_eq: float = TAU_EQ,
    eps_opt: float = EPS_OPT,
) -> EfficiencyReport:
    """Decide efficiency by LP and digraph together; extract a dominator.

    The two verdicts must agree or VerdictConflict is raised.  When the
    vector is inefficient the returned dominator is itself efficient,
    dominates the input internally, and is post-verified on both counts.
    """
    w = w.sum_one()
    sets = index_sets(m, w, tau_eq)
    g = build_digraph(m, w, tau_eq)
    gv = strongly_connected(g)
    prov = {"normalization": SUM_ONE, "near_ties": _near_ties_1based(g)}

    if not sets.overshoot:
        # Ratios reproduce the matrix exactly: efficient without solving.
        prov["lp"] = "skipped_consistent"
        return EfficiencyReport(
            m, w, sets, g, gv,
            verdict=EFFICIENT,
            provenance=prov,
        )

    lp = build_efficiency_lp(m, w, sets)
    sol = _solved(lp, eps_opt)
    prov["lp"] = "solved"
    prov["lp_iterations"] = sol.iterations
    lp_efficient = sol.optimum >= -eps_opt
    if lp_efficient != gv.strongly_connected:
        raise VerdictConflict(
            "LP and digraph disagree on efficiency",
            lp_optimum=sol.optimum,
            graph_verdict=gv,
            detail={"eps_opt": eps_opt, "near_ties": prov["near_ties"]},
        )

    dominator = None
    certificate = ()
    if not lp_efficient:
        dominator = _exp_weights(sol.assignment[: m.n])
        rel = dominates(m, dominator, w)
        dom_gv = strongly_connected(build_digraph(m, dominator, tau_eq))
        if not rel.is_internal or not dom_gv.strongly_connected:
            raise VerdictConflict(
                "extracted dominator failed post-verification",
                lp_optimum=sol.optimum,
                graph_verdict=dom_gv,
                detail={"relation": rel.kind},
            )
        certificate = _certificate(m, w, dominator)
        prov["dominator_checks"] = ["internal_dominance", "strong_connectivity"]

    return EfficiencyReport(
        m, w, sets, g, gv,
        verdict=EFFICIENT if lp_efficient else INEFFICIENT,
        lp_optimum=float(sol.optimum),
        dominator=dominator,
        dominance_certificate=certificate,
        provenance=prov,
    )


def test_weak_efficiency(
    m: PairwiseComparisonMatrix,
    w: WeightVector,
    tau_eq: float = TAU_EQ,
    eps_opt: float = EPS_OPT,
) -> EfficiencyReport:
    """Decide weak efficiency; on failure, chain to an efficient dominator.

    A tie certifies weak efficiency immediately.  Otherwise the shared
    slack program decides, cross-checked against the acyclic-tournament
    test.  A strictly dominating vector is refined through the efficiency
    test so the reported dominator is efficient as well as strictly
    dominating.
    """
    w = w.sum_one()
    sets = index_sets(m, w, tau_eq)
    g = build_digraph(m, w, tau_eq)
    gv = strongly_connected(g)
    prov = {"normalization": SUM_ONE, "near_ties": _near_ties_1based(g)}

    if sets.ties:
        prov["weak_lp"] = "skipped_equality_witness"
        if gv.acyclic_tournament:
            raise VerdictConflict(
                "tie present yet digraph is an acyclic tournament",
                graph_verdict=gv,
            )
        return EfficiencyReport(
            m, w, sets, g, gv,
            weak_verdict=WEAKLY_EFFICIENT,
            provenance=prov,
        )

    lp = build_weak_lp(m, w, sets)
    sol = _solved(lp, eps_opt)
    prov["weak_lp"] = "solved"
    prov["weak_lp_iterations"] = sol.iterations
    weakly_efficient = sol.optimum >= -eps_opt
    if weakly_efficient == gv.acyclic_tournament:
        raise VerdictConflict(
            "weak LP and tournament test disagree",
            lp_optimum=sol.optimum,
            graph_verdict=gv,
            detail={"eps_opt": eps_opt, "near_ties": prov["near_ties"]},
        )

    dominator = None
    certificate = ()
    if not weakly_efficient:
        strict_dom = _exp_weights(sol.assignment[: m.n])
        rel = dominates(m, strict_dom, w)
        if not rel.is_strong:
            raise VerdictConflict(
                "extracted strict dominator failed post-verification",
                lp_optimum=sol.optimum,
                detail={"relation": rel.kind},
            )
        # Strictly dominating but possibly still inefficient: refine it.
        inner = test_efficiency(m, strict_dom, tau_eq, eps_opt)
        if inner.verdict == INEFFICIENT:
            prov["intermediate_weak_dominator"] = [
                float(x) for x in strict_dom.values
            ]
            dominator = inner.dominator
            final_rel = dominates(m, dominator, w)
            if not final_rel.is_strong:
                raise VerdictConflict(
                    "refined dominator lost strict dominance",
                    detail={"relation": final_rel.kind},
                )
        else:
            dominator = strict_dom
        certificate = _certificate(m, w, dominator)
        prov["dominator_checks"] = ["strong_dominance", "efficiency_refinement"]

    return EfficiencyReport(
        m, w, sets, g, gv,
        weak_verdict=WEAKLY_EFFICIENT if weakly_efficient else STRONGLY_INEFFICIENT,
        weak_lp_optimum=float(sol.optimum),
        dominator=dominator,
        dominance_certificate=certificate,
        provenance=prov,
    )


def analyze(
    m: PairwiseComparisonMatrix,
    w: WeightVector,
    tau_eq: float = TAU_EQ,
    eps_opt: float = EPS_OPT,
) -> EfficiencyReport:
    """Run both tests and merge them into one report.

    When the vector is strongly inefficient the weak route's dominator is
    preferred (it is efficient and strictly dominating); otherwise the
    efficiency route's internal dominator is reported.
    """
    eff = test_efficiency(m, w, tau_eq, eps_opt)
    weak = test_weak_efficiency(m, w, tau_eq, eps_opt)
    merged_prov = {"efficiency": eff.provenance, "weak_efficiency": weak.provenance}
    if weak.weak_verdict == STRONGLY_INEFFICIENT:
        dominator, certificate = weak.dominator, weak.dominance_certificate
    else:
        dominator, certificate = eff.dominator, eff.dominance_certificate
    return EfficiencyReport(
        m, eff.weights, eff.index_sets, eff.digraph, eff.graph_verdict,
        verdict=eff.verdict,
        weak_verdict=weak.weak_verdict,
        lp_optimum=eff.lp_optimum,
        weak_lp_optimum=weak.weak_lp_optimum,
        dominator=dominator,
        dominance_certificate=certificate,
        provenance=merged_prov,
    )


def acyclic_dominator(
    m: PairwiseComparisonMatrix, w: WeightVector, order
) -> WeightVector:
    """Constructive strict dominator for a tournament-shaped pair.

    ``order`` lists the nodes along the Hamiltonian path (descending
    outdegree), so in permuted coordinates every ratio strictly exceeds
    its entry above the diagonal.  The output keeps the last weight and
    shrinks the earlier ones so that every ratio lands on or inside its
    entry, strictly below where it started.

    Construction: per-column multipliers (the largest entry-to-ratio
    quotient in each column) applied as suffix products.  That makes the
    leading pair touch its entry exactly and is exact for consistent
    matrices, but its telescoping can overshoot a non-adjacent entry when
    the ratio gaps are lopsided, so the result is verified and, if any
    ratio crossed its entry, replaced by a uniform log-space shrink sized
    by the smallest per-step gap (always valid; its tightest ratio touches
    its entry exactly).
    """
    n = m.n
    perm = list(order)
    if sorted(perm) != list(range(n)):
        raise PreconditionError("order must be a permutation of the items")
    a = m.entries[np.ix_(perm, perm)]
    v = w.values[perm]
    ratios = np.outer(v, 1.0 / v)

    multipliers = np.ones(n)
    for j in range(1, n):
        multipliers[j] = max(a[i, j] / ratios[i, j] for i in range(j))
        if multipliers[j] >= 1.0:
            raise PreconditionError(
                f"column {j + 1} multiplier is {multipliers[j]!r} >= 1: the pair "
                "is not tournament-shaped under this order"
            )

    shrunk = v.copy()
    acc = 1.0
    for k in range(n - 2, -1, -1):
        acc *= multipliers[k + 1]
        shrunk[k] = v[k] * acc

    if not _inside_entries(a, shrunk):
        gaps = np.log(ratios) - np.log(a)  # positive above the diagonal
        step = min(gaps[i, j] / (j - i) for i in range(n) for j in range(i + 1, n))
        shrunk = v * np.exp(-step * np.arange(n - 1, -1, -1.0))

    out = np.empty(n)
    for k, node in enumerate(perm):
        out[node] = shrunk[k]
    return WeightVector(out)


def _inside_entries(a: np.ndarray, shrunk: np.ndarray) -> bool:
    """True iff every upper-triangle ratio of ``shrunk`` is >= its entry."""
    n = a.shape[0]
    return all(
        shrunk[i] / shrunk[j] >= a[i, j]
        for i in range(n)
        for j in range(i + 1, n)
    )


def _near_ties_1based(g: DominanceDigraph) -> list:
    return [[i + 1, j + 1] for i, j in g.near_ties]
