"""Self-contained dense two-phase simplex.

The efficiency tests produce tiny LPs (dozens of rows), so the solver
favors robustness and determinism over speed: dense tableau, largest
coefficient pivoting with Bland's rule as the anti-cycling fallback, and a
fixed tie-break (smallest basic variable index) so identical problems give
bit-identical answers.

Tolerances are centralized here and referenced by the acceptance tests:
row feasibility FEAS_TOL, reduced costs COST_TOL, pivot floor PIVOT_FLOOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, ValidationError

FEAS_TOL = 1e-8
COST_TOL = 1e-9
PIVOT_FLOOR = 1e-12
MAX_ITER = 10_000

# Consecutive degenerate pivots tolerated before switching to Bland's rule.
_DEGENERATE_LIMIT = 25

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LpConstraint:
    coeffs: np.ndarray
    relation: str
    rhs: float

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValidationError(f"unknown relation {self.relation!r}")
        object.__setattr__(
            self, "coeffs", np.asarray(self.coeffs, dtype=float).reshape(-1)
        )


@dataclass(eq=False)
class LpProblem:
    """Minimize objective @ x over the given rows.

    ``free[j]`` selects the variable domain: True means x_j is free
    (lower bound -inf), False means x_j >= 0.
    """

    objective: np.ndarray
    constraints: list
    free: np.ndarray
    names: tuple = field(default=())

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).reshape(-1)
        nvar = self.objective.size
        self.free = np.asarray(self.free, dtype=bool).reshape(-1)
        if self.free.size != nvar:
            raise ValidationError("free mask length does not match objective")
        for k, con in enumerate(self.constraints):
            if con.coeffs.size != nvar:
                raise ValidationError(f"row {k} has wrong width")
        if not self.names:
            self.names = tuple(f"x{j + 1}" for j in range(nvar))

    @property
    def nvar(self) -> int:
        return self.objective.size


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: str
    optimum: float | None
    assignment: np.ndarray | None
    iterations: int


@dataclass(frozen=True)
class RowViolation:
    row: int
    relation: str
    lhs: float
    rhs: float
    violation: float  # signed lhs - rhs


class _Tableau:
    """Mutable simplex tableau with objective row at the bottom."""

    def __init__(self, body: np.ndarray, basis: list):
        self.t = body  # (m + 1) x (ncols + 1)
        self.basis = basis
        self.iterations = 0
        self.bland = False
        self._degenerate_run = 0

    @property
    def m(self) -> int:
        return self.t.shape[0] - 1

    def price_out(self, costs: np.ndarray):
        obj = np.zeros(self.t.shape[1])
        obj[: costs.size] = costs
        for i, b in enumerate(self.basis):
            if costs[b] != 0.0:
                obj -= costs[b] * self.t[i]
        self.t[-1] = obj

    def _entering(self, allowed: np.ndarray) -> int | None:
        red = self.t[-1, :-1]
        candidates = np.where(allowed & (red < -COST_TOL))[0]
        if candidates.size == 0:
            return None
        if self.bland:
            return int(candidates[0])
        return int(candidates[np.argmin(red[candidates])])

    def _leaving(self, col: int) -> int | None:
        column = self.t[: self.m, col]
        rhs = self.t[: self.m, -1]
        rows = np.where(column > PIVOT_FLOOR)[0]
        if rows.size == 0:
            if np.any(column > 0.0):
                raise NumericalError("pivot candidates below the pivot floor")
            return None
        ratios = rhs[rows] / column[rows]
        best = ratios.min()
        ties = rows[np.where(ratios <= best + PIVOT_FLOOR)[0]]
        # smallest basic-variable index: deterministic and Bland-compatible
        return int(min(ties, key=lambda r: self.basis[r]))

    def _pivot(self, row: int, col: int):
        t = self.t
        if t[row, -1] <= FEAS_TOL:
            self._degenerate_run += 1
            if self._degenerate_run > _DEGENERATE_LIMIT:
                self.bland = True
        else:
            self._degenerate_run = 0
        t[row] = t[row] / t[row, col]
        piv_row = t[row]
        factors = t[:, col].copy()
        factors[row] = 0.0
        t -= np.outer(factors, piv_row)
        t[:, col] = 0.0
        t[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1

    def run(self, allowed: np.ndarray) -> str:
        while True:
            if self.iterations > MAX_ITER:
                raise NumericalError("simplex iteration cap exceeded")
            col = self._entering(allowed)
            if col is None:
                return OPTIMAL
            row = self._leaving(col)
            if row is None:
                return UNBOUNDED
            self._pivot(row, col)


def _standardize(p: LpProblem):
    """Split free variables, add slack/surplus/artificial columns."""
    split_cols = []  # per original variable: (plus_col, minus_col | None)
    col = 0
    for j in range(p.nvar):
        if p.free[j]:
            split_cols.append((col, col + 1))
            col += 2
        else:
            split_cols.append((col, None))
            col += 1
    nstruct = col

    m = len(p.constraints)
    rows = np.zeros((m, nstruct))
    rhs = np.zeros(m)
    rels = []
    for k, con in enumerate(p.constraints):
        coeffs, relation, b = con.coeffs, con.relation, float(con.rhs)
        if b < 0.0:
            coeffs, b = -coeffs, -b
            relation = {LE: GE, GE: LE, EQ: EQ}[relation]
        for j in range(p.nvar):
            plus, minus = split_cols[j]
            rows[k, plus] = coeffs[j]
            if minus is not None:
                rows[k, minus] = -coeffs[j]
        rhs[k] = b
        rels.append(relation)

    extra = []
    basis = [0] * m
    artificials = []
    ncols = nstruct
    for k, relation in enumerate(rels):
        if relation == LE:
            e = np.zeros(m)
            e[k] = 1.0
            extra.append(e)
            basis[k] = ncols
            ncols += 1
        elif relation == GE:
            e = np.zeros(m)
            e[k] = -1.0
            extra.append(e)
            ncols += 1
            a = np.zeros(m)
            a[k] = 1.0
            extra.append(a)
            basis[k] = ncols
            artificials.append(ncols)
            ncols += 1
        else:
            a = np.zeros(m)
            a[k] = 1.0
            extra.append(a)
            basis[k] = ncols
            artificials.append(ncols)
            ncols += 1

    if extra:
        body = np.hstack([rows, np.column_stack(extra)])
    else:
        body = rows
    return body, rhs, basis, artificials, split_cols, nstruct


def solve(p: LpProblem) -> LpSolution:
    """Two-phase simplex; statuses: optimal, infeasible, unbounded."""
    body, rhs, basis, artificials, split_cols, nstruct = _standardize(p)
    m, ncols = body.shape

    t = np.zeros((m + 1, ncols + 1))
    t[:m, :ncols] = body
    t[:m, -1] = rhs
    tab = _Tableau(t, basis)

    art_mask = np.zeros(ncols, dtype=bool)
    art_mask[artificials] = True

    if artificials:
        phase1 = np.zeros(ncols)
        phase1[artificials] = 1.0
        tab.price_out(phase1)
        status = tab.run(allowed=np.ones(ncols, dtype=bool))
        if status != OPTIMAL:
            raise NumericalError("phase one terminated without an optimum")
        if -tab.t[-1, -1] > FEAS_TOL:
            return LpSolution(INFEASIBLE, None, None, tab.iterations)
        _evict_artificials(tab, art_mask)

    # Phase two on the original costs over the split columns.
    phase2 = np.zeros(ncols)
    for j in range(p.nvar):
        plus, minus = split_cols[j]
        phase2[plus] = p.objective[j]
        if minus is not None:
            phase2[minus] = -p.objective[j]
    tab.price_out(phase2)
    status = tab.run(allowed=~art_mask)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None, tab.iterations)

    x_ext = np.zeros(ncols)
    for i, b in enumerate(tab.basis):
        x_ext[b] = tab.t[i, -1]
    x = np.empty(p.nvar)
    for j in range(p.nvar):
        plus, minus = split_cols[j]
        x[j] = x_ext[plus] - (x_ext[minus] if minus is not None else 0.0)

    if any(abs(v.violation) > FEAS_TOL for v in check_feasibility(p, x)):
        raise NumericalError("final basis is infeasible beyond tolerance")
    optimum = float(p.objective @ x)
    return LpSolution(OPTIMAL, optimum, x, tab.iterations)


def _evict_artificials(tab: _Tableau, art_mask: np.ndarray):
    """Pivot basic artificials out at level zero; drop rows that turn out
    to be redundant (no structural pivot available)."""
    drop = []
    for i in range(tab.m):
        if not art_mask[tab.basis[i]]:
            continue
        row = tab.t[i, :-1]
        candidates = np.where(~art_mask & (np.abs(row) > PIVOT_FLOOR))[0]
        if candidates.size:
            tab._pivot(i, int(candidates[0]))
        else:
            drop.append(i)
    if drop:
        keep = [i for i in range(tab.m) if i not in drop]
        tab.t = np.vstack([tab.t[keep], tab.t[-1:]])
        tab.basis = [tab.basis[i] for i in keep]


def check_feasibility(p: LpProblem, assignment: np.ndarray) -> list:
    """Per-row violation report; empty iff every row holds within FEAS_TOL.

    Only constraint rows are checked; variable domains are the caller's
    concern.
    """
    x = np.asarray(assignment, dtype=float).reshape(-1)
    if x.size != p.nvar:
        raise ValidationError("assignment length does not match problem")
    report = []
    for k, con in enumerate(p.constraints):
        lhs = float(con.coeffs @ x)
        gap = lhs - float(con.rhs)
        bad = (
            (con.relation == LE and gap > FEAS_TOL)
            or (con.relation == GE and gap < -FEAS_TOL)
            or (con.relation == EQ and abs(gap) > FEAS_TOL)
        )
        if bad:
            report.append(RowViolation(k, con.relation, lhs, float(con.rhs), gap))
    return report


def dump_lp(p: LpProblem) -> str:
    """Human-readable LP text (CPLEX-LP flavored; debugging aid only)."""

    def term(c: float, name: str) -> str:
        sign = "-" if c < 0 else "+"
        return f"{sign} {abs(c):g} {name}"

    lines = ["Minimize", " obj: " + " ".join(
        term(c, p.names[j]) for j, c in enumerate(p.objective) if c != 0.0
    )]
    lines.append("Subject To")
    for k, con in enumerate(p.constraints):
        body = " ".join(
            term(c, p.names[j]) for j, c in enumerate(con.coeffs) if c != 0.0
        ) or "0"
        lines.append(f" c{k + 1}: {body} {con.relation} {con.rhs:g}")
    lines.append("Bounds")
    for j in range(p.nvar):
        lines.append(f" {p.names[j]} free" if p.free[j] else f" 0 <= {p.names[j]}")
    lines.append("End")
    return "\n".join(lines)
