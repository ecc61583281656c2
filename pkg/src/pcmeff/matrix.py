"""Pairwise comparison matrices and weight vectors.

A pairwise comparison matrix is a positive reciprocal square matrix whose
entry (i, j) records how many times item i is preferred to item j.  This
module owns parsing/validation and the two classical weighting methods
(principal eigenvector, row geometric mean), plus the residual and ratio
matrices everything downstream is built from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceError, ParseError, ValidationError

# Relative slack for reciprocity / diagonal checks at parse time.  Fraction
# literals are reciprocal-exact by construction; hand-entered decimals get
# this much room.
TAU_REC = 1e-9

MIN_SIZE = 3

SUM_ONE = "sum-one"
FIRST_ONE = "first-one"
UNNORMALIZED = "none"

_EIG_TOL = 1e-12
_EIG_MAX_ITER = 100_000


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PairwiseComparisonMatrix:
    """Validated positive reciprocal judgment matrix."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"matrix must be square, got shape {a.shape}")
        n = a.shape[0]
        if n < MIN_SIZE:
            raise ValidationError(f"need at least {MIN_SIZE} items, got {n}")
        if not np.all(np.isfinite(a)) or np.any(a <= 0.0):
            raise ValidationError("all entries must be finite and strictly positive")
        if np.any(np.abs(np.diag(a) - 1.0) > TAU_REC):
            raise ValidationError("diagonal entries must equal 1")
        rec = np.abs(a * a.T - 1.0)
        if np.any(rec > TAU_REC):
            i, j = np.unravel_index(np.argmax(rec), rec.shape)
            raise ValidationError(
                f"reciprocity violated at ({i + 1},{j + 1}): "
                f"a_ij*a_ji = {a[i, j] * a[j, i]!r}"
            )
        object.__setattr__(self, "entries", _readonly(a))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f"PairwiseComparisonMatrix(n={self.n})"


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Strictly positive weight vector with a normalization tag."""

    values: np.ndarray
    normalization: str = UNNORMALIZED

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        if v.size == 0 or not np.all(np.isfinite(v)) or np.any(v <= 0.0):
            raise ValidationError("weights must be finite and strictly positive")
        if self.normalization == SUM_ONE:
            if abs(v.sum() - 1.0) > 1e-12:
                raise ValidationError("sum-one tag requires components summing to 1")
        elif self.normalization == FIRST_ONE:
            if v[0] != 1.0:
                raise ValidationError("first-one tag requires first component == 1")
        elif self.normalization != UNNORMALIZED:
            raise ValidationError(f"unknown normalization {self.normalization!r}")
        object.__setattr__(self, "values", _readonly(v))

    def __len__(self):
        return self.values.size

    def sum_one(self) -> "WeightVector":
        v = self.values / self.values.sum()
        return WeightVector(v / v.sum(), SUM_ONE)

    def first_one(self) -> "WeightVector":
        return WeightVector(self.values / self.values[0], FIRST_ONE)


def _parse_entry(token: str) -> float:
    token = token.strip()
    if not token:
        raise ParseError("empty matrix entry")
    try:
        if "/" in token:
            # exact rational first, one float conversion at the end
            num, den = token.split("/")
            value = Fraction(int(num.strip()), int(den.strip()))
        else:
            value = Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse entry {token!r}") from exc
    return float(value)


def parse_matrix(text: str, fmt: str = "csv") -> PairwiseComparisonMatrix:
    """Parse a comparison matrix from CSV or JSON text.

    CSV: one row per line, comma-separated, no header.  JSON: object
    ``{"n": int, "entries": [[...], ...]}`` where ``n`` is optional.
    Entries may be decimals or exact fractions written "p/q".
    """
    if fmt == "csv":
        rows = []
        for line in text.splitlines():
            if not line.strip():
                continue
            rows.append([_parse_entry(tok) for tok in line.split(",")])
        if not rows:
            raise ParseError("no rows found")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ParseError("rows have unequal lengths")
        return PairwiseComparisonMatrix(np.array(rows, dtype=float))
    if fmt == "json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(payload, dict) or "entries" not in payload:
            raise ParseError('JSON matrix needs an "entries" field')
        raw = payload["entries"]
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            raise ParseError('"entries" must be a list of rows')
        rows = []
        for r in raw:
            rows.append([_parse_entry(x) if isinstance(x, str) else float(x)
                         for x in r])
        if any(len(r) != len(rows) for r in rows):
            raise ParseError("entries must form a square matrix")
        if "n" in payload and payload["n"] != len(rows):
            raise ParseError('"n" does not match the entry grid')
        return PairwiseComparisonMatrix(np.array(rows, dtype=float))
    raise ParseError(f"unknown format {fmt!r}")


def is_consistent(m: PairwiseComparisonMatrix, tol: float = 1e-9) -> bool:
    """True iff a_ij * a_jk stays within ``tol`` (relative) of a_ik for
    every index triple."""
    if tol <= 0:
        raise ValidationError("tol must be positive")
    a = m.entries
    triple = a[:, :, None] * a[None, :, :] / a[:, None, :]
    return bool(np.max(np.abs(triple - 1.0)) <= tol)


def principal_eigenvector(
    m: PairwiseComparisonMatrix,
    start: np.ndarray | None = None,
    tol: float = _EIG_TOL,
    max_iter: int = _EIG_MAX_ITER,
) -> tuple[WeightVector, float]:
    """Dominant eigenpair by power iteration.

    Returns the sum-one normalized Perron vector and the maximal
    eigenvalue (which is >= n for every reciprocal matrix, with equality
    exactly in the consistent case).  The default start vector is the row
    geometric mean, which is already close for near-consistent matrices.
    """
    a = m.entries
    n = m.n
    if start is None:
        x = np.exp(np.mean(np.log(a), axis=1))
    else:
        x = np.asarray(start, dtype=float).reshape(-1)
        if x.shape != (n,) or np.any(x <= 0):
            raise ValidationError("start vector must be positive of length n")
    x = x / x.sum()
    for _ in range(max_iter):
        y = a @ x
        y /= y.sum()
        if np.max(np.abs(y - x)) < tol:
            x = y
            break
        x = y
    else:
        raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")
    ax = a @ x
    lam = float(ax.sum())  # x sums to one
    if np.max(np.abs(ax - lam * x)) > 1e-10 * lam:
        raise ConvergenceError("eigenpair residual above tolerance")
    return WeightVector(x / x.sum(), SUM_ONE), lam


def geometric_mean_vector(m: PairwiseComparisonMatrix) -> WeightVector:
    """Row geometric mean weights, sum-one normalized."""
    g = np.exp(np.mean(np.log(m.entries), axis=1))
    g = g / g.sum()
    return WeightVector(g / g.sum(), SUM_ONE)


def residuals(m: PairwiseComparisonMatrix, w: WeightVector) -> np.ndarray:
    """Absolute approximation errors |w_i/w_j - a_ij| with a zero diagonal.

    Invariant under rescaling of ``w``: the ratios, not the weights, enter.
    """
    v = w.values
    if v.size != m.n:
        raise ValidationError("weight vector length does not match matrix size")
    r = np.abs(np.outer(v, 1.0 / v) - m.entries)
    np.fill_diagonal(r, 0.0)
    return r


def ratio_matrix(w: WeightVector) -> np.ndarray:
    """Consistent approximation generated by ``w``: entry (i, j) = w_i/w_j."""
    v = w.values
    return np.outer(v, 1.0 / v)
