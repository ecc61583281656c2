"""Random comparison matrices and Monte-Carlo inefficiency experiments.

How often the principal eigenvector of a random matrix is inefficient, and
by how much a dominating vector improves it, are empirical questions; this
module generates reproducible corpora and summarizes the verdicts.  Both
generator modes are conventions (there is no canonical distribution over
judgment matrices) and are labeled as such in the output.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .efficiency import INEFFICIENT, analyze
from .errors import ValidationError, VerdictConflict
from .matrix import MIN_SIZE, PairwiseComparisonMatrix, principal_eigenvector

SAATY_DISCRETE = "saaty_discrete"
LOGNORMAL = "lognormal_perturbed_consistent"
MODES = (SAATY_DISCRETE, LOGNORMAL)

# Discrete judgment scale: 1/9 .. 1/2, 1, 2 .. 9.
SAATY_VALUES = tuple(1.0 / k for k in range(9, 1, -1)) + tuple(
    float(k) for k in range(1, 10)
)

DEFAULT_SIGMA = 0.35


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible matrix source.

    The random stream is numpy's PCG64 generator seeded with ``seed`` (one
    matrix) or with ``[seed, trial]`` (experiment streams), so results are
    bit-reproducible for a fixed numpy generation.
    """

    n: int
    mode: str = SAATY_DISCRETE
    sigma: float = DEFAULT_SIGMA
    seed: int = 0

    def __post_init__(self):
        if self.n < MIN_SIZE:
            raise ValidationError(f"need n >= {MIN_SIZE}")
        if self.mode not in MODES:
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.sigma < 0:
            raise ValidationError("sigma must be nonnegative")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: str
    verdict: str
    lp_optimum: float | None
    gap: float


@dataclass(frozen=True)
class ExperimentSummary:
    spec: GeneratorSpec
    trials: int
    eigenvector_inefficient_fraction: float
    mean_gap: float
    max_gap: float
    conflict_count: int
    records: tuple


def _draw(rng: np.random.Generator, n: int, mode: str, sigma: float) -> np.ndarray:
    a = np.ones((n, n))
    if mode == SAATY_DISCRETE:
        for i in range(n):
            for j in range(i + 1, n):
                a[i, j] = rng.choice(SAATY_VALUES)
                a[j, i] = 1.0 / a[i, j]
    else:
        base = np.exp(rng.normal(0.0, 1.0, size=n))
        for i in range(n):
            for j in range(i + 1, n):
                a[i, j] = (base[i] / base[j]) * np.exp(rng.normal(0.0, sigma))
                a[j, i] = 1.0 / a[i, j]
    return a


def generate(spec: GeneratorSpec) -> PairwiseComparisonMatrix:
    """One validated matrix; upper triangle sampled, mirror reciprocal."""
    rng = np.random.default_rng(spec.seed)
    return PairwiseComparisonMatrix(_draw(rng, spec.n, spec.mode, spec.sigma))


def generate_trial(spec: GeneratorSpec, trial: int) -> PairwiseComparisonMatrix:
    """Matrix for one experiment trial; independent of other trials."""
    rng = np.random.default_rng([spec.seed, trial])
    return PairwiseComparisonMatrix(_draw(rng, spec.n, spec.mode, spec.sigma))


def run_experiment(spec: GeneratorSpec, trials: int) -> ExperimentSummary:
    """Eigenvector efficiency census over ``trials`` generated matrices.

    The gap of an inefficient trial is the largest single-position residual
    improvement achieved by the reported dominator.  Verdict conflicts are
    counted, not raised.  Aggregation runs in trial order, so a summary is
    bit-reproducible from (spec, trials).
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    records = []
    inefficient = 0
    conflicts = 0
    gaps = []
    for t in range(trials):
        m = generate_trial(spec, t)
        w, _ = principal_eigenvector(m)
        seed_label = f"{spec.seed}:{t}"
        try:
            report = analyze(m, w)
        except VerdictConflict:
            conflicts += 1
            records.append(TrialRecord(t, seed_label, "conflict", None, 0.0))
            continue
        gap = 0.0
        if report.verdict == INEFFICIENT:
            inefficient += 1
            gap = max(old - new for _, _, old, new in report.dominance_certificate)
            gaps.append(gap)
        records.append(
            TrialRecord(t, seed_label, report.verdict, report.lp_optimum, gap)
        )
    return ExperimentSummary(
        spec=spec,
        trials=trials,
        eigenvector_inefficient_fraction=inefficient / trials,
        mean_gap=float(np.mean(gaps)) if gaps else 0.0,
        max_gap=max(gaps) if gaps else 0.0,
        conflict_count=conflicts,
        records=tuple(records),
    )


def write_trials_csv(summary: ExperimentSummary, path: str):
    """One row per trial: trial, seed, verdict, lp_optimum, gap."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "seed", "verdict", "lp_optimum", "gap"])
        for r in summary.records:
            writer.writerow([
                r.trial,
                r.seed,
                r.verdict,
                "" if r.lp_optimum is None else repr(r.lp_optimum),
                repr(r.gap),
            ])


def summary_to_json(summary: ExperimentSummary) -> str:
    spec = summary.spec
    return json.dumps(
        {
            "generator": {
                "n": spec.n,
                "mode": spec.mode,
                "sigma": spec.sigma,
                "seed": spec.seed,
                "rng": "numpy PCG64, per-trial seed [seed, trial]",
            },
            "trials": summary.trials,
            "eigenvector_inefficient_fraction":
                summary.eigenvector_inefficient_fraction,
            "mean_gap": summary.mean_gap,
            "max_gap": summary.max_gap,
            "conflict_count": summary.conflict_count,
        },
        indent=2,
    )
