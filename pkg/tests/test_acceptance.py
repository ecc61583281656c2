"""Acceptance suite: one test per criterion, one PASS line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import math
import time

import numpy as np
import pytest

from pcmeff.digraph import build_digraph, strongly_connected
from pcmeff.efficiency import (
    EFFICIENT,
    INEFFICIENT,
    KIND_DOMINATES,
    KIND_INTERNAL,
    KIND_STRONG,
    STRONGLY_INEFFICIENT,
    WEAKLY_EFFICIENT,
    acyclic_dominator,
    analyze,
    build_efficiency_lp,
    dominates,
    index_sets,
    test_efficiency as check_efficiency,
)
from pcmeff.matrix import (
    WeightVector,
    geometric_mean_vector,
    principal_eigenvector,
    ratio_matrix,
    residuals,
)
from pcmeff.randomlab import (
    LOGNORMAL,
    SAATY_DISCRETE,
    GeneratorSpec,
    generate_trial,
)
from pcmeff.simplex import solve

from conftest import (
    DEMO_DOMINATOR_ANCHORED,
    DEMO_EIGENVECTOR,
    powers_matrix,
    powers_weights,
)

CORPUS_SEED = 20_250_000
CORPUS_SIZE = 1000


def _ok(line):
    print(f"\n[PASS] {line}")


@pytest.fixture(scope="module")
def corpus():
    """1000 random matrices, sizes 4..7, both generator modes, fixed seed,
    with their principal eigenvectors and merged reports.  The elapsed
    build time is attached for the runtime criterion."""
    t0 = time.perf_counter()
    out = []
    for trial in range(CORPUS_SIZE):
        n = 4 + trial % 4
        mode = SAATY_DISCRETE if trial % 2 == 0 else LOGNORMAL
        spec = GeneratorSpec(n=n, mode=mode, seed=CORPUS_SEED)
        m = generate_trial(spec, trial)
        w, _ = principal_eigenvector(m)
        out.append((m, w, analyze(m, w)))
    return {"items": out, "build_seconds": time.perf_counter() - t0}


def test_worked_lp_regression(demo_matrix, demo_eigen):
    """Criterion 1: the worked 4x4 linear program reproduces the published
    optimum, solution components, and improving vector, in under 1 s."""
    t0 = time.perf_counter()
    w, _ = demo_eigen
    lp = build_efficiency_lp(demo_matrix, w, index_sets(demo_matrix, w))
    sol = solve(lp)
    elapsed = time.perf_counter() - t0

    assert sol.status == "optimal"
    assert abs(sol.optimum - (-0.226)) < 1e-3
    y = sol.assignment[:4]
    s = sol.assignment[4:]
    assert abs(y[2] - (-1.3749)) < 1e-3
    assert abs(y[3] - (-2.1859)) < 1e-3
    # slacks for the pairs (2,1), (3,1), (4,1) in the sorted overshoot order
    for slack in (s[0], s[2], s[4]):
        assert abs(slack - 0.0753) < 1e-3
    dominator = np.exp(y)
    anchored = dominator * w.values[1] / dominator[1]
    assert np.max(np.abs(anchored - np.array(DEMO_DOMINATOR_ANCHORED))) < 1e-4
    assert elapsed < 1.0
    _ok(f"C1 worked-LP regression: optimum {sol.optimum:.6f}, "
        f"{elapsed * 1e3:.0f} ms")


def test_demo_reproduction(demo_matrix, demo_eigen):
    """Criterion 2: eigenvector, ratio matrix, residual, and the double
    inefficiency verdict for the demo matrix."""
    w, _ = demo_eigen
    assert np.max(np.abs(w.values - np.array(DEMO_EIGENVECTOR))) < 1e-5
    r = ratio_matrix(w)
    assert abs(r[0, 1] - 0.9274) < 1e-4
    assert abs(r[0, 3] - 8.2531) < 1e-4
    assert abs(residuals(demo_matrix, w)[0, 1] - 0.0726) < 1e-4

    rep = check_efficiency(demo_matrix, w)
    assert rep.verdict == INEFFICIENT
    assert rep.lp_optimum < -1e-7
    assert not rep.graph_verdict.strongly_connected
    _ok("C2 demo reproduction: eigenvector, ratios, residual, and both "
        "inefficiency verdicts match")


def test_dominance_checker(demo_matrix, demo_eigen):
    """Criterion 3: dominance kinds for the two published improving
    vectors, and the ratio display of the internal one."""
    w = demo_eigen[0]
    wv = w.values
    w_prime = WeightVector(np.array([9 * wv[3], wv[1], wv[2], wv[3]]))
    w_dd = WeightVector(np.array([wv[1], wv[1], wv[2], wv[3]]))

    rel_dd = dominates(demo_matrix, w_dd, w)
    assert rel_dd.kind == KIND_INTERNAL
    rel_p = dominates(demo_matrix, w_prime, w)
    assert rel_p.kind == KIND_DOMINATES and not rel_p.is_internal

    row = ratio_matrix(w_dd)[0]
    assert np.max(np.abs(row - np.array([1.0, 1.0, 3.9546, 8.8989]))) < 1e-4
    _ok("C3 dominance checker: internal vs plain dominance kinds and the "
        "ratio display match")


def test_tournament_pipeline():
    """Criterion 4: the consistent-powers pair is strongly inefficient by
    outdegrees and by the weak LP, and the constructive dominator recovers
    the consistent matrix exactly."""
    m = powers_matrix(2.0)
    w = powers_weights(3.0)

    gv = strongly_connected(build_digraph(m, w))
    assert gv.acyclic_tournament
    assert sorted(gv.outdegrees) == [0, 1, 2, 3]

    rep = analyze(m, w)
    assert rep.weak_verdict == STRONGLY_INEFFICIENT
    assert rep.weak_lp_optimum < -1e-7

    # multiplier oracle: every column quotient is (2/3)^(j-i), max 2/3
    d = acyclic_dominator(m, w, [0, 1, 2, 3])
    expected = w.values * np.array([(2 / 3) ** 3, (2 / 3) ** 2, 2 / 3, 1.0])
    assert np.allclose(d.values, expected, rtol=1e-12, atol=0.0)
    assert np.max(np.abs(ratio_matrix(d) - m.entries)) < 1e-12
    _ok("C4 tournament pipeline: outdegrees {0,1,2,3}, weak LP verdict, "
        "and exact constructive dominator")


def test_oracle_equivalence_suite(corpus):
    """Criterion 5: on 1000 random matrices the LP verdicts coincide with
    the combinatorial ones, with zero conflicts, in under 60 s."""
    t0 = time.perf_counter()
    for m, w, rep in corpus["items"]:
        # analyze() raises VerdictConflict on disagreement; reaching here
        # means both cross-checks already passed, but re-assert explicitly
        assert (rep.verdict == EFFICIENT) == rep.graph_verdict.strongly_connected
        assert (rep.weak_verdict == STRONGLY_INEFFICIENT) \
            == rep.graph_verdict.acyclic_tournament
        if rep.lp_optimum is not None:
            assert rep.lp_optimum <= 1e-7
        if rep.weak_lp_optimum is not None:
            assert rep.weak_lp_optimum <= 1e-7
    elapsed = corpus["build_seconds"] + (time.perf_counter() - t0)
    assert elapsed < 60.0
    inefficient = sum(rep.verdict == INEFFICIENT
                      for _, _, rep in corpus["items"])
    _ok(f"C5 oracle equivalence: {CORPUS_SIZE} instances, 0 conflicts, "
        f"{inefficient} inefficient eigenvectors, {elapsed:.1f} s total")


def test_weighting_method_properties(corpus):
    """Criterion 6: the eigenvector is never strongly inefficient; the row
    geometric mean is always efficient.  Zero failures on the corpus."""
    for m, w, rep in corpus["items"]:
        assert rep.weak_verdict == WEAKLY_EFFICIENT
        gm_rep = check_efficiency(m, geometric_mean_vector(m))
        assert gm_rep.verdict == EFFICIENT
    _ok(f"C6 weighting methods: eigenvector weakly efficient and geometric "
        f"mean efficient on all {CORPUS_SIZE} instances")


def test_invariance_suite(corpus):
    """Criterion 7: verdict scale invariance, dominance transitivity, and
    convex-midpoint dominance on 200 sampled triples each."""
    rng = np.random.default_rng(4242)

    scaled_checked = 0
    for m, w, rep in corpus["items"][:100]:
        for c in (1e-3, 1e3):
            rep_c = analyze(m, WeightVector(c * w.values))
            assert rep_c.verdict == rep.verdict
            assert rep_c.weak_verdict == rep.weak_verdict
            if rep.dominator is not None:
                assert np.max(np.abs(rep_c.dominator.values
                                     - rep.dominator.values)) < 1e-9
            scaled_checked += 1

    inefficient = [(m, w, rep) for m, w, rep in corpus["items"]
                   if rep.verdict == INEFFICIENT]
    assert inefficient, "corpus must contain inefficient eigenvectors"

    transitive = 0
    while transitive < 200:
        m, w, rep = inefficient[transitive % len(inefficient)]
        x = rep.dominator.values
        ta, tb = sorted(rng.uniform(0.1, 1.0, 2), reverse=True)
        a = WeightVector(ta * x + (1 - ta) * w.values)
        b = WeightVector(tb * x + (1 - tb) * w.values)
        assert dominates(m, a, b).is_dominating
        assert dominates(m, b, w).is_dominating
        assert dominates(m, a, w).is_dominating
        transitive += 1

    midpoints = 0
    while midpoints < 200:
        m, w, rep = inefficient[midpoints % len(inefficient)]
        x = rep.dominator.values
        t1, t2 = rng.uniform(0.05, 1.0, 2)
        c1, c2 = rng.uniform(0.5, 2.0, 2)
        d1 = c1 * (t1 * x + (1 - t1) * w.values)
        d2 = c2 * (t2 * x + (1 - t2) * w.values)
        assert dominates(m, WeightVector(d1), w).is_dominating
        assert dominates(m, WeightVector(d2), w).is_dominating
        mid = WeightVector((d1 + d2) / 2.0)
        assert dominates(m, mid, w).is_dominating
        midpoints += 1

    _ok(f"C7 invariance: {scaled_checked} scaled verdicts identical, "
        f"200 transitive triples, 200 convex midpoints, zero failures")


# Grid oracle tolerances: a candidate must not worsen any residual by more
# than EPS_WEAK (absolute, scaled by the entry) and must improve one by at
# least EPS_STRICT.  Mismatches against the LP verdict are allowed only
# within one grid cell of the decision boundary, certified below.
GRID_POINTS = 200
EPS_WEAK = 1e-12
EPS_STRICT = 1e-9


def _grid_search_dominator(m, w):
    """Exhaustive log-grid search for a dominating vector with x_1 = 1.

    The dominance bands for the pairs (2,1) and (3,1) confine candidates
    to a box around (a_21, a_31); a 200 x 200 log grid over that box plus
    the (2,3) band check decides existence up to grid resolution.
    """
    a = m.entries
    f = residuals(m, w)
    lo2 = max(a[1, 0] - f[1, 0], a[1, 0] * 1e-6)
    hi2 = a[1, 0] + f[1, 0]
    lo3 = max(a[2, 0] - f[2, 0], a[2, 0] * 1e-6)
    hi3 = a[2, 0] + f[2, 0]
    x2 = np.geomspace(lo2, hi2, GRID_POINTS)
    x3 = np.geomspace(lo3, hi3, GRID_POINTS)
    g2, g3 = np.meshgrid(x2, x3, indexing="ij")

    slack = EPS_WEAK * np.maximum(1.0, a)
    strict = EPS_STRICT * np.maximum(1.0, a)
    news = {
        (1, 0): np.abs(g2 - a[1, 0]),
        (0, 1): np.abs(1.0 / g2 - a[0, 1]),
        (2, 0): np.abs(g3 - a[2, 0]),
        (0, 2): np.abs(1.0 / g3 - a[0, 2]),
        (1, 2): np.abs(g2 / g3 - a[1, 2]),
        (2, 1): np.abs(g3 / g2 - a[2, 1]),
    }
    weak = np.ones_like(g2, dtype=bool)
    strict_any = np.zeros_like(g2, dtype=bool)
    for (i, j), new in news.items():
        weak &= new <= f[i, j] + slack[i, j]
        strict_any |= new < f[i, j] - strict[i, j]
    mask = weak & strict_any
    if not mask.any():
        return None, (lo2, hi2, lo3, hi3)
    i2, i3 = np.unravel_index(np.argmax(mask), mask.shape)
    return np.array([1.0, x2[i2], x3[i3]]), (lo2, hi2, lo3, hi3)


def test_desk_scale_brute_force_oracle():
    """Criterion 8: for 50 random 3x3 matrices, grid search finds a
    dominating vector iff the LP/digraph tests say inefficient; any
    mismatch must be certified as a sub-cell boundary case."""
    rng = np.random.default_rng(808)
    agree = 0
    permitted = []
    verdicts = {EFFICIENT: 0, INEFFICIENT: 0}
    for k in range(50):
        mode = SAATY_DISCRETE if k % 2 == 0 else LOGNORMAL
        m = generate_trial(GeneratorSpec(n=3, mode=mode, seed=999), k)
        # jittered geometric mean: mixes efficient and inefficient verdicts
        g = geometric_mean_vector(m).values
        w = WeightVector(g * np.exp(rng.normal(0.0, 0.35, 3))).sum_one()

        rep = check_efficiency(m, w)
        verdicts[rep.verdict] += 1
        found, box = _grid_search_dominator(m, w)

        if (found is not None) == (rep.verdict == INEFFICIENT):
            agree += 1
            continue

        if rep.verdict == INEFFICIENT:
            # grid missed a thin dominating sliver: certify the LP
            # dominator independently and place it inside the search box
            x = rep.dominator.values
            x = x / x[0]
            assert dominates(m, rep.dominator, w).is_dominating
            lo2, hi2, lo3, hi3 = box
            assert lo2 * (1 - 1e-9) <= x[1] <= hi2 * (1 + 1e-9)
            assert lo3 * (1 - 1e-9) <= x[2] <= hi3 * (1 + 1e-9)
            permitted.append((k, "grid_missed_subcell_region"))
        else:
            # grid hit: legitimate only as boundary noise, never as a
            # certified counterexample to the LP verdict
            cand = WeightVector(found)
            rel = dominates(m, cand, w)
            assert not rel.is_dominating, (
                f"instance {k}: grid point genuinely dominates but the LP "
                f"reported efficient"
            )
            permitted.append((k, "grid_noise_at_boundary"))

    assert verdicts[EFFICIENT] > 0 and verdicts[INEFFICIENT] > 0
    assert agree + len(permitted) == 50
    _ok(f"C8 grid oracle: {agree}/50 exact agreements, "
        f"{len(permitted)} certified boundary cases, verdict mix {verdicts}")
