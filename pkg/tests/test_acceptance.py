"""Acceptance gate: one test per numbered criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists a
PASS/FAIL line per criterion (see ``conftest.py``). Each test also prints the
quantities it judged, visible with ``-s``.
"""

import math
import time
from collections import Counter

import numpy as np
import pytest

from oracles import classical_ss, f_tail_quadrature, random_cells
from partlab import fixtures
from partlab.distributions import (
    CAUCHY,
    DistributionSpec,
    RngState,
    box_muller,
    generate_array,
)
from partlab.harness import GridPlan, run_grid
from partlab.reproduce import (
    check_fresh_factorial,
    check_table1,
    check_table3,
    check_table4,
    check_table5,
)
from partlab.sorting import heap_sort, partition, partition_sort, quick_sort
from partlab.statlab import anova_cells, f_upper_tail, fit_nlogn, fit_poly

# R-sq of the Table 1 nlogn fit, pinned from an independent lstsq oracle and
# confirmed as the squared correlation computed in exact rational arithmetic.
TABLE1_R2_PINNED = 0.993326800921609

# Seq SS of the Table 2 cell means expanded to three identical replicates and
# the Table 4 cubic R-sq, both evaluated in exact rational arithmetic from the
# fixture digits (level totals for the SS, normal equations for the cubic).
TABLE2_SS_PINNED = {
    "n": 0.73168694,
    "m": 0.05584502746666667,
    "p": 0.0015712778666666666,
    "n*m": 0.011333633333333334,
    "n*p": 0.00024869813333333336,
    "m*p": 8.079466666666666e-06,
    "n*m*p": 2.9180533333333333e-05,
    "Total": 0.8007228368,
}
TABLE4_CUBIC_R2_PINNED = 0.9915811865471309


class Budget:
    """Wall-clock guard for a criterion's runtime limit."""

    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.perf_counter()

    def check(self):
        used = time.perf_counter() - self.start
        print(f"runtime {used:.1f} s (limit {self.seconds} s)")
        assert used < self.seconds


def mixed_specs(rng):
    """Cycle through the correctness-suite input families."""
    while True:
        yield DistributionSpec("uniform01")
        yield DistributionSpec.binomial(int(rng.integers(1, 8)), float(rng.uniform(0.1, 0.9)))
        yield DistributionSpec("sorted")
        yield DistributionSpec("reversed")
        yield DistributionSpec("allequal")


# --- 1 --------------------------------------------------------------------


@pytest.mark.criterion(1, "correctness suite: 3 sorts x 1000 arrays + 1000 partition predicates")
def test_criterion_01_correctness():
    budget = Budget(30)
    rng = np.random.default_rng(20240601)
    specs = mixed_specs(rng)
    mismatches = Counter()
    for i in range(1000):
        spec = next(specs)
        n = int(rng.integers(0, 2049))
        keys = generate_array(spec, n, RngState(i))
        reference = np.sort(keys, kind="mergesort")
        for sort in (partition_sort, quick_sort, heap_sort):
            if not np.array_equal(sort(keys).keys, reference):
                mismatches[(sort.__name__, spec.name)] += 1

    predicate_failures = 0
    for i in range(1000):
        spec = next(specs)
        n = int(rng.integers(1, 2049))
        keys = generate_array(spec, n, RngState(10_000 + i))
        a = keys.copy()
        k = partition(a)
        ok = (k == n // 2
              and np.array_equal(np.sort(a), np.sort(keys))
              and (k == 0 or a[:k].max() <= a[k:].min()))
        predicate_failures += not ok
    print(f"sort mismatches: {dict(mismatches) or 0}; partition predicate failures: {predicate_failures}")
    assert not mismatches and predicate_failures == 0
    budget.check()


# --- 2 --------------------------------------------------------------------


@pytest.mark.criterion(2, "count bounds: sorted <= C_best n log n, reversed <= C_worst n log^2 n")
def test_criterion_02_count_bounds():
    budget = Budget(60)
    exps = range(6, 15)
    best = {e: partition_sort(np.arange(2 ** e)).counter.comparisons for e in exps}
    worst = {e: partition_sort(np.arange(2 ** e)[::-1].copy()).counter.comparisons for e in exps}
    c_best = best[6] / (2 ** 6 * 6)
    c_worst = worst[6] / (2 ** 6 * 6 ** 2)
    best_violations, worst_violations = [], []
    for e in exps:
        n = 2 ** e
        rb, rw = best[e] / (n * e), worst[e] / (n * e * e)
        print(f"n=2^{e:<2} sorted {best[e]:>9} ratio {rb:.4f}   reversed {worst[e]:>10} ratio {rw:.4f}")
        if best[e] > c_best * n * e:
            best_violations.append(e)
        if worst[e] > c_worst * n * e * e:
            worst_violations.append(e)
    print(f"C_best = {c_best:.4f}, C_worst = {c_worst:.4f}")
    print(f"best-case bound exceeded at n = 2^{best_violations}; worst-case at 2^{worst_violations}")
    budget.check()
    assert not worst_violations
    assert not best_violations


# --- 3 --------------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.criterion(3, "live Cauchy grid: comparisons R2 >= 0.99, time R2 >= 0.95 on n log n")
def test_criterion_03_cauchy_grid():
    budget = Budget(180)
    plan = GridPlan("partition", CAUCHY, tuple(range(10_000, 100_001, 10_000)), replicates=20)
    _, summary = run_grid(plan)
    n = np.array([row.n for row in summary], dtype=float)
    counts = fit_nlogn(n, [row.mean_comparisons for row in summary])
    times = fit_nlogn(n, [row.mean_elapsed_s for row in summary])
    print(f"comparisons: slope {counts.coefficients[1]:.5g}, R-sq {counts.r_squared:.6f}")
    print(f"elapsed_s:   slope {times.coefficients[1]:.5g}, R-sq {times.r_squared:.6f}")
    assert counts.r_squared >= 0.99 and counts.coefficients[1] > 0
    assert times.r_squared >= 0.95 and times.coefficients[1] > 0
    budget.check()


# --- 4 --------------------------------------------------------------------


@pytest.mark.criterion(4, "Table 1 fixture: n log n fit R2 >= 0.98, positive slope")
def test_criterion_04_table1():
    result = check_table1()
    print(result.report())
    assert result.passed
    n, t = fixtures.table1()
    assert fit_nlogn(n, t).r_squared == pytest.approx(TABLE1_R2_PINNED, abs=1e-12)


# --- 5 --------------------------------------------------------------------


@pytest.mark.criterion(5, "Table 3 fixture: df, SS tolerances and ordering, Seq = Adj, F/p sentinels")
def test_criterion_05_table3():
    result = check_table3()
    print(result.report())
    assert result.passed
    # the library SS must also agree with the totals-based oracle on the same cells
    cells = fixtures.table2_cells(3)
    expected, total = classical_ss(cells)
    table = anova_cells(cells, names=("n", "m", "p"))
    got = [row.seq_ss for row in table.effects]
    np.testing.assert_allclose(got, expected, rtol=1e-9, atol=1e-15)
    assert table["Total"].seq_ss == pytest.approx(total, rel=1e-9)
    for source, value in TABLE2_SS_PINNED.items():
        assert table[source].seq_ss == pytest.approx(value, rel=1e-9), source


# --- 6 --------------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.criterion(6, "fresh 3^3 Binomial factorial: n and m significant at p < 0.01")
def test_criterion_06_fresh_factorial():
    budget = Budget(600)
    result = check_fresh_factorial(base_seed=0, replicates=3)
    print(result.report())
    assert tuple(row.df for row in result.table.rows) == (2, 2, 2, 4, 4, 4, 8, 54, 80)
    assert result.passed
    budget.check()


# --- 7 --------------------------------------------------------------------


@pytest.mark.criterion(7, "Table 4 fixture: cubic R2 >= 0.95 and increasing; nested R2; degree rule")
def test_criterion_07_table4():
    result = check_table4()
    print(result.report())
    assert result.passed
    m, t = fixtures.table4()
    assert fit_poly(m, t, 3).r_squared == pytest.approx(TABLE4_CUBIC_R2_PINNED, abs=1e-10)


# --- 8 --------------------------------------------------------------------


@pytest.mark.criterion(8, "Table 5 fixture: concave quadratic with vertex in [0.35, 0.65]")
def test_criterion_08_table5():
    result = check_table5()
    print(result.report())
    assert result.passed


# --- 9 --------------------------------------------------------------------


@pytest.mark.criterion(9, "generator suite: Box-Muller identities, normal/Cauchy/Binomial moments")
def test_criterion_09_generators():
    budget = Budget(60)
    z1, z2 = box_muller(math.exp(-0.5), 0.0)
    assert abs(z1 - 1.0) <= 1e-15 and abs(z2) <= 1e-15
    z1, z2 = box_muller(math.exp(-2.0), 0.5)
    assert abs(z1 + 2.0) <= 1e-15 and abs(z2) <= 1e-15

    z = RngState(1).normals(100_000)
    c = RngState(8).cauchys(100_000)
    k = RngState(1000).binomials(100_000, 1000, 0.3)
    stats = {
        "normal mean": abs(z.mean()),
        "normal |var-1|": abs(z.var() - 1),
        "cauchy median": abs(np.median(c)),
        "cauchy |P(|X|<=1) - 0.5|": abs(np.mean(np.abs(c) <= 1) - 0.5),
        "binomial |mean-300|": abs(k.mean() - 300),
        "binomial |var-210|": abs(k.var(ddof=1) - 210),
    }
    for name, value in stats.items():
        print(f"{name:<28} {value:.5f}")
    assert stats["normal mean"] < 0.01 and stats["normal |var-1|"] < 0.02
    assert stats["cauchy median"] < 0.02 and stats["cauchy |P(|X|<=1) - 0.5|"] < 0.01
    assert stats["binomial |mean-300|"] < 0.2 and stats["binomial |var-210|"] < 3
    budget.check()


# --- 10 -------------------------------------------------------------------


@pytest.mark.criterion(10, "numerics: F tail vs quadrature, ANOVA identity and equivariance")
def test_criterion_10_numerics():
    budget = Budget(30)
    for d1, d2 in [(1, 1), (2, 54), (8, 54), (30, 3)]:
        assert f_upper_tail(0.0, d1, d2) == 1.0
    for d in (1, 2, 4, 8, 54, 200):
        assert abs(f_upper_tail(1.0, d, d) - 0.5) <= 1e-9

    worst = 0.0
    for f in (0.05, 0.5, 1.0, 2.5, 7.0, 30.0):
        for d1 in (1, 2, 4, 8):
            for d2 in (2, 8, 54, 120):
                worst = max(worst, abs(f_upper_tail(f, d1, d2) - f_tail_quadrature(f, d1, d2)))
    print(f"max |F tail - quadrature| = {worst:.2e}")
    assert worst <= 1e-6

    for seed in range(20):
        cells = random_cells(seed, shape=(3, 3, 3, 3) if seed % 2 else (2, 3, 4, 2))
        table = anova_cells(cells)
        parts = sum(row.seq_ss for row in table.rows if row.source != "Total")
        assert parts == pytest.approx(table["Total"].seq_ss, rel=1e-9)

        scale, shift = 3.7, -1234.5
        moved = anova_cells(cells * scale + shift)
        for a, b in zip(table.rows, moved.rows):
            assert b.seq_ss == pytest.approx(a.seq_ss * scale ** 2, rel=1e-9, abs=1e-9 * parts * scale ** 2)
            if a.f is not None and math.isfinite(a.f):
                assert b.f == pytest.approx(a.f, rel=1e-9)
    budget.check()
