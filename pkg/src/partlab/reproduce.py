"""Checks of the published tables and a live desk-scale factorial run.

Each ``check_*`` function returns a :class:`CheckResult` whose ``lines``
form a human-readable report and whose ``passed`` flag applies the fixed
thresholds below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import fixtures
from .harness import run_factorial
from .statlab import AnovaTable, anova_3factor, anova_cells, fit_nlogn, fit_poly, select_degree

TABLE1_MIN_R2 = 0.98
TABLE3_SS_TOLERANCE = {"n": 0.01, "m": 0.03, "p": 0.20}
TABLE3_DFS = (2, 2, 2, 4, 4, 4, 8, 54, 80)
TABLE4_MIN_R2 = 0.95
TABLE5_VERTEX_RANGE = (0.35, 0.65)
FACTORIAL_ALPHA = 0.01

FRESH_N_LEVELS = (20000, 40000, 60000)
FRESH_M_LEVELS = (100, 1000, 1500)
FRESH_P_LEVELS = (0.2, 0.5, 0.8)


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    lines: list[str] = field(default_factory=list)
    table: Optional[AnovaTable] = None

    def expect(self, ok: bool, label: str) -> bool:
        self.lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}")
        self.passed = self.passed and bool(ok)
        return ok

    def note(self, text: str) -> None:
        self.lines.append(text)

    def report(self) -> str:
        return "\n".join(self.lines + [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"])


def check_table1() -> CheckResult:
    res = CheckResult("table1")
    n, t = fixtures.table1()
    fit = fit_nlogn(n, t)
    b0, b1 = fit.coefficients
    res.note(f"time = {b0:.6g} + {b1:.6g} * n*log2(n)")
    res.note(f"R-sq = {fit.r_squared:.6f}   R-sq(adj) = {fit.adj_r_squared:.6f}")
    res.expect(fit.r_squared >= TABLE1_MIN_R2, f"R-sq >= {TABLE1_MIN_R2}")
    res.expect(b1 > 0, "positive slope")
    return res


def check_table3() -> CheckResult:
    res = CheckResult("table3")
    table = anova_cells(fixtures.table2_cells(3), names=("n", "m", "p"),
                        levels=((50000, 100000, 150000), (100, 1000, 1500), (0.2, 0.5, 0.8)))
    published = fixtures.table3_ss()
    res.note(table.to_text())
    res.note("")
    res.expect(tuple(r.df for r in table.rows) == TABLE3_DFS, f"DF column {TABLE3_DFS}")
    for source, tol in TABLE3_SS_TOLERANCE.items():
        ours, theirs = table[source].seq_ss, published[source]
        rel = abs(ours - theirs) / theirs
        res.expect(rel <= tol, f"SS_{source} = {ours:.6f} within {tol:.0%} of {theirs} (off {rel:.2%})")
    ss = {r.source: r.seq_ss for r in table.rows}
    res.expect(ss["n"] > ss["m"] > ss["n*m"] > ss["p"], "SS_n > SS_m > SS_n*m > SS_p")
    res.expect(all(r.seq_ss == r.adj_ss for r in table.rows), "Seq SS = Adj SS on every row")
    err = table["Error"]
    res.expect(err.ms == 0.0, "MS_error = 0 for identical replicates")
    res.expect(all((math.isinf(r.f) and r.p == 0.0) for r in table.effects if r.seq_ss > 0),
               "F = inf, p = 0 for every nonzero effect")
    res.note(f"R-Sq = {100 * table.r_squared:.2f}%")
    res.expect(table.r_squared > 0.999, "R-sq > 0.999")
    return res


def _min_on_interval(coef_ascending, lo: float, hi: float) -> float:
    poly = np.polynomial.Polynomial(coef_ascending)
    candidates = [lo, hi] + [r.real for r in poly.deriv().roots()
                             if abs(r.imag) < 1e-12 and lo < r.real < hi]
    return min(float(poly(x)) for x in candidates)


def synthetic_cubic(seed: int = 7, n_points: int = 15, noise: float = 0.01):
    """Points on a fixed increasing cubic plus uniform noise of ``noise`` times its range."""
    rng = np.random.default_rng(seed)
    x = np.linspace(100.0, 1500.0, n_points)
    t = (x - 800.0) / 700.0
    y = 0.1 + 0.02 * t - 0.01 * t ** 2 + 0.015 * t ** 3
    amplitude = noise * np.ptp(y)
    return x, y + rng.uniform(-amplitude, amplitude, size=x.shape)


def check_table4() -> CheckResult:
    res = CheckResult("table4")
    m, t = fixtures.table4()
    cubic = fit_poly(m, t, 3)
    res.note("cubic coefficients (ascending): " + ", ".join(f"{c:.6g}" for c in cubic.coefficients))
    res.expect(cubic.r_squared >= TABLE4_MIN_R2, f"cubic R-sq = {cubic.r_squared:.6f} >= {TABLE4_MIN_R2}")
    slope_min = _min_on_interval(np.polynomial.Polynomial(cubic.coefficients).deriv().coef, 100.0, 1500.0)
    res.expect(slope_min > 0, f"cubic increasing on [100, 1500] (min slope {slope_min:.3g})")
    r2 = [fit_poly(m, t, d).r_squared for d in range(1, 6)]
    res.note("R-sq by degree 1..5: " + ", ".join(f"{v:.6f}" for v in r2))
    res.expect(all(b >= a - 1e-12 for a, b in zip(r2, r2[1:])), "R-sq non-decreasing in degree")
    sel = select_degree(m, t, 4)
    res.note(sel.report())
    x, y = synthetic_cubic()
    synth = select_degree(x, y, 4)
    res.note("synthetic cubic + 1% noise:\n" + synth.report())
    res.expect(synth.degree == 3, "selection rule picks degree 3 over 4 on synthetic cubic")
    return res


def check_table5() -> CheckResult:
    res = CheckResult("table5")
    p, t = fixtures.table5()
    quad = fit_poly(p, t, 2)
    c0, c1, c2 = quad.coefficients
    vertex = -c1 / (2 * c2)
    res.note(f"time = {c0:.6g} + {c1:.6g} p + {c2:.6g} p^2   R-sq = {quad.r_squared:.6f}")
    res.expect(c2 < 0, "negative leading coefficient")
    lo, hi = TABLE5_VERTEX_RANGE
    res.expect(lo <= vertex <= hi, f"vertex p = {vertex:.4f} in [{lo}, {hi}]")
    res.note(select_degree(p, t, 4).report())
    return res


def check_fresh_factorial(base_seed: int = 0, replicates: int = 3,
                          n_levels=FRESH_N_LEVELS, m_levels=FRESH_M_LEVELS,
                          p_levels=FRESH_P_LEVELS, records=None) -> CheckResult:
    """Live 3x3x3 Binomial factorial on Partition Sort, response = comparisons."""
    res = CheckResult("fresh-factorial")
    if records is None:
        records = run_factorial(n_levels, m_levels, p_levels, replicates, base_seed)
    table = anova_3factor([r.n for r in records], [r.m for r in records], [r.p for r in records],
                          [r.comparisons for r in records], names=("n", "m", "p"))
    res.note(table.to_text())
    res.note("")
    for source in ("n", "m"):
        pv = table[source].p
        res.expect(pv < FACTORIAL_ALPHA, f"main effect {source} significant (p = {pv:.3g} < {FACTORIAL_ALPHA})")
    for row in table.effects:
        if row.source not in ("n", "m"):
            res.note(f"{row.source:<6} p = {row.p:.4g}")
    res.table = table
    return res


TARGETS = {
    "table1": check_table1,
    "table3": check_table3,
    "table4": check_table4,
    "table5": check_table5,
    "fresh-factorial": check_fresh_factorial,
}
