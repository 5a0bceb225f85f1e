"""Regression, polynomial trend fitting and balanced factorial ANOVA.

Least squares goes through a column-scaled QR factorization; normal
equations are never formed. Polynomials are fitted in a centered and scaled
coordinate and converted back to powers of the original ``x``.

The ANOVA is the classical balanced three-factor decomposition with
replicates. Responses are shifted by a reference value before any sums are
taken, so adding a constant leaves every sum of squares unchanged and
identical replicates give an exactly zero error sum of squares.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import solve_triangular


class SingularDesignError(ValueError):
    """The design matrix is rank deficient or has too few rows."""


class UnbalancedDesignError(ValueError):
    """Factorial data with missing cells or unequal replicate counts."""

    def __init__(self, message: str, cell_counts: dict) -> None:
        super().__init__(message)
        self.cell_counts = cell_counts


# --------------------------------------------------------------------------
# least squares


@dataclass
class RegressionFit:
    labels: tuple[str, ...]
    coefficients: np.ndarray
    r_squared: float
    adj_r_squared: float
    residual_ss: float
    total_ss: float
    fitted: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)

    @property
    def n_obs(self) -> int:
        return len(self.fitted)


def _r_squared(rss: float, tss: float, y: np.ndarray, n_params: int) -> tuple[float, float]:
    n = len(y)
    if np.ptp(y) == 0:
        # no variation to explain
        return 0.0, 0.0
    r2 = min(1.0, max(0.0, 1.0 - rss / tss))
    df_resid = n - n_params
    adj = 1.0 - (rss / df_resid) / (tss / (n - 1)) if df_resid > 0 else math.nan
    return r2, adj


def ols_fit(design, y, labels: Optional[Sequence[str]] = None) -> RegressionFit:
    """Least-squares fit of ``y`` on the columns of ``design``.

    The caller supplies any intercept column. R-squared is measured against
    the mean of ``y``, so it is only meaningful with an intercept in the
    column space.

    Raises
    ------
    SingularDesignError
        If there are fewer rows than columns or the columns are (numerically)
        linearly dependent.
    """
    X = np.asarray(design, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n, k = X.shape
    if y.shape != (n,):
        raise ValueError(f"y has shape {y.shape}, expected ({n},)")
    if n < k:
        raise SingularDesignError(f"{n} observations cannot determine {k} coefficients")
    norms = np.linalg.norm(X, axis=0)
    if np.any(norms == 0):
        raise SingularDesignError("design has an all-zero column")
    Q, R = np.linalg.qr(X / norms)
    diag = np.abs(np.diag(R))
    if diag.min() <= max(n, k) * np.finfo(float).eps * diag.max() * 1e3:
        raise SingularDesignError("design matrix is rank deficient")
    beta = solve_triangular(R, Q.T @ y) / norms
    fitted = X @ beta
    resid = y - fitted
    rss = float(resid @ resid)
    dev = y - y.mean()
    tss = float(dev @ dev)
    r2, adj = _r_squared(rss, tss, y, k)
    labels = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(k))
    return RegressionFit(labels, beta, r2, adj, rss, tss, fitted, resid)


def fit_nlogn(n_values, y) -> RegressionFit:
    """Fit ``y = b0 + b1 * n * log2(n)``."""
    n = np.asarray(n_values, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(n) < 3:
        raise SingularDesignError("need at least 3 points")
    if np.any(n < 2):
        raise ValueError("n must be >= 2 for every point")
    X = np.column_stack([np.ones_like(n), n * np.log2(n)])
    return ols_fit(X, y, labels=("intercept", "n*log2(n)"))


# --------------------------------------------------------------------------
# polynomials


@dataclass
class PolynomialFit(RegressionFit):
    degree: int = 0
    center: float = 0.0
    scale: float = 1.0
    scaled_coefficients: np.ndarray = field(default=None, repr=False)

    @property
    def polynomial(self) -> np.polynomial.Polynomial:
        """The fit as a Polynomial evaluated through the scaled coordinate."""
        c, s = self.center, self.scale
        return np.polynomial.Polynomial(self.scaled_coefficients, domain=[c - s, c + s], window=[-1, 1])

    def __call__(self, x):
        return self.polynomial(np.asarray(x, dtype=float))

    def derivative(self, x):
        return self.polynomial.deriv()(np.asarray(x, dtype=float))


def fit_poly(x, y, degree: int) -> PolynomialFit:
    """Least-squares polynomial of the given degree.

    ``coefficients`` are ascending powers of the original ``x``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if len(x) < degree + 1 or len(np.unique(x)) < degree + 1:
        raise SingularDesignError(f"degree {degree} needs at least {degree + 1} distinct x values")
    center = 0.5 * (x.max() + x.min())
    scale = 0.5 * (x.max() - x.min())
    t = (x - center) / scale
    V = np.vander(t, degree + 1, increasing=True)
    base = ols_fit(V, y, labels=[f"x^{i}" for i in range(degree + 1)])
    poly = np.polynomial.Polynomial(base.coefficients, domain=[center - scale, center + scale], window=[-1, 1])
    coef = poly.convert().coef
    coef = np.pad(coef, (0, degree + 1 - len(coef)))
    return PolynomialFit(
        base.labels, coef, base.r_squared, base.adj_r_squared, base.residual_ss,
        base.total_ss, base.fitted, base.residuals,
        degree=degree, center=center, scale=scale, scaled_coefficients=base.coefficients,
    )


@dataclass
class DegreeSelection:
    degree: int
    epsilon: float
    fits: dict[int, PolynomialFit]

    def report(self) -> str:
        lines = ["degree  R-sq      R-sq(adj)"]
        for d, f in self.fits.items():
            mark = "  <- chosen" if d == self.degree else ""
            lines.append(f"{d:>6}  {f.r_squared:.6f}  {f.adj_r_squared:.6f}{mark}")
        lines.append(f"chosen degree: {self.degree}")
        return "\n".join(lines)


def select_degree(x, y, d_max: int, epsilon: float = 0.005) -> DegreeSelection:
    """Lowest degree that no higher degree beats by ``epsilon`` in adjusted R-squared.

    Degree ``d`` is chosen when ``adjR2(d') - adjR2(d) < epsilon`` for every
    ``d < d' <= d_max``. A fit with no residual degrees of freedom has an
    undefined adjusted R-squared and never counts as an improvement.
    """
    if d_max < 2:
        raise ValueError("d_max must be >= 2")
    fits = {d: fit_poly(x, y, d) for d in range(1, d_max + 1)}
    adj = {d: f.adj_r_squared for d, f in fits.items()}
    for d in range(1, d_max + 1):
        if math.isnan(adj[d]):
            continue
        gains = [adj[h] - adj[d] for h in range(d + 1, d_max + 1) if not math.isnan(adj[h])]
        if all(g < epsilon for g in gains):
            return DegreeSelection(d, epsilon, fits)
    return DegreeSelection(d_max, epsilon, fits)


# --------------------------------------------------------------------------
# F distribution tail


def _betacf(a: float, b: float, x: float, max_iter: int = 300, tol: float = 1e-10) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > tiny else tiny)
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return h
    warnings.warn(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})",
                  RuntimeWarning, stacklevel=3)
    return h


def _beta_front(a: float, b: float, x: float) -> float:
    log_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    return math.exp(a * math.log(x) + b * math.log1p(-x) - log_beta)


def betainc_regularized(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta ``I_x(a, b)``."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    if x < (a + 1.0) / (a + b + 2.0):
        return _beta_front(a, b, x) * _betacf(a, b, x) / a
    return 1.0 - _beta_front(a, b, x) * _betacf(b, a, 1.0 - x) / b


def f_upper_tail(f: float, df1: float, df2: float) -> float:
    """P(F > f) for an F(df1, df2) variable."""
    if not (df1 > 0 and df2 > 0) or not (math.isfinite(df1) and math.isfinite(df2)):
        raise ValueError(f"degrees of freedom must be positive, got ({df1}, {df2})")
    if math.isnan(f) or f < 0:
        raise ValueError(f"F must be >= 0, got {f}")
    if f == 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    a, b = 0.5 * df1, 0.5 * df2
    x = df1 * f / (df1 * f + df2)
    # upper tail is I_{1-x}(b, a); evaluate whichever side converges
    if x < (a + 1.0) / (a + b + 2.0):
        p = 1.0 - _beta_front(a, b, x) * _betacf(a, b, x) / a
    else:
        p = _beta_front(a, b, x) * _betacf(b, a, 1.0 - x) / b
    return min(1.0, max(0.0, p))


# --------------------------------------------------------------------------
# balanced three-factor ANOVA


@dataclass
class AnovaRow:
    source: str
    df: int
    seq_ss: float
    adj_ss: float
    ms: Optional[float] = None
    f: Optional[float] = None
    p: Optional[float] = None


@dataclass
class AnovaTable:
    rows: list[AnovaRow]
    factor_names: tuple[str, str, str]
    levels: tuple[tuple, tuple, tuple]
    replicates: int

    def __getitem__(self, source: str) -> AnovaRow:
        for row in self.rows:
            if row.source == source:
                return row
        raise KeyError(source)

    @property
    def sources(self) -> list[str]:
        return [r.source for r in self.rows]

    @property
    def effects(self) -> list[AnovaRow]:
        return [r for r in self.rows if r.source not in ("Error", "Total")]

    @property
    def r_squared(self) -> float:
        total = self["Total"].adj_ss
        if total == 0 or "Error" not in self.sources:
            return math.nan if total == 0 else 1.0
        return 1.0 - self["Error"].adj_ss / total

    @property
    def root_mse(self) -> float:
        return math.sqrt(self["Error"].ms) if "Error" in self.sources else math.nan

    def to_text(self) -> str:
        """Plain-text table: Source, DF, Seq SS, Adj SS, Adj MS, F, P.

        Sums of squares print with 6 decimals (switching to 8 significant
        digits beyond 1e6), F with 2 decimals and P with 3.
        """
        big = max(abs(r.seq_ss) for r in self.rows) >= 1e6
        ss_fmt = ".8g" if big else ".6f"

        def num(v, fmt):
            if v is None:
                return ""
            if math.isnan(v):
                return "*"
            if math.isinf(v):
                return "inf"
            return format(v, fmt)

        header = ["Source", "DF", "Seq SS", "Adj SS", "Adj MS", "F", "P"]
        body = []
        for r in self.rows:
            body.append([
                r.source, str(r.df), num(r.seq_ss, ss_fmt),
                "" if r.source == "Total" else num(r.adj_ss, ss_fmt),
                num(r.ms, ss_fmt), num(r.f, ".2f"), num(r.p, ".3f"),
            ])
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]

        def render(row):
            first = row[0].ljust(widths[0])
            return first + "".join("  " + cell.rjust(w) for cell, w in zip(row[1:], widths[1:]))

        lines = [
            f"General Linear Model: y versus {', '.join(self.factor_names)}",
            "",
            "Analysis of Variance for y, using Adjusted SS for Tests",
            "",
            render(header),
        ] + [render(row).rstrip() for row in body]
        if "Error" in self.sources:
            lines.append("")
            lines.append(f"S = {self.root_mse:.9g}   R-Sq = {100 * self.r_squared:.2f}%")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["Source", "DF", "Seq SS", "Adj SS", "Adj MS", "F", "P"])
        for r in self.rows:
            w.writerow([r.source, r.df] + ["" if v is None else repr(float(v))
                                           for v in (r.seq_ss, r.adj_ss, r.ms, r.f, r.p)])
        return buf.getvalue()


def _f_and_p(ss: float, df: int, ms_error: Optional[float], df_error: int) -> tuple:
    ms = ss / df
    if ms_error is None:
        return ms, math.nan, math.nan
    if ms_error == 0:
        # zero within-cell variance: any nonzero effect is infinitely significant
        return (ms, math.nan, 1.0) if ss == 0 else (ms, math.inf, 0.0)
    f = ms / ms_error
    return ms, f, f_upper_tail(f, df, df_error)


def anova_cells(cells, names: Sequence[str] = ("A", "B", "C"), levels=None) -> AnovaTable:
    """ANOVA for a balanced array of shape ``(a, b, c, r)``.

    Sums of squares are the classical balanced-design ones, written as
    weighted squared deviations of marginal means: for example
    ``SS_AB = c*r * sum((mean_ij - mean_i - mean_j + grand)**2)``, which
    equals ``sum(AB_ij**2)/(c*r) - CF - SS_A - SS_B`` on totals. Error SS is
    the pooled within-cell sum of squares; when ``r == 1`` there is no error
    row and F and p are NaN.
    """
    y = np.asarray(cells, dtype=float)
    if y.ndim != 4 or min(y.shape) < 1:
        raise ValueError(f"cells must have shape (a, b, c, r), got {y.shape}")
    a, b, c, r = y.shape
    if min(a, b, c) < 2:
        raise ValueError("each factor needs at least 2 levels")
    names = tuple(names)
    if levels is None:
        levels = tuple(tuple(range(1, k + 1)) for k in (a, b, c))

    d = y - y.flat[0]
    grand = d.mean()
    m_cell = d.mean(axis=3)
    m_ab = m_cell.mean(axis=2)
    m_ac = m_cell.mean(axis=1)
    m_bc = m_cell.mean(axis=0)
    m_a = m_ab.mean(axis=1)
    m_b = m_ab.mean(axis=0)
    m_c = m_ac.mean(axis=0)

    ea = m_a - grand
    eb = m_b - grand
    ec = m_c - grand
    eab = m_ab - m_a[:, None] - m_b[None, :] + grand
    eac = m_ac - m_a[:, None] - m_c[None, :] + grand
    ebc = m_bc - m_b[:, None] - m_c[None, :] + grand
    eabc = (m_cell - m_ab[:, :, None] - m_ac[:, None, :] - m_bc[None, :, :]
            + m_a[:, None, None] + m_b[None, :, None] + m_c[None, None, :] - grand)

    ss = [
        b * c * r * float(ea @ ea),
        a * c * r * float(eb @ eb),
        a * b * r * float(ec @ ec),
        c * r * float(np.sum(eab ** 2)),
        b * r * float(np.sum(eac ** 2)),
        a * r * float(np.sum(ebc ** 2)),
        r * float(np.sum(eabc ** 2)),
    ]
    dfs = [a - 1, b - 1, c - 1, (a - 1) * (b - 1), (a - 1) * (c - 1),
           (b - 1) * (c - 1), (a - 1) * (b - 1) * (c - 1)]
    A, B, C = names
    labels = [A, B, C, f"{A}*{B}", f"{A}*{C}", f"{B}*{C}", f"{A}*{B}*{C}"]

    dev = d - grand
    ss_total = float(np.sum(dev ** 2))
    df_total = a * b * c * r - 1

    if r > 1:
        # deviations from each cell's first replicate, exact zero when replicates agree
        e = d - d[..., :1]
        ss_error = float(np.sum(e ** 2) - np.sum(e.sum(axis=3) ** 2) / r)
        ss_error = max(ss_error, 0.0)
        df_error = a * b * c * (r - 1)
        ms_error: Optional[float] = ss_error / df_error
    else:
        ms_error, df_error = None, 0

    rows = []
    for label, s, df in zip(labels, ss, dfs):
        ms, f, p = _f_and_p(s, df, ms_error, df_error)
        rows.append(AnovaRow(label, df, s, s, ms, f, p))
    if ms_error is not None:
        rows.append(AnovaRow("Error", df_error, ss_error, ss_error, ms_error))
    rows.append(AnovaRow("Total", df_total, ss_total, ss_total))
    return AnovaTable(rows, names, tuple(tuple(lv) for lv in levels), r)


def anova_3factor(a_levels, b_levels, c_levels, y, names: Sequence[str] = ("A", "B", "C")) -> AnovaTable:
    """Group observations by their three factor levels and run :func:`anova_cells`.

    Raises
    ------
    UnbalancedDesignError
        If any combination of observed levels is missing or the cells hold
        different numbers of observations. ``cell_counts`` lists them all.
    """
    a_levels, b_levels, c_levels = (list(v) for v in (a_levels, b_levels, c_levels))
    y = np.asarray(y, dtype=float)
    if not len(a_levels) == len(b_levels) == len(c_levels) == len(y):
        raise ValueError("factor columns and response must have equal length")
    la, lb, lc = (sorted(set(v)) for v in (a_levels, b_levels, c_levels))
    groups: dict[tuple, list[float]] = {key: [] for key in itertools.product(la, lb, lc)}
    for key, value in zip(zip(a_levels, b_levels, c_levels), y):
        groups[key].append(value)
    counts = {key: len(v) for key, v in groups.items()}
    if len(set(counts.values())) != 1 or min(counts.values()) == 0:
        listing = ", ".join(f"{k}: {n}" for k, n in counts.items())
        raise UnbalancedDesignError(f"design is not balanced; cell counts {listing}", counts)
    r = next(iter(counts.values()))
    cells = np.empty((len(la), len(lb), len(lc), r))
    for (i, u), (j, v), (k, w) in itertools.product(enumerate(la), enumerate(lb), enumerate(lc)):
        cells[i, j, k] = groups[(u, v, w)]
    return anova_cells(cells, names, (tuple(la), tuple(lb), tuple(lc)))
