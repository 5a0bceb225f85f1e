"""Replicated, timed, instrumented sorting trials.

Every trial generates its input outside the timed region, then times only
the sort on ``time.perf_counter``. Seeds are a pure function of the base
seed, algorithm, design point and replicate index (see :func:`derive_seed`),
so count columns replay exactly across runs; only ``elapsed_s`` varies.

Trial tables persist as CSV with the header in ``CSV_HEADER``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import math
import statistics
from dataclasses import dataclass
from os import PathLike
from typing import Iterable, Optional, Sequence, Union

from .distributions import MASK64, DistributionSpec, RngState, generate_array, mix64
from .sorting import OpCounter, get_algorithm

CSV_HEADER = (
    "algorithm", "dist", "n", "m", "p", "seed", "replicate",
    "elapsed_s", "comparisons", "swaps", "moves",
)

Count = Union[int, float]


class CsvFormatError(ValueError):
    """Malformed trial CSV; carries the 1-based line number and column name."""

    def __init__(self, line: int, column: str, message: str) -> None:
        super().__init__(f"line {line}, column {column!r}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class TrialRecord:
    algorithm: str
    spec: DistributionSpec
    n: int
    seed: int
    replicate: int
    elapsed_s: float
    comparisons: Count
    swaps: Count
    moves: Count

    @property
    def m(self) -> Optional[int]:
        return self.spec.m

    @property
    def p(self) -> Optional[float]:
        return self.spec.p

    @property
    def counter(self) -> OpCounter:
        return OpCounter(self.comparisons, self.swaps, self.moves)


@dataclass(frozen=True)
class GridPlan:
    algorithm: str
    spec: DistributionSpec
    n_values: tuple[int, ...]
    replicates: int = 50
    base_seed: int = 0

    def __post_init__(self) -> None:
        get_algorithm(self.algorithm)
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        ns = tuple(int(n) for n in self.n_values)
        if not ns or any(b <= a for a, b in zip(ns, ns[1:])) or ns[0] < 0:
            raise ValueError(f"n values must be non-negative and strictly increasing, got {ns}")
        object.__setattr__(self, "n_values", ns)


@dataclass(frozen=True)
class GridSummary:
    n: int
    replicates: int
    mean_elapsed_s: float
    median_elapsed_s: float
    mean_comparisons: float
    mean_swaps: float
    mean_moves: float


@dataclass(frozen=True)
class DesignPoint:
    n_level: int
    m_level: int
    p_level: float


# --------------------------------------------------------------------------
# seed policy


def _hash64(text: str) -> int:
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "little")


def derive_seed(base: int, algorithm: str, levels: Sequence, replicate: int) -> int:
    """``mix64(mix64(base) ^ h(algorithm) ^ h(levels) ^ replicate)``, h = BLAKE2b-64.

    ``levels`` is the design point as a tuple, e.g. ``("cauchy", 10000)`` or
    ``("binomial", n, m, p)``; its ``repr`` is hashed. The base is mixed
    first so that small base seeds and replicate indices cannot cancel.
    """
    word = mix64(base) ^ _hash64(algorithm) ^ _hash64(repr(tuple(levels))) ^ replicate
    return mix64(word)


def _levels(spec: DistributionSpec, n: int) -> tuple:
    if spec.name == "binomial":
        return (spec.name, n, spec.m, spec.p)
    return (spec.name, n)


# --------------------------------------------------------------------------
# running trials


def run_trial(algorithm: str, spec: DistributionSpec, n: int, seed: int, replicate: int = 0) -> TrialRecord:
    """Generate ``n`` keys from ``spec`` with ``seed`` and time one sort of them."""
    sort = get_algorithm(algorithm)
    keys = generate_array(spec, n, RngState(seed))
    outcome = sort(keys)
    c = outcome.counter
    return TrialRecord(algorithm, spec, n, seed, replicate, outcome.elapsed,
                       c.comparisons, c.swaps, c.moves)


def _warmup(algorithm: str, spec: DistributionSpec, n: int, base_seed: int) -> None:
    # discarded; also absorbs JIT compilation for this key dtype
    run_trial(algorithm, spec, n, derive_seed(base_seed, algorithm, ("warmup",) + _levels(spec, n), 0))


def summarize(records: Iterable[TrialRecord]) -> list[GridSummary]:
    """Per-n means (and median time) over replicate records, ordered by n."""
    groups: dict[int, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault(r.n, []).append(r)
    rows = []
    for n in sorted(groups):
        rs = groups[n]
        rows.append(GridSummary(
            n=n,
            replicates=len(rs),
            mean_elapsed_s=statistics.fmean(r.elapsed_s for r in rs),
            median_elapsed_s=statistics.median(r.elapsed_s for r in rs),
            mean_comparisons=statistics.fmean(r.comparisons for r in rs),
            mean_swaps=statistics.fmean(r.swaps for r in rs),
            mean_moves=statistics.fmean(r.moves for r in rs),
        ))
    return rows


def run_grid(plan: GridPlan, warmup: bool = True) -> tuple[list[TrialRecord], list[GridSummary]]:
    records = []
    for n in plan.n_values:
        if warmup:
            _warmup(plan.algorithm, plan.spec, n, plan.base_seed)
        levels = _levels(plan.spec, n)
        for rep in range(plan.replicates):
            seed = derive_seed(plan.base_seed, plan.algorithm, levels, rep)
            records.append(run_trial(plan.algorithm, plan.spec, n, seed, rep))
    return records, summarize(records)


def run_factorial(
    n_levels: Sequence[int],
    m_levels: Sequence[int],
    p_levels: Sequence[float],
    replicates: int = 3,
    base_seed: int = 0,
    algorithm: str = "partition",
    inner: int = 1,
    warmup: bool = True,
) -> list[TrialRecord]:
    """Fully crossed Binomial(m, p) design over n, m and p.

    Returns ``len(n_levels) * len(m_levels) * len(p_levels) * replicates``
    records ordered by (n, m, p, replicate). With ``inner > 1`` each record
    is itself the mean of ``inner`` independent trials (elapsed time and
    counts averaged, counts then stored as floats); its ``seed`` is that of
    the first inner trial.
    """
    for name, levels in (("n", n_levels), ("m", m_levels), ("p", p_levels)):
        if len(levels) < 1 or len(set(levels)) != len(levels):
            raise ValueError(f"{name} levels must be non-empty and distinct, got {list(levels)}")
    if replicates < 1 or inner < 1:
        raise ValueError("replicates and inner must be >= 1")
    get_algorithm(algorithm)
    specs = {(m, p): DistributionSpec.binomial(m, p) for m in m_levels for p in p_levels}
    if warmup:
        for n in n_levels:
            _warmup(algorithm, specs[(m_levels[0], p_levels[0])], n, base_seed)

    records = []
    for n, m, p in itertools.product(n_levels, m_levels, p_levels):
        spec = specs[(m, p)]
        levels = _levels(spec, n)
        for rep in range(replicates):
            if inner == 1:
                seed = derive_seed(base_seed, algorithm, levels, rep)
                records.append(run_trial(algorithm, spec, n, seed, rep))
                continue
            trials = [
                run_trial(algorithm, spec, n, derive_seed(base_seed, algorithm, levels + (rep,), j))
                for j in range(inner)
            ]
            records.append(TrialRecord(
                algorithm, spec, n, trials[0].seed, rep,
                statistics.fmean(t.elapsed_s for t in trials),
                statistics.fmean(t.comparisons for t in trials),
                statistics.fmean(t.swaps for t in trials),
                statistics.fmean(t.moves for t in trials),
            ))
    return records


# --------------------------------------------------------------------------
# CSV persistence


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def records_to_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([_fmt(v) for v in (
            r.algorithm, r.spec.name, r.n, r.m, r.p, r.seed, r.replicate,
            float(r.elapsed_s), r.comparisons, r.swaps, r.moves,
        )])
    return buf.getvalue()


def write_csv(records: Iterable[TrialRecord], path: Union[str, PathLike]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))


def _parse_count(text: str) -> Count:
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"not a valid count: {text!r}")
        return value


def records_from_csv(text: str) -> list[TrialRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise CsvFormatError(1, "header", f"expected {','.join(CSV_HEADER)}")
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise CsvFormatError(lineno, "row", f"expected {len(CSV_HEADER)} fields, got {len(row)}")
        f = dict(zip(CSV_HEADER, row))

        def parse(column, conv):
            try:
                return conv(f[column])
            except (ValueError, TypeError) as exc:
                raise CsvFormatError(lineno, column, f"cannot parse {f[column]!r}") from exc

        n = parse("n", int)
        m = parse("m", lambda s: int(s) if s else None)
        p = parse("p", lambda s: float(s) if s else None)
        try:
            spec = DistributionSpec(f["dist"], m, p)
        except ValueError as exc:
            raise CsvFormatError(lineno, "dist", str(exc)) from exc
        elapsed = parse("elapsed_s", float)
        if not elapsed >= 0:
            raise CsvFormatError(lineno, "elapsed_s", f"must be >= 0, got {elapsed}")
        records.append(TrialRecord(
            algorithm=f["algorithm"],
            spec=spec,
            n=n,
            seed=parse("seed", int),
            replicate=parse("replicate", int),
            elapsed_s=elapsed,
            comparisons=parse("comparisons", _parse_count),
            swaps=parse("swaps", _parse_count),
            moves=parse("moves", _parse_count),
        ))
    return records


def read_csv(path: Union[str, PathLike]) -> list[TrialRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        return records_from_csv(fh.read())
