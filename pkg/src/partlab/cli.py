"""Command-line front end: ``partlab {gen,bench,fit,anova,reproduce}``.

Exit codes: 0 on success or PASS, 1 on runtime failure or FAIL, 2 on usage
errors. Settings resolve as flag > ``--config`` file > built-in default.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .distributions import DistributionSpec, InvalidParameterError, RngState, generate_array
from .harness import GridPlan, run_grid, write_csv
from .reproduce import FRESH_M_LEVELS, FRESH_N_LEVELS, FRESH_P_LEVELS, TARGETS, check_fresh_factorial
from .sorting import ALGORITHMS
from .statlab import SingularDesignError, UnbalancedDesignError, anova_3factor, fit_nlogn, fit_poly, select_degree


@dataclass(frozen=True)
class Config:
    seed: int = 0
    reps: int = 50
    factorial_reps: int = 3
    epsilon: float = 0.005
    out: Optional[str] = None
    n_levels: tuple[int, ...] = FRESH_N_LEVELS
    m_levels: tuple[int, ...] = FRESH_M_LEVELS
    p_levels: tuple[float, ...] = FRESH_P_LEVELS


def _levels(text: str, conv) -> tuple:
    return tuple(conv(v) for v in text.split(",") if v.strip())


_CONFIG_PARSERS = {
    "seed": int,
    "reps": int,
    "factorial_reps": int,
    "epsilon": float,
    "out": str,
    "n_levels": lambda s: _levels(s, int),
    "m_levels": lambda s: _levels(s, int),
    "p_levels": lambda s: _levels(s, float),
}


def load_config(path: Optional[str]) -> Config:
    """Read a ``key = value`` file; ``#`` starts a comment. Unknown keys are errors."""
    cfg = Config()
    if path is None:
        return cfg
    updates = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        key = key.replace("-", "_")
        if not sep or key not in _CONFIG_PARSERS:
            raise ValueError(f"{path}:{lineno}: expected one of {sorted(_CONFIG_PARSERS)} as key=value")
        try:
            updates[key] = _CONFIG_PARSERS[key](value)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return replace(cfg, **updates)


def parse_grid(text: str) -> tuple[int, ...]:
    """``start:stop:step`` (stop included when aligned), or a single size."""
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected start:stop:step") from None
    if len(nums) == 1:
        nums = [nums[0], nums[0], 1]
    if len(nums) != 3 or nums[2] <= 0 or nums[0] < 0 or nums[1] < nums[0]:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected start:stop:step with 0 <= start <= stop, step > 0")
    start, stop, step = nums
    return tuple(range(start, stop + 1, step))


def _spec_from_args(parser, args) -> DistributionSpec:
    try:
        return DistributionSpec(args.dist, args.m, args.p)
    except InvalidParameterError as exc:
        parser.error(str(exc))


def _open_out(path: Optional[str]):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8", newline="")


# --------------------------------------------------------------------------
# subcommands


def cmd_gen(parser, args, cfg: Config) -> int:
    spec = _spec_from_args(parser, args)
    if args.n < 0:
        parser.error("--n must be >= 0")
    keys = generate_array(spec, args.n, RngState(args.seed if args.seed is not None else cfg.seed))
    out = _open_out(args.out or cfg.out)
    try:
        out.write("value\n")
        fmt = repr if keys.dtype.kind == "f" else str
        out.writelines(fmt(v) + "\n" for v in keys.tolist())
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_bench(parser, args, cfg: Config) -> int:
    spec = _spec_from_args(parser, args)
    plan = GridPlan(args.alg, spec, args.n_grid,
                    replicates=args.reps if args.reps is not None else cfg.reps,
                    base_seed=args.seed if args.seed is not None else cfg.seed)
    records, summary = run_grid(plan, warmup=not args.no_warmup)
    out = args.out or cfg.out or "bench_trials.csv"
    write_csv(records, out)
    print(f"# {len(records)} trials written to {out}")
    print(f"{'n':>10} {'reps':>5} {'mean_s':>12} {'median_s':>12} {'mean_comparisons':>18} {'mean_swaps':>14} {'mean_moves':>14}")
    for row in summary:
        print(f"{row.n:>10} {row.replicates:>5} {row.mean_elapsed_s:>12.5f} {row.median_elapsed_s:>12.5f} "
              f"{row.mean_comparisons:>18.1f} {row.mean_swaps:>14.1f} {row.mean_moves:>14.1f}")
    return 0


def _read_columns(parser, path: str, names: Sequence[str]) -> dict[str, list[str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for name in names:
            if name not in header:
                parser.error(f"column {name!r} not found in {path} (columns: {', '.join(header)})")
        rows = list(reader)
    return {name: [row[name] for row in rows] for name in names}


def _floats(parser, column: str, values: list[str]) -> np.ndarray:
    try:
        return np.array([float(v) for v in values])
    except ValueError:
        parser.error(f"column {column!r} holds non-numeric values")


def cmd_fit(parser, args, cfg: Config) -> int:
    cols = _read_columns(parser, args.input, [args.x, args.y])
    x = _floats(parser, args.x, cols[args.x])
    y = _floats(parser, args.y, cols[args.y])
    if args.group_mean:
        ux = np.unique(x)
        y = np.array([y[x == v].mean() for v in ux])
        x = ux
    model, _, arg = args.model.partition(":")
    eps = args.epsilon if args.epsilon is not None else cfg.epsilon
    try:
        if model == "nlogn" and not arg:
            fit = fit_nlogn(x, y)
            print(f"model: {args.y} = b0 + b1 * {args.x}*log2({args.x})")
        elif model == "poly" and arg.isdigit():
            fit = fit_poly(x, y, int(arg))
            print(f"model: polynomial of degree {arg} in {args.x}")
        elif model == "select" and arg.isdigit():
            sel = select_degree(x, y, int(arg), epsilon=eps)
            print(f"degree selection, epsilon = {eps} on adjusted R-sq")
            print(sel.report())
            fit = sel.fits[sel.degree]
        else:
            parser.error(f"bad --model {args.model!r}; expected nlogn, poly:<d> or select:<dmax>")
    except (SingularDesignError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for label, coef in zip(fit.labels, fit.coefficients):
        print(f"  {label:<12} {coef: .10g}")
    print(f"R-sq = {fit.r_squared:.6f}   R-sq(adj) = {fit.adj_r_squared:.6f}")
    if args.plot_out:
        with open(args.plot_out, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "y", "y_hat"])
            w.writerows(zip(map(repr, x.tolist()), map(repr, y.tolist()), map(repr, fit.fitted.tolist())))
    return 0


def cmd_anova(parser, args, cfg: Config) -> int:
    factors = [f.strip() for f in args.factors.split(",")]
    if len(factors) != 3:
        parser.error("--factors needs exactly three column names")
    cols = _read_columns(parser, args.input, factors + [args.response])
    levels = [_floats(parser, f, cols[f]) for f in factors]
    y = _floats(parser, args.response, cols[args.response])
    try:
        table = anova_3factor(*levels, y, names=factors)
    except UnbalancedDesignError as exc:
        print("error: unbalanced design; observations per cell:", file=sys.stderr)
        for cell, count in exc.cell_counts.items():
            label = ", ".join(f"{f}={v:g}" for f, v in zip(factors, cell))
            print(f"  {label}: {count}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(table.to_text())
    if args.csv_out:
        Path(args.csv_out).write_text(table.to_csv(), encoding="utf-8")
    return 0


def cmd_reproduce(parser, args, cfg: Config) -> int:
    if args.target == "fresh-factorial":
        result = check_fresh_factorial(
            base_seed=args.seed if args.seed is not None else cfg.seed,
            replicates=args.reps if args.reps is not None else cfg.factorial_reps,
            n_levels=cfg.n_levels, m_levels=cfg.m_levels, p_levels=cfg.p_levels,
        )
    else:
        result = TARGETS[args.target]()
    print(result.report())
    return 0 if result.passed else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="base seed (default 0)")
    common.add_argument("--out", help="output path")
    common.add_argument("--config", help="key=value settings file")

    parser = argparse.ArgumentParser(prog="partlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def dist_args(p):
        p.add_argument("--dist", required=True, choices=sorted({"uniform01", "normal", "cauchy", "binomial",
                                                               "sorted", "reversed", "allequal"}))
        p.add_argument("--m", type=int, help="binomial trials")
        p.add_argument("--p", type=float, help="binomial success probability")

    p = sub.add_parser("gen", parents=[common], help="write one generated input array as CSV")
    dist_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gen, parser=p)

    p = sub.add_parser("bench", parents=[common], help="timed, instrumented grid of sorting trials")
    p.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    dist_args(p)
    p.add_argument("--n-grid", required=True, type=parse_grid, help="start:stop:step")
    p.add_argument("--reps", type=int, help="replicates per n (default 50)")
    p.add_argument("--no-warmup", action="store_true", help="skip the discarded warmup run per n")
    p.set_defaults(func=cmd_bench, parser=p)

    p = sub.add_parser("fit", parents=[common], help="regression fit of two CSV columns")
    p.add_argument("--model", required=True, help="nlogn, poly:<d> or select:<dmax>")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--epsilon", type=float, help="degree-selection threshold (default 0.005)")
    p.add_argument("--group-mean", action="store_true", help="average y over equal x before fitting")
    p.add_argument("--plot-out", help="write x, y, y_hat CSV for plotting")
    p.set_defaults(func=cmd_fit, parser=p)

    p = sub.add_parser("anova", parents=[common], help="balanced three-factor ANOVA of a CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--factors", default="n,m,p")
    p.add_argument("--response", default="elapsed_s")
    p.add_argument("--csv-out", help="also write the table as CSV")
    p.set_defaults(func=cmd_anova, parser=p)

    p = sub.add_parser("reproduce", parents=[common], help="check a published table or run a fresh factorial")
    p.add_argument("target", choices=sorted(TARGETS))
    p.add_argument("--reps", type=int, help="replicates for fresh-factorial (default 3)")
    p.set_defaults(func=cmd_reproduce, parser=p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        args.parser.error(str(exc))
    try:
        return args.func(args.parser, args, cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
