"""Command-line front end.

Subcommands: eval (any family function on a grid -> CSV), figures (the nine
reference CSVs), sample (draws plus a KS check), validate (the oracle
batteries), moments, quantile.

Exit codes: 0 success, 1 validation/convergence failure, 2 usage or
parameter error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import characterize as chz
from . import distribution as dist
from . import skew as sk
from .distribution import GqldParams
from .results import GridSpec
from .special import ConvergenceError
from .validate import run_suite

_FUNCTIONS = ("pdf", "logpdf", "cdf", "survival", "hazard", "cumhaz", "skewpdf", "charfn")
_SOURCES = ("inverse", "thm1", "thm2", "skew")
_SUITES = ("all", "special", "dist", "skew", "thm")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--beta", type=float, default=3.0)
    sub.add_argument("--a", type=float, default=1.0)
    sub.add_argument("--q", type=float, default=2.0)
    sub.add_argument("--mu", type=float, default=0.0)
    sub.add_argument("--theta", type=float, default=1.0)


def _params(args: argparse.Namespace) -> GqldParams:
    return GqldParams(alpha=args.alpha, beta=args.beta, a=args.a, q=args.q,
                      mu=args.mu, theta=args.theta)


def _grid(args: argparse.Namespace) -> GridSpec:
    return GridSpec(start=args.from_, stop=args.to, step=args.step)


def _write_csv(path: Path, comments: list[str], header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _cmd_eval(args: argparse.Namespace) -> int:
    fn = args.function_pos or args.function
    if fn is None:
        raise ValueError("eval needs a function (positional or --function)")
    if fn not in _FUNCTIONS:
        raise ValueError(f"unknown function {fn!r}; choose from {', '.join(_FUNCTIONS)}")
    p = _params(args)
    grid = _grid(args)
    xs = grid.points()
    comments = [p.fingerprint()]
    if fn == "skewpdf":
        s = sk.SkewParams(base=p, skew=args.skew)
        comments = [s.fingerprint(), f"norm_const={_fmt(s.norm_const)} "
                    f"standard_base={s.standard_base}"]
        rows = zip(xs, sk.skew_pdf(s, xs))
        header = "x,value"
    elif fn == "charfn":
        vals = [dist.char_fn(p, float(t)) for t in xs]
        rows = ((t, v.real, v.imag) for t, v in zip(xs, vals))
        header = "t,re,im"
    else:
        scalar_ops = {
            "pdf": lambda y: dist.pdf(p, y),
            "logpdf": lambda y: dist.log_pdf(p, y),
            "cdf": lambda y: dist.cdf(p, y),
            "survival": lambda y: dist.survival(p, y),
            "hazard": lambda y: dist.hazard(p, y),
            "cumhaz": lambda y: dist.cumulative_hazard(p, y),
        }
        op = scalar_ops[fn]
        rows = ((float(x), op(float(x))) for x in xs)
        header = "x,value"
    _write_csv(Path(args.out), comments, header, rows)
    return 0


# figure configurations: the density panels share alpha=2, beta=4, a=1 and
# vary (mu, theta); q=3 would break delta > 0 for that shape pair, hence 2.9
_DENSITY_FIG_Q = (1.5, 2.0, 2.5, 2.9)
_DENSITY_FIGS = {
    "fig1": (2.0, 2.05),
    "fig2": (8.0, 6.0),
    "fig3": (5.0, 5.0),
    "fig4": (-1.0, 3.0),
}
_SURVIVAL_FIG_Q = (1.5, 2.0, 2.5)
_SKEW_FIGS = {"fig8": (0.0, 1.0, 5.0, 20.0), "fig9": (0.0, -1.0, -5.0, -20.0)}


def _cmd_figures(args: argparse.Namespace) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    for name, (mu, theta) in _DENSITY_FIGS.items():
        xs = np.linspace(mu - 10.0 * theta, mu + 14.0 * theta, 961)
        cols = []
        for q in _DENSITY_FIG_Q:
            p = GqldParams(alpha=2.0, beta=4.0, a=1.0, q=q, mu=mu, theta=theta)
            cols.append(dist.pdf(p, xs))
        _write_csv(outdir / f"{name}.csv",
                   [f"density curves alpha=2 beta=4 a=1 mu={mu:g} theta={theta:g}",
                    "q list 1.5,2,2.5,2.9 (q=3 would violate beta/(q-1) > alpha)"],
                   "x," + ",".join(f"q={q:g}" for q in _DENSITY_FIG_Q),
                   zip(xs, *cols))

    base_cfgs = [GqldParams(alpha=1.0, beta=3.0, a=1.0, q=q) for q in _SURVIVAL_FIG_Q]
    xs = np.linspace(-10.0, 10.0, 1001)
    for name, op in (("fig5", dist.survival),
                     ("fig6", lambda p, t: dist.cumulative_hazard(p, float(t))),
                     ("fig7", lambda p, t: dist.hazard(p, float(t)))):
        cols = []
        for p in base_cfgs:
            if name == "fig5":
                cols.append(op(p, xs))
            else:
                cols.append(np.array([op(p, x) for x in xs]))
        _write_csv(outdir / f"{name}.csv",
                   ["alpha=1 beta=3 a=1 mu=0 theta=1"],
                   "x," + ",".join(f"q={q:g}" for q in _SURVIVAL_FIG_Q),
                   zip(xs, *cols))

    base = sk.standard_skew_base(2.0)
    xs = np.linspace(-10.0, 10.0, 2001)
    for name, skews in _SKEW_FIGS.items():
        cols = [sk.skew_pdf(sk.SkewParams(base=base, skew=a_s), xs) for a_s in skews]
        _write_csv(outdir / f"{name}.csv",
                   [f"skew family over symmetric base {base.fingerprint()}"],
                   "x," + ",".join(f"skew={a_s:g}" for a_s in skews),
                   zip(xs, *cols))
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    n, seed = args.n, args.seed
    if args.source == "inverse":
        p = _params(args)
        batch = dist.sample(p, n, seed)
        cdf = lambda v: dist.cdf(p, v)
    elif args.source == "thm1":
        p = _params(args)
        batch = chz.sample_exp_transform(p, n, seed)
        cdf = lambda v: dist.cdf_alpha1(p, v)
    elif args.source == "thm2":
        target = chz.t_transform_target(args.m, args.a, args.q, args.mu, args.theta)
        batch = chz.sample_t_transform(args.m, args.a, args.q, args.mu, args.theta, n, seed)
        cdf = lambda v: dist.cdf(target, v)
    else:
        s = sk.SkewParams(base=_params(args), skew=args.skew)
        batch = sk.skew_sample(s, n, seed)
        cdf = lambda v: sk.skew_cdf_sorted(s, v)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for v in batch.values:
            fh.write(_fmt(float(v)) + "\n")
    d, pv = chz.ks_statistic(batch, cdf)
    print(f"ks={_fmt(d)} p={_fmt(pv)}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite, seed=args.seed)
    ok = True
    for rep in reports:
        print(rep.line())
        ok = ok and rep.passed
    return 0 if ok else 1


def _cmd_moments(args: argparse.Namespace) -> int:
    p = _params(args)
    print(f"mean={_fmt(dist.mean(p))} variance={_fmt(dist.variance(p))}")
    return 0


def _cmd_quantile(args: argparse.Namespace) -> int:
    p = _params(args)
    print(_fmt(dist.quantile(p, args.prob)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gqld",
        description="Generalized q-logistic distribution toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    ev = subs.add_parser("eval", help="evaluate a function on a grid, write CSV")
    ev.add_argument("function_pos", nargs="?", choices=_FUNCTIONS, metavar="function")
    ev.add_argument("--function", choices=_FUNCTIONS)
    _add_param_flags(ev)
    ev.add_argument("--skew", type=float, default=0.0)
    ev.add_argument("--from", dest="from_", type=float, required=True)
    ev.add_argument("--to", type=float, required=True)
    ev.add_argument("--step", type=float, required=True)
    ev.add_argument("--out", required=True)
    ev.set_defaults(handler=_cmd_eval)

    fig = subs.add_parser("figures", help="emit fig1.csv ... fig9.csv")
    fig.add_argument("--outdir", required=True)
    fig.set_defaults(handler=_cmd_figures)

    sa = subs.add_parser("sample", help="draw samples, print a KS check")
    sa.add_argument("--source", choices=_SOURCES, default="inverse")
    _add_param_flags(sa)
    sa.add_argument("--skew", type=float, default=0.0)
    sa.add_argument("--m", type=int, default=5)
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--out", required=True)
    sa.set_defaults(handler=_cmd_sample)

    va = subs.add_parser("validate", help="run the oracle batteries")
    va.add_argument("--suite", choices=_SUITES, default="all")
    va.add_argument("--seed", type=int, default=0)
    va.set_defaults(handler=_cmd_validate)

    mo = subs.add_parser("moments", help="print mean and variance")
    _add_param_flags(mo)
    mo.set_defaults(handler=_cmd_moments)

    qu = subs.add_parser("quantile", help="print the inverse CDF at --prob")
    _add_param_flags(qu)
    qu.add_argument("--prob", type=float, required=True)
    qu.set_defaults(handler=_cmd_quantile)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
