"""Command line front end.

Subcommands
-----------
approx        sharp tail approximation at one (scenario, n, c)
exact         quadrature tail probability at one (scenario, n, c)
mc            seeded Monte Carlo tail estimate
compare       approximation vs. quadrature (vs. Monte Carlo) over an n list
rate          rate function and its second derivative on a grid (plot data)
bahadur       exact slope and Kullback-Leibler infimum at an alternative rho
laplace-demo  expansion coefficients vs. exact Gaussian moments

Output is CSV (default) or JSON, to stdout or ``--out PATH``.  Numbers are
rendered with 17 significant digits in CSV; JSON mirrors the same fields.
Identical flags always produce byte-identical output (Monte Carlo included,
through --seed).  Exit codes: 0 success, 2 precondition violation,
3 numerical (quadrature) failure.  Set SLD_CORREL_LOG=debug|info|warning
for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import __version__, densities, montecarlo, sld
from .errors import DomainError, NonConvergenceError
from .laplace import DerivativeJet, laplace_coefficient
from .scenarios import Model, Scenario
from .specfun import double_factorial_odd

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_NUMERICAL = 3

_SCENARIO_NAMES = [m.value for m in Model]


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _render(command: str, columns: list[str], rows: list[list], args) -> None:
    if args.format == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {"command": command, "rows": [dict(zip(columns, row)) for row in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scenario(args) -> Scenario:
    rho = getattr(args, "rho", None)
    return Scenario.from_name(args.scenario, 0.0 if rho is None else rho)


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"--n-list expects comma-separated integers, got {text!r}") from None
    if not values:
        raise DomainError("--n-list is empty")
    return values


def cmd_approx(args) -> None:
    s = _scenario(args)
    est = sld.tail_sld(s, args.n, args.c)
    columns = ["scenario", "n", "c", "rho", "log_prob", "prob", "leading_exponent", "log_prefactor"]
    rows = [[s.name, args.n, args.c, s.rho, est.log_prob, math.exp(est.log_prob),
             est.leading, est.log_prefactor]]
    _render("approx", columns, rows, args)


def cmd_exact(args) -> None:
    s = _scenario(args)
    res = densities.tail_exact(s, args.n, args.c)
    columns = ["scenario", "n", "c", "rho", "log_prob", "prob", "abs_error_estimate", "subdivisions"]
    rows = [[s.name, args.n, args.c, s.rho, res.log_value, math.exp(res.log_value),
             res.abs_error_estimate, res.subdivisions]]
    _render("exact", columns, rows, args)


def cmd_mc(args) -> None:
    s = _scenario(args)
    est = montecarlo.tail_mc(
        s, args.n, args.c, args.samples, args.seed,
        partitions=args.threads, threads=args.threads,
    )
    log_p = math.log(est.p_hat) if est.p_hat > 0.0 else float("-inf")
    columns = ["scenario", "n", "c", "samples", "seed", "partitions", "p_hat", "std_err", "log_p_hat"]
    rows = [[s.name, args.n, args.c, est.samples, est.seed, args.threads,
             est.p_hat, est.std_err, log_p]]
    _render("mc", columns, rows, args)


def cmd_compare(args) -> None:
    s = _scenario(args)
    with_mc = args.samples > 0
    columns = ["n", "log_sld", "sld", "log_exact", "exact"]
    if with_mc:
        columns += ["mc_p_hat", "mc_std_err"]
    columns += ["ratio", "n_abs_ratio_err"]
    rows = []
    for n in _parse_n_list(args.n_list):
        est = sld.tail_sld(s, n, args.c)
        ex = densities.tail_exact(s, n, args.c)
        ratio = math.exp(est.log_prob - ex.log_value)
        row = [n, est.log_prob, math.exp(est.log_prob), ex.log_value, math.exp(ex.log_value)]
        if with_mc:
            mc = montecarlo.tail_mc(
                s, n, args.c, args.samples, args.seed,
                partitions=args.threads, threads=args.threads,
            )
            row += [mc.p_hat, mc.std_err]
        row += [ratio, n * abs(ratio - 1.0)]
        rows.append(row)
    _render("compare", columns, rows, args)


def cmd_rate(args) -> None:
    if not abs(args.rho) < 1.0:
        raise DomainError(f"--rho must lie in (-1, 1), got {args.rho}")
    s = (
        Scenario(Model.GAUSSIAN_CENTERED, args.rho)
        if args.rho != 0.0
        else Scenario(Model.SPHERICAL_CENTERED)
    )
    grid = np.linspace(-0.999, 0.999, args.grid)
    if args.rho != 0.0 and not np.any(grid == args.rho):
        grid = np.sort(np.append(grid, args.rho))  # keep the zero of the rate on the grid
    second = sld.rate_second_derivative(args.rho, grid)
    rows = [[float(y), sld.rate_function(s, float(y)), float(dd)] for y, dd in zip(grid, second)]
    _render("rate", ["y", "rate", "rate_dd"], rows, args)


def cmd_bahadur(args) -> None:
    from . import bahadur as bh

    slope = bh.bahadur_slope(args.rho)
    j = bh.kl_infimum(args.rho)
    columns = ["rho", "slope", "kl_infimum", "two_j"]
    rows = [[args.rho, slope, j, 2.0 * j]]
    _render("bahadur", columns, rows, args)


def cmd_laplace_demo(args) -> None:
    if args.order < 0:
        raise DomainError(f"--order must be >= 0, got {args.order}")
    # Gaussian-moment benchmark: with phase -t^2/2 and amplitude t^{2m},
    # the integral is exact at order m and the coefficient must equal
    # sqrt(2*pi) (2m-1)!! (2m)!.
    rows = []
    for m in range(args.order + 1):
        phase = DerivativeJet(0.0, tuple([0.0, 0.0, -1.0] + [0.0] * (2 * m)))
        amp_derivs = [0.0] * (2 * m + 1)
        amp_derivs[2 * m] = float(math.factorial(2 * m))
        amp = DerivativeJet(0.0, tuple(amp_derivs))
        engine = laplace_coefficient(m, phase, amp)
        exact = math.sqrt(2.0 * math.pi) * (
            1.0 if m == 0 else float(double_factorial_odd(m - 1))
        ) * math.factorial(2 * m)
        rows.append([2 * m, m, engine, exact, abs(engine / exact - 1.0)])
    _render(
        "laplace-demo",
        ["moment_power", "order", "coefficient", "exact_gaussian_moment", "rel_err"],
        rows,
        args,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sldcorr",
        description="Sharp large-deviation tail approximations for empirical "
        "correlation coefficients, with quadrature and Monte Carlo oracles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", choices=_SCENARIO_NAMES, default="spherical-centered")
            p.add_argument("--rho", type=float, default=0.0,
                           help="correlation parameter (gaussian scenario only)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")

    p = sub.add_parser("approx", help="sharp tail approximation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    add_common(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("exact", help="quadrature tail probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    add_common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("mc", help="Monte Carlo tail estimate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1,
                   help="partition count (and worker pool size); part of the determinism key")
    add_common(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("compare", help="approximation vs oracles over a list of n")
    p.add_argument("--n-list", required=True, help="comma-separated sample sizes")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--samples", type=int, default=0, help="add a Monte Carlo column if > 0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rate", help="rate function plot data")
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--grid", type=int, default=2001)
    add_common(p, scenario=False)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("bahadur", help="exact slope and KL infimum")
    p.add_argument("--rho", type=float, required=True)
    add_common(p, scenario=False)
    p.set_defaults(func=cmd_bahadur)

    p = sub.add_parser("laplace-demo", help="expansion coefficients vs Gaussian moments")
    p.add_argument("--order", type=int, default=1)
    add_common(p, scenario=False)
    p.set_defaults(func=cmd_laplace_demo)

    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("SLD_CORREL_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(name)s %(levelname)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NonConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
