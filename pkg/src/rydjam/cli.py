"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 computational failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from contextlib import contextmanager

from .complexity import (
    ComplexityError,
    complexity,
    complexity_closed_b1,
    complexity_closed_b2,
    complexity_csv,
    kmer_complexity,
    kmer_rho_star,
    rho_star,
)
from . import genfunc, model, rsa
from .quadrature import QuadratureError

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 2, 3


class UsageError(Exception):
    pass


def _g(x: float) -> str:
    return f"{x:.15g}"


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


# --- subcommands -----------------------------------------------------------

def cmd_enumerate(args) -> int:
    if args.genfunc:
        row = genfunc.jammed_count_row(args.b, args.length)
    else:
        try:
            row = model.enumerate_jammed(args.length, args.b, cap=args.cap)
        except model.BruteForceLimitError as exc:
            raise UsageError(f"{exc} (pass --genfunc for the exact series route)") from None
    total = sum(row.values())
    with _output(args.output) as fh:
        if args.format == "csv":
            w = _writer(fh)
            w.writerow(["b", "N", "L", "count"])
            for N in sorted(row):
                w.writerow([args.b, N, args.length, str(row[N])])
        else:
            fh.write(f"b={args.b} L={args.length} total={total}\n")
            for N in sorted(row):
                fh.write(f"N={N} count={row[N]}\n")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    if args.kmer is not None:
        table = genfunc.kmer_counts(args.kmer, args.length_max)
    else:
        table = genfunc.jammed_counts(args.b, args.length_max)
    with _output(args.output) as fh:
        table.to_csv(fh)
    return EXIT_OK


def _grid(args):
    if args.rho is not None:
        return [args.rho]
    if args.steps is None or args.rho_min is None or args.rho_max is None:
        raise UsageError("give --rho, or all of --rho-min, --rho-max and --steps")
    if args.steps < 1 or not 0 <= args.rho_min <= args.rho_max <= 1:
        raise UsageError("invalid density grid: need 0 <= rho-min <= rho-max <= 1 and steps >= 1")
    if args.steps == 1:
        return [args.rho_min]
    return [args.rho_min + (args.rho_max - args.rho_min) * i / (args.steps - 1) for i in range(args.steps)]


def cmd_complexity(args) -> int:
    grid = _grid(args)
    with _output(args.output) as fh:
        w = _writer(fh)
        if args.kmer is not None:
            w.writerow(["k", "rho", "f"])
            ys = [kmer_complexity(args.kmer, r, check=True) for r in grid]
            for r, f in zip(grid, ys):
                w.writerow([args.kmer, _g(r), _g(f)])
        else:
            pts = [complexity(args.b, r) for r in grid]
            complexity_csv(args.b, pts, fh)
            ys = [p.f for p in pts]
    if args.svg:
        from .plotting import PlotSpec, Series, render_svg

        if args.kmer is not None:
            star, b_eff, label = kmer_rho_star(args.kmer), args.kmer - 1, f"k = {args.kmer}"
        else:
            star, b_eff, label = rho_star(args.b).rho_star, args.b, f"b = {args.b}"
        vlines = [(star, "equilibrium density")] if grid[0] <= star <= grid[-1] else []
        spec = PlotSpec([Series(grid, ys, label)], xlabel="density", ylabel="complexity f",
                        vlines=vlines, hlines=[(genfunc.growth_rate(b_eff).log_w, "ln w_b")])
        render_svg(spec, args.svg)
    return EXIT_OK


def _star_row(b):
    e = rho_star(b)
    return [b, _g(e.rho_star), _g(e.z_star), _g(e.f_at_star), _g(genfunc.growth_rate(b).log_w)]


def cmd_rho_star(args) -> int:
    with _output(args.output) as fh:
        w = _writer(fh)
        if args.kmer is not None or args.k_max is not None:
            w.writerow(["k", "rho_star"])
            for k in _range(args.kmer, args.k_max, 2):
                w.writerow([k, _g(kmer_rho_star(k))])
        else:
            w.writerow(["b", "rho_star", "z_star", "f_at_star", "ln_w_b"])
            for b in _range(args.b, args.b_max, 1):
                w.writerow(_star_row(b))
    return EXIT_OK


def _range(single, upto, start):
    if upto is not None:
        return range(start, upto + 1)
    if single is None:
        raise UsageError("give a single value or an upper bound")
    return [single]


def cmd_compare(args) -> int:
    status = EXIT_OK
    with _output(args.output) as fh:
        w = _writer(fh)
        if args.kmer:
            w.writerow(["k", "rho_star", "rho_inf"])
            for k in range(2, args.k_max + 1):
                try:
                    inf = rsa.kmer_jamming_limit(k, args.tol).value
                except (QuadratureError, ArithmeticError):
                    w.writerow([k, _g(kmer_rho_star(k)), "ERROR"])
                    status = EXIT_FAIL
                    continue
                w.writerow([k, _g(kmer_rho_star(k)), _g(inf)])
        else:
            w.writerow(["b", "rho_star", "rho_inf", "b_rho_star", "b_rho_inf", "f_at_star", "ln_w_b"])
            for b in range(1, args.b_max + 1):
                e = rho_star(b)
                ln_w = genfunc.growth_rate(b).log_w
                try:
                    inf = rsa.jamming_limit_quadrature(b, args.tol).value
                except QuadratureError:
                    w.writerow([b, _g(e.rho_star), "ERROR", _g(b * e.rho_star), "ERROR",
                                _g(e.f_at_star), _g(ln_w)])
                    status = EXIT_FAIL
                    continue
                w.writerow([b, _g(e.rho_star), _g(inf), _g(b * e.rho_star), _g(b * inf),
                            _g(e.f_at_star), _g(ln_w)])
    return status


def cmd_jamming_limit(args) -> int:
    if args.kmer is not None:
        res, key, val = rsa.kmer_jamming_limit(args.kmer, args.tol), "k", args.kmer
    else:
        res, key, val = rsa.jamming_limit_quadrature(args.b, args.tol), "b", args.b
    with _output(args.output) as fh:
        w = _writer(fh)
        w.writerow([key, "rho_inf", "abs_error_estimate", "evaluations"])
        w.writerow([val, _g(res.value), _g(res.abs_error_estimate), res.evaluations])
    return EXIT_OK


def cmd_renyi(args) -> int:
    res = rsa.renyi_constant(args.tol, args.y_max)
    with _output(args.output) as fh:
        w = _writer(fh)
        w.writerow(["value", "abs_error_estimate", "evaluations"])
        w.writerow([_g(res.value), _g(res.abs_error_estimate), res.evaluations])
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = rsa.SimConfig(args.length, args.b, args.trials, args.seed)
    s = rsa.simulate_rsa(config, keep_trials=args.per_trial, workers=args.workers)
    with _output(args.output) as fh:
        if args.format == "jsonl":
            fh.write(json.dumps({"L": s.L, "b": s.b, "trials": s.trials, "seed": s.seed,
                                 "mean_density": s.mean_density, "std_error": s.std_error}) + "\n")
            for t, d in enumerate(s.per_trial_densities or ()):
                fh.write(json.dumps({"trial": t, "density": d}) + "\n")
        else:
            w = _writer(fh)
            w.writerow(["L", "b", "trials", "seed", "mean_density", "std_error"])
            w.writerow([s.L, s.b, s.trials, s.seed, _g(s.mean_density), _g(s.std_error)])
            if s.per_trial_densities is not None:
                w.writerow(["trial", "density"])
                for t, d in enumerate(s.per_trial_densities):
                    w.writerow([t, _g(d)])
    return EXIT_OK


def cmd_plot(args) -> int:
    from .plotting import PlotSpec, Series, render_svg

    if args.figure == "complexity":
        series = []
        for b in range(1, args.b_max + 1):
            lo, hi = 1 / (2 * b + 1), 1 / (b + 1)
            xs = [lo + (hi - lo) * i / (args.steps - 1) for i in range(args.steps)]
            series.append(Series(xs, [complexity(b, x).f for x in xs], f"b = {b}"))
        spec = PlotSpec(series, xlabel="density", ylabel="complexity f")
    elif args.figure == "kmer-complexity":
        series = []
        for k in range(2, args.k_max + 1):
            lo = k / (2 * k - 1)
            xs = [lo + (1 - lo) * i / (args.steps - 1) for i in range(args.steps)]
            series.append(Series(xs, [kmer_complexity(k, x) for x in xs], f"k = {k}"))
        spec = PlotSpec(series, xlabel="coverage", ylabel="complexity f")
    elif args.figure == "panel":
        b = args.b
        lo, hi = 1 / (2 * b + 1), 1 / (b + 1)
        xs = [lo + (hi - lo) * i / (args.steps - 1) for i in range(args.steps)]
        star = rho_star(b).rho_star
        inf = rsa.jamming_limit_quadrature(b).value
        spec = PlotSpec([Series(xs, [complexity(b, x).f for x in xs], f"b = {b}")],
                        xlabel="density", ylabel="complexity f",
                        vlines=[(star, "equilibrium density"), (inf, "jamming limit")])
    else:
        scaled = args.figure == "compare-scaled"
        if args.kmer:
            ks = list(range(2, args.k_max + 1))
            star = [kmer_rho_star(k) for k in ks]
            inf = [rsa.kmer_jamming_limit(k, args.tol).value for k in ks]
            xs, xlabel = ks, "k"
        else:
            bs = list(range(1, args.b_max + 1))
            star = [rho_star(b).rho_star * (b if scaled else 1) for b in bs]
            inf = [rsa.jamming_limit_quadrature(b, args.tol).value * (b if scaled else 1) for b in bs]
            xs, xlabel = bs, "b"
        spec = PlotSpec([Series(xs, star, "equilibrium density", "o-"),
                         Series(xs, inf, "jamming limit", "s-")], xlabel=xlabel,
                        ylabel=("b × density" if scaled and not args.kmer else "density"))
    render_svg(spec, args.output)
    return EXIT_OK


def self_check() -> list[tuple[str, bool]]:
    """Quick cross-module identities; returns ``(name, passed)`` pairs."""
    checks = []
    xs = [1 / 3 + (1 / 6) * i / 51 for i in range(1, 51)]
    checks.append(("closed form b=1 vs general path",
                   max(abs(complexity(1, x).f - complexity_closed_b1(x)) for x in xs) <= 1e-10))
    xs = [1 / 5 + (2 / 15) * i / 51 for i in range(1, 51)]
    checks.append(("closed form b=2 vs general path",
                   max(abs(complexity(2, x).f - complexity_closed_b2(x)) for x in xs) <= 1e-10))
    ok = True
    for b in (1, 2, 3):
        table = genfunc.jammed_counts(b, 14)
        ok &= all(table.row(L) == model.enumerate_jammed(L, b) for L in range(15))
    checks.append(("brute force vs generating function, L <= 14", ok))
    checks.append(("max complexity equals ln w_b, b <= 5",
                   all(abs(rho_star(b).f_at_star - genfunc.growth_rate(b).log_w) <= 1e-9 for b in range(1, 6))))
    checks.append(("sum over lengths equals (b+1)^(N+1)",
                   all(genfunc.sum_over_lengths(b, N) == (b + 1) ** (N + 1) for b in (1, 2) for N in range(1, 5))))
    checks.append(("jamming limit b=1",
                   abs(rsa.jamming_limit_quadrature(1).value - (1 - math.exp(-2)) / 2) <= 1e-9))
    return checks


# --- parser ----------------------------------------------------------------

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _kmer_int(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"k-mer length must be >= 2, got {text}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rydjam", description=__doc__.splitlines()[0])
    p.add_argument("--self-check", action="store_true", help="run cross-module identity checks and exit")
    sub = p.add_subparsers(dest="command")

    def out(sp):
        sp.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    sp = sub.add_parser("enumerate", help="count jammed configurations of one length")
    sp.add_argument("--b", type=_positive_int, required=True)
    sp.add_argument("--length", type=_nonneg_int, required=True)
    sp.add_argument("--genfunc", action="store_true", help="use the exact series route (no size cap)")
    sp.add_argument("--cap", type=_nonneg_int, default=model.DEFAULT_BRUTE_FORCE_CAP)
    sp.add_argument("--format", choices=["table", "csv"], default="table")
    out(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("coeffs", help="CSV table of exact counts J_{N,L}")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=_positive_int)
    g.add_argument("--kmer", type=_kmer_int)
    sp.add_argument("--length-max", type=_nonneg_int, required=True)
    out(sp)
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("complexity", help="complexity function on a density grid")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=_positive_int)
    g.add_argument("--kmer", type=_kmer_int)
    sp.add_argument("--rho", type=float)
    sp.add_argument("--rho-min", type=float)
    sp.add_argument("--rho-max", type=float)
    sp.add_argument("--steps", type=int)
    sp.add_argument("--svg", default=None, help="also write an SVG plot here")
    out(sp)
    sp.set_defaults(func=cmd_complexity)

    sp = sub.add_parser("rho-star", help="equilibrium density")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=_positive_int)
    g.add_argument("--b-max", type=_positive_int)
    g.add_argument("--kmer", type=_kmer_int)
    g.add_argument("--k-max", type=_kmer_int)
    out(sp)
    sp.set_defaults(func=cmd_rho_star)

    sp = sub.add_parser("compare", help="equilibrium density vs jamming limit table")
    sp.add_argument("--b-max", type=_positive_int, default=20)
    sp.add_argument("--kmer", action="store_true", help="k-mer coverages for k = 2..k-max")
    sp.add_argument("--k-max", type=_kmer_int, default=20)
    sp.add_argument("--tol", type=_positive_float, default=1e-10)
    out(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("jamming-limit", help="RSA jamming limit by quadrature")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=_positive_int)
    g.add_argument("--kmer", type=_kmer_int)
    sp.add_argument("--tol", type=_positive_float, default=1e-10)
    out(sp)
    sp.set_defaults(func=cmd_jamming_limit)

    sp = sub.add_parser("renyi", help="Renyi parking constant by nested quadrature")
    sp.add_argument("--tol", type=_positive_float, default=1e-10)
    sp.add_argument("--y-max", type=_positive_float, default=None)
    out(sp)
    sp.set_defaults(func=cmd_renyi)

    sp = sub.add_parser("simulate", help="Monte Carlo random sequential adsorption")
    sp.add_argument("--b", type=_positive_int, required=True)
    sp.add_argument("--length", type=_positive_int, required=True)
    sp.add_argument("--trials", type=_positive_int, default=1)
    sp.add_argument("--seed", type=_nonneg_int, default=0)
    sp.add_argument("--workers", type=_positive_int, default=1)
    sp.add_argument("--per-trial", action="store_true")
    sp.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    out(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("plot", help="SVG figures")
    sp.add_argument("figure", choices=["complexity", "kmer-complexity", "panel", "compare", "compare-scaled"])
    sp.add_argument("--b", type=_positive_int, default=1)
    sp.add_argument("--b-max", type=_positive_int, default=10)
    sp.add_argument("--kmer", action="store_true")
    sp.add_argument("--k-max", type=_kmer_int, default=11)
    sp.add_argument("--steps", type=int, default=200)
    sp.add_argument("--tol", type=_positive_float, default=1e-10)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.self_check:
        results = self_check()
        for name, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
        return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rydjam {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, QuadratureError, ComplexityError) as exc:
        print(f"rydjam {args.command}: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
