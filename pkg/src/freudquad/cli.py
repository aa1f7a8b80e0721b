"""Command-line front end: rules, integration, benchmarks, and
equilibrium-measure data emission."""

import argparse
import json
import sys
import time

import numpy as np

from . import backend
from .equilibrium import cdf, density, solve_support
from .errors import FreudQuadError
from .freud import freud_rule
from .hermite import hermite_rule, hermite_rule_asy
from .potentials import FreudPotential
from .recurrence import golub_welsch, hermite_coeffs, hermite_rule_rec, \
    stieltjes_coeffs

_FUNCTIONS = {
    "one": lambda x: np.ones_like(x),
    "x": lambda x: x,
    "x^2": lambda x: x*x,
    "x^4": lambda x: x**4,
    "cos": np.cos,
    "runge-cos": lambda x: np.exp(np.cos(10.0*x))/(1.0 + 25.0*x*x),
}
_FUNCTION_ALIASES = {"1": "one", "x2": "x^2", "x4": "x^4"}


def _fmt(x):
    return "%.17g" % float(x)


def _parse_potential(parser, text):
    if text is None:
        parser.error("--V is required for the freud weight")
    try:
        return FreudPotential.parse(text)
    except FreudQuadError as exc:
        parser.error(str(exc))


def _build_rule(parser, args):
    weight = args.weight
    method = args.method
    sub = bool(args.subsample)
    if weight == "hermite":
        if method == "auto":
            return hermite_rule(args.n, subsample=sub)
        if method == "asy":
            return hermite_rule_asy(args.n, subsample=sub)
        if method == "rec":
            return hermite_rule_rec(args.n, subsample=sub)
        if method == "gw":
            return golub_welsch(hermite_coeffs(args.n), args.n,
                                weight_tag="hermite")
    else:
        V = _parse_potential(parser, args.V)
        if method in ("auto", "general"):
            return freud_rule(V, args.n, subsample=sub)
        if method == "gw":
            return golub_welsch(stieltjes_coeffs(V, args.n), args.n,
                                weight_tag="freud")
        parser.error("method %r is not available for the freud weight"
                     % method)
    parser.error("unknown method %r" % method)


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _rule_record(rule, seconds, fmt, out):
    idx = rule.global_indices()
    meta = {
        "n": rule.total_n,
        "weight_tag": rule.weight_tag,
        "method": rule.method,
        "subsample": rule.subsampled,
        "trivial_skipped": rule.trivial_skipped,
        "rows": len(rule),
        "seconds": seconds,
    }
    if fmt == "json":
        rows = [[int(k), float(x), float(w)]
                for k, x, w in zip(idx, rule.nodes, rule.weights)]
        text = json.dumps({"metadata": meta, "rows": rows}) + "\n"
    else:
        lines = ["# %s=%s" % (k, meta[k]) for k in sorted(meta)]
        lines.append("k,node,weight")
        for k, x, w in zip(idx, rule.nodes, rule.weights):
            lines.append("%d,%s,%s" % (k, _fmt(x), _fmt(w)))
        text = "\n".join(lines) + "\n"
    _emit(text, out)


def cmd_nodes(parser, args):
    t0 = time.perf_counter()
    rule = _build_rule(parser, args)
    dt = time.perf_counter() - t0
    _rule_record(rule, dt, args.format, args.out)
    return 0


def cmd_integrate(parser, args):
    name = _FUNCTION_ALIASES.get(args.f, args.f)
    if name not in _FUNCTIONS:
        parser.error("unknown function id %r (choose from %s)"
                     % (args.f, ", ".join(sorted(_FUNCTIONS))))
    f = _FUNCTIONS[name]
    rule = _build_rule(parser, args)
    value = rule.integrate(f)
    lines = [_fmt(value)]
    if args.reference:
        if args.weight == "hermite":
            ref = hermite_rule(args.reference)
        else:
            ref = freud_rule(_parse_potential(parser, args.V),
                             args.reference)
        lines.append(_fmt(abs(value - ref.integrate(f))))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


_BENCH_METHODS = ("asy", "asy-sub", "rec", "gw")


def _bench_once(method, n):
    if method == "asy":
        hermite_rule_asy(n)
    elif method == "asy-sub":
        hermite_rule_asy(n, subsample=True)
    elif method == "rec":
        hermite_rule_rec(n)
    elif method == "gw":
        golub_welsch(hermite_coeffs(n), n, weight_tag="hermite")


def cmd_bench(parser, args):
    sizes = [int(t) for t in args.sizes.split(",") if t]
    methods = [t.strip() for t in args.methods.split(",") if t.strip()]
    for m in methods:
        if m not in _BENCH_METHODS:
            parser.error("unknown method %r (choose from %s)"
                         % (m, ", ".join(_BENCH_METHODS)))
    backends = [t.strip() for t in args.backends.split(",") if t.strip()]
    prev = backend.active_name()
    lines = ["method,backend,n,seconds"]
    try:
        for bk in backends:
            backend.set_backend(bk)
            for m in methods:
                _bench_once(m, min(sizes))  # warm any jit caches
                for n in sizes:
                    walls = []
                    for _ in range(max(1, args.repeats)):
                        t0 = time.perf_counter()
                        _bench_once(m, n)
                        walls.append(time.perf_counter() - t0)
                    lines.append("%s,%s,%d,%s"
                                 % (m, bk, n, _fmt(np.median(walls))))
    finally:
        backend.set_backend(prev)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_equilibrium(parser, args):
    V = _parse_potential(parser, args.V)
    mu = solve_support(V, args.n)
    xs = np.linspace(mu.a, mu.b, args.grid)
    psi = density(mu, xs)
    F = cdf(mu, xs)
    meta = {
        "a": mu.a,
        "b": mu.b,
        "beta": [float(b) for b in mu.beta],
        "n": mu.n_param,
        "grid": args.grid,
    }
    if args.format == "json":
        rows = [[float(x), float(p), float(c)]
                for x, p, c in zip(xs, psi, F)]
        text = json.dumps({"metadata": meta, "rows": rows}) + "\n"
    else:
        lines = ["# %s=%s" % (k, meta[k]) for k in sorted(meta)]
        lines.append("x,psi,F")
        for x, p, c in zip(xs, psi, F):
            lines.append("%s,%s,%s" % (_fmt(x), _fmt(p), _fmt(c)))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _add_rule_flags(sp):
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--weight", choices=("hermite", "freud"),
                    default="hermite")
    sp.add_argument("--V", default=None,
                    help="potential: x^k or comma coefficient list, "
                         "constant term first")
    sp.add_argument("--method", choices=("auto", "asy", "rec", "gw"),
                    default="auto")
    sp.add_argument("--subsample", action="store_true")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="freudquad",
        description="Gauss quadrature for exp(-x^2) and exp(-V(x)) weights")
    sub = parser.add_subparsers(dest="command", required=True)

    p_nodes = sub.add_parser("nodes", help="compute a quadrature rule")
    _add_rule_flags(p_nodes)

    p_int = sub.add_parser("integrate", help="integrate a registered f")
    _add_rule_flags(p_int)
    p_int.add_argument("--f", required=True,
                       help="function id: %s" % ", ".join(sorted(_FUNCTIONS)))
    p_int.add_argument("--reference", type=int, default=0,
                       help="reference rule size for an error estimate")

    p_bench = sub.add_parser("bench", help="median wall times per method")
    p_bench.add_argument("--sizes", required=True,
                         help="comma-separated rule sizes")
    p_bench.add_argument("--methods", default="asy",
                         help="comma-separated: %s" % ",".join(_BENCH_METHODS))
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--backends", default=backend.active_name(),
                         help="comma-separated kernel backends to time")
    p_bench.add_argument("--out", default=None)

    p_eq = sub.add_parser("equilibrium",
                          help="equilibrium measure density and CDF")
    p_eq.add_argument("--V", required=True)
    p_eq.add_argument("--n", type=int, default=1)
    p_eq.add_argument("--grid", type=int, default=1001)
    p_eq.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eq.add_argument("--out", default=None)

    return parser


_COMMANDS = {
    "nodes": cmd_nodes,
    "integrate": cmd_integrate,
    "bench": cmd_bench,
    "equilibrium": cmd_equilibrium,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](parser, args)
    except FreudQuadError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
