"""Batch command-line interface.

Data goes to stdout (CSV with a header row, or compact JSON); diagnostics go
to stderr.  Exit codes: 0 success, 1 a verified inequality failed, 2 bad
input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import DomainError, NonIntegrableError
from .levelsets import check_level_bound, layer_cake_check, level_set
from .maximal import a1_constant_exact, maximal_at, maximal_values
from .rearrangement import check_star_a1, rearrange
from .rhi import pointwise_gap, pointwise_gaps, sharpness_sweep, verify_rhi
from .weights import PowerWeight, dyadic_intervals, parse_weight

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _csv(rows, header, out):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(f"{float(v):.12g}" for v in row) + "\n")


def _json(obj, out):
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _side(s: str) -> str:
    return s.split("-")[0]


def cmd_maximal(a, out):
    w = a.weight
    xs = (np.arange(a.grid) + 0.5) / a.grid
    if isinstance(w, PowerWeight):
        M = [maximal_at(w, x).value for x in xs]
    else:
        M = maximal_values(w, xs)
    _csv(zip(xs, M), ["x", "M"], out)
    return EXIT_OK


def cmd_a1(a, out):
    r = a1_constant_exact(a.weight)
    _json({"constant": r.constant, "argmax": r.argmax_breakpoint, "side": _side(r.side)}, out)
    return EXIT_OK


def cmd_rearrange(a, out):
    w = a.weight
    if isinstance(w, PowerWeight):
        raise DomainError("rearrange needs a piecewise weight (a power weight is already decreasing)")
    c = a1_constant_exact(w).constant
    star = rearrange(w)
    chk = check_star_a1(star, c)
    _json({"weight": star.to_dict(), "c": c, "worst_ratio": chk.worst_ratio, "worst_t": chk.worst_t, "holds": chk.holds}, out)
    return EXIT_OK if chk.holds else EXIT_VIOLATION


def cmd_levelset(a, out):
    w = a.weight
    ls = level_set(w, a.lam)
    doc = {
        "lambda": ls.lam,
        "components": [[I.lo, I.hi] for I in ls.components],
        "measure": ls.measure,
        "mass": ls.mass,
        "level_bound": None,
    }
    code = EXIT_OK
    if a.lam >= w.total_mass:
        b = check_level_bound(w, a.lam)
        doc["level_bound"] = {"measure": b.measure, "mass_over_lambda": b.mass_over_lambda, "pass": b.passed}
        code = EXIT_OK if b.passed else EXIT_VIOLATION
    _json(doc, out)
    return code


def cmd_layercake(a, out):
    r = layer_cake_check(a.weight, a.p, a.tol)
    _json({"lhs": r.lhs, "rhs": r.rhs, "diff": r.diff}, out)
    return EXIT_OK if r.diff <= a.check_rtol * abs(r.lhs) else EXIT_VIOLATION


def cmd_rhi(a, out):
    reports = verify_rhi(a.weight, a.p, dyadic_intervals(a.dyadic_depth), a.c)
    _csv(
        ((r.interval.lo, r.interval.hi, r.lhs, r.rhs_base, r.sharp_k, r.margin) for r in reports),
        ["lo", "hi", "lhs", "rhs_base", "K", "margin"],
        out,
    )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def cmd_sharpness(a, out):
    rows = sharpness_sweep(a.c, a.steps)
    _csv(((r.p, r.ratio, r.sharp_k, r.ratio_over_k) for r in rows), ["p", "ratio", "K", "ratio_over_K"], out)
    ok = all(abs(r.ratio_over_k - 1.0) <= 1e-9 for r in rows)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_gap(a, out):
    w = a.weight
    c = a.c if a.c is not None else a1_constant_exact(w).constant
    xs = (np.arange(a.samples) + 0.5) / a.samples
    if isinstance(w, PowerWeight):
        gaps = np.array([pointwise_gap(w, a.p, c, x) for x in xs])
        phi_p = w(xs) ** a.p
    else:
        xs = xs[~np.isin(xs, w.breakpoints)]
        gaps = pointwise_gaps(w, a.p, c, xs)
        phi_p = w(xs) ** a.p
    _csv(zip(xs, gaps), ["x", "gap"], out)
    return EXIT_OK if np.all(gaps >= -1e-12 * phi_p) else EXIT_VIOLATION


def _weight_arg(s):
    try:
        return parse_weight(s)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="a1lab", description="Exact computations for A1 weights on (0, 1).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("maximal", cmd_maximal, "maximal function on a midpoint grid (CSV)")
    sp.add_argument("--weight", type=_weight_arg, required=True)
    sp.add_argument("--grid", type=int, default=100)

    sp = add("a1", cmd_a1, "exact A1 constant (JSON)")
    sp.add_argument("--weight", type=_weight_arg, required=True)

    sp = add("rearrange", cmd_rearrange, "decreasing rearrangement and its averaged A1 check (JSON)")
    sp.add_argument("--weight", type=_weight_arg, required=True)

    sp = add("levelset", cmd_levelset, "components of {M phi > lambda} (JSON)")
    sp.add_argument("--weight", type=_weight_arg, required=True)
    sp.add_argument("--lambda", dest="lam", type=float, required=True)

    sp = add("layercake", cmd_layercake, "layer-cake identity for (M phi)^p (JSON)")
    sp.add_argument("--weight", type=_weight_arg, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--check-rtol", type=float, default=1e-6)

    sp = add("rhi-check", cmd_rhi, "reverse Hoelder margins on dyadic intervals (CSV)")
    sp.add_argument("--weight", type=_weight_arg, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--dyadic-depth", type=int, default=4)
    sp.add_argument("--c", type=float, default=None)

    sp = add("sharpness", cmd_sharpness, "power-weight ratio against the sharp constant (CSV)")
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--steps", type=int, default=50)

    sp = add("pointwise-gap", cmd_gap, "pointwise proof inequality at midpoint samples (CSV)")
    sp.add_argument("--weight", type=_weight_arg, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--c", type=float, default=None)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (_UsageError, DomainError, NonIntegrableError) as exc:
        err.write(f"a1lab: error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())
