"""Command-line interface: ``degstirling {table,poly,series,verify}``.

Data goes to stdout (or ``--output``), diagnostics to stderr.  Exit codes:
0 success / all checks pass, 1 verification failure, 2 usage error.
"""

import argparse
import json
import re
import sys
from fractions import Fraction
from math import factorial

from . import families as fam
from .core import LambdaPoly
from .formats import (
    family_to_csv,
    family_to_json,
    format_value,
    triangle_to_csv,
    triangle_to_json,
)
from .identities import SuiteConfig, parse_fault, run_all
from .series import Series, compose, exp_deg, geometric_pow, log_deg, scaled_log, variable
from .stirling import Kind, first_kind_unsigned_r_basis, second_kind_r_basis, signed_first_kind, triangle_via_egf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_RATIONAL = re.compile(r"^-?\d+(?:/\d+)?$")

FAMILIES = (
    "carlitz-bernoulli",
    "fully-degenerate-bernoulli",
    "fubini",
    "euler",
    "poly-bernoulli",
    "bernoulli-second-kind",
    "harmonic",
    "hyperharmonic",
)

SERIES = ("exp-deg", "log-deg", "scaled-log", "egf-first-kind", "egf-second-kind", "hyperharmonic-gf")

_SYMBOLS = {
    "carlitz-bernoulli": "B",
    "fully-degenerate-bernoulli": "β",
    "fubini": "F",
    "euler": "ℰ",
    "poly-bernoulli": "β^({p})",
    "bernoulli-second-kind": "b",
    "harmonic": "H",
    "hyperharmonic": "H^({r})",
}


class UsageError(Exception):
    pass


def rational(text):
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"expected an integer or a/b fraction, got {text!r}")
    return Fraction(text.strip())


def nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def int_list(text):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="degstirling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output_options(p, formats=("json", "csv", "text")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("table", help="degenerate r-Stirling triangle")
    p.add_argument("kind", choices=[k.value for k in Kind])
    p.add_argument("--r", type=nonnegative, default=0)
    p.add_argument("--n-max", type=nonnegative, default=6)
    p.add_argument("--lambda", dest="lam", type=rational, help="evaluate at this rational lambda")
    p.add_argument("--route", choices=("basis", "egf"), default="basis")
    output_options(p)

    p = sub.add_parser("poly", help="polynomial or number family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n-max", type=nonnegative, default=6)
    p.add_argument("--r", type=nonnegative)
    p.add_argument("--p", type=int)
    p.add_argument("--lambda", dest="lam", type=rational)
    output_options(p)

    p = sub.add_parser("series", help="coefficients of a named generating function")
    p.add_argument("name", choices=SERIES)
    p.add_argument("--order", type=nonnegative, default=24)
    p.add_argument("--k", type=nonnegative, default=1)
    p.add_argument("--r", type=nonnegative)
    p.add_argument("--x", type=rational, default=Fraction(1), help="argument of exp-deg")
    p.add_argument("--lambda", dest="lam", type=rational)
    output_options(p)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--n-max", type=nonnegative, default=10)
    p.add_argument("--r-max", type=nonnegative, default=3)
    p.add_argument("--p-set", type=int_list, default=(-2, -1, 0, 1, 2, 3))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=nonnegative, default=100)
    p.add_argument("--series-order", type=nonnegative, default=20)
    p.add_argument("--fault-inject", action="append", default=[], metavar="TARGET[:n[:k]]")
    p.add_argument("--stable", action="store_true", help="omit timing fields")
    p.add_argument("--jobs", type=int, default=1)
    output_options(p, ("text", "json"))
    return parser


# -- commands -------------------------------------------------------------


def cmd_table(args):
    kind = Kind(args.kind)
    if args.route == "egf":
        tri = triangle_via_egf(kind, args.r, args.n_max)
    elif kind is Kind.SECOND:
        tri = second_kind_r_basis(args.n_max, args.r)
    elif kind is Kind.UNSIGNED_FIRST:
        tri = first_kind_unsigned_r_basis(args.n_max, args.r)
    else:
        tri = signed_first_kind(args.n_max, args.r)
    if args.lam is not None:
        tri = tri.at_lambda(args.lam)
    if args.format == "json":
        return triangle_to_json(tri)
    if args.format == "csv":
        return triangle_to_csv(tri)
    lines = [f"# {kind.value} r={tri.r} n_max={tri.n_max}"]
    for n, row in enumerate(tri.entries):
        lines.append(f"n={n}: " + ", ".join(format_value(e) for e in row))
    return "\n".join(lines) + "\n"


def _family(args):
    n, r, p = args.n_max, args.r, args.p
    name = args.family
    if name == "carlitz-bernoulli":
        return fam.carlitz_bernoulli(n)
    if name == "fully-degenerate-bernoulli":
        return fam.fully_degenerate_bernoulli(n)
    if name == "bernoulli-second-kind":
        return fam.bernoulli_second_kind(n)
    if name == "fubini":
        return fam.fubini(n, r or 0)
    if name == "euler":
        if r is None:
            return fam.euler_polynomials(n)
        return fam.Family("euler", n, tuple(fam.euler(n, r)), {"r": r})
    if name == "poly-bernoulli":
        if p is None:
            raise UsageError("poly-bernoulli needs --p")
        r = r or 0
        return fam.Family("poly-bernoulli", n, tuple(fam.poly_bernoulli(p, n, r)), {"p": p, "r": r})
    if name == "harmonic":
        values = tuple(fam.harmonic_number(k) for k in range(n + 1))
        return fam.Family("harmonic", n, values, {})
    if r is None or r < 1:
        raise UsageError("hyperharmonic needs --r >= 1")
    return fam.hyperharmonic(r, n)


def cmd_poly(args):
    family = _family(args)
    if args.lam is not None:
        family = family.at_lambda(args.lam)
    if args.format == "json":
        return family_to_json(family)
    if args.format == "csv":
        return family_to_csv(family)
    symbol = _SYMBOLS[family.family].format(**family.params)
    header = " ".join([family.family] + [f"{k}={v}" for k, v in sorted(family.params.items())])
    lines = [f"# {header}"]
    for n, v in enumerate(family.values):
        lines.append(f"{symbol}_{n} = {format_value(v)}")
    return "\n".join(lines) + "\n"


def named_series(name, order, k=1, r=None, x=Fraction(1)):
    """The generating functions exposed by ``degstirling series``."""
    t = variable(order)
    if name == "exp-deg":
        return exp_deg(x, order)
    if name == "log-deg":
        return log_deg(order)
    if name == "scaled-log":
        return scaled_log(order)
    if name == "egf-first-kind":
        inner = -compose(log_deg(order), -t)
        return geometric_pow(r or 0, 1, order) * inner**k / factorial(k)
    if name == "egf-second-kind":
        return exp_deg(r or 0, order) * (exp_deg(1, order) - 1) ** k / factorial(k)
    if name == "hyperharmonic-gf":
        if r is None or r < 1:
            raise UsageError("hyperharmonic-gf needs --r >= 1")
        return Series(fam.hyperharmonic_gf(r, order), order)
    raise UsageError(f"unknown series {name!r}")


def cmd_series(args):
    s = named_series(args.name, args.order, args.k, args.r, args.x)
    coeffs = list(s.coeffs)
    if args.lam is not None:
        coeffs = [LambdaPoly.coerce(c.evaluate(args.lam)) for c in coeffs]
    strings = [format_value(c) for c in coeffs]
    if args.format == "json":
        doc = {"name": args.name, "order": args.order}
        if args.name.startswith("egf-"):
            doc["k"] = args.k
        if args.r is not None:
            doc["r"] = args.r
        doc["coefficients"] = strings
        return json.dumps(doc, indent=2) + "\n"
    if args.format == "csv":
        rows = ["n,value"]
        for n, (c, text) in enumerate(zip(coeffs, strings)):
            rows.append(f"{n},{text}" if c.is_constant() else f'{n},"{text}"')
        return "\n".join(rows) + "\n"
    return "\n".join(f"[t^{n}] {text}" for n, text in enumerate(strings)) + "\n"


def cmd_verify(args):
    faults = tuple(parse_fault(spec, args.n_max) for spec in args.fault_inject)
    config = SuiteConfig(
        n_max=args.n_max,
        r_max=args.r_max,
        p_set=tuple(args.p_set),
        seed=args.seed,
        trials=args.trials,
        series_order=args.series_order,
        faults=faults,
        jobs=args.jobs,
    )
    report = run_all(config)
    text = report.to_json(args.stable) if args.format == "json" else report.to_text(args.stable)
    print(f"{len(report.results)} checks, {len(report.failures)} failures", file=sys.stderr)
    return text, EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {"table": cmd_table, "poly": cmd_poly, "series": cmd_series, "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"degstirling: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    if isinstance(out, tuple):
        out, status = out
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
