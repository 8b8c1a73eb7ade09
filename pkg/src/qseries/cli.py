"""Command-line front end.

Exit codes: 0 every check verified, 1 some check failed, 2 usage error,
3 internal error while building a series.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import arith, catalog, hyper, numerics, wz
from .products import PRODUCT_SIDE_NAMES, psi_sum, product_side
from .series import LaurentSeries, SeriesError

ORDER_ENV = "QSERIES_ORDER"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

SUM_SIDES = {
    "pi1.lhs": hyper.pi1_lhs,
    "pi2.lhs": hyper.pi2_lhs,
    "q2.lhs": hyper.q2_lhs,
    "qid.lhs": hyper.qid_lhs,
    "gl1.lhs": hyper.gl1_lhs,
    "gl2.lhs": hyper.gl2_lhs,
    "psi.sum": psi_sum,
    "pi1.lambert": lambda n: arith.lambert_expand("pi1", n),
    "pi2.lambert": lambda n: arith.lambert_expand("pi2", n),
    "q2.lambert": lambda n: arith.lambert_expand("q2rhs", n),
    "q2.wz": wz.q2_from_telescoping,
}

EXPAND_NAMES = tuple(sorted(list(SUM_SIDES) + list(PRODUCT_SIDE_NAMES)))


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _eps_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad eps list: {text!r}") from None


def _grid(text: str) -> dict:
    """``n=0:25,k=0:25`` (either part optional; a bare number means ``0:number``)."""
    out = {}
    try:
        for part in text.split(","):
            key, _, rng = part.partition("=")
            lo, _, hi = rng.partition(":")
            if not hi:
                lo, hi = "0", lo
            if key.strip() not in ("n", "k"):
                raise ValueError
            out[key.strip()] = (int(lo), int(hi))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}, expected n=LO:HI,k=LO:HI") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None,
                        help=f"truncation order (default: per command, or ${ORDER_ENV})")
    common.add_argument("--format", choices=("text", "json", "csv"), default=None, help="output format (default text)")
    common.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    common.add_argument("--config", type=Path, default=None,
                        help="JSON file with defaults for any flag; flags on the command line win")

    p = argparse.ArgumentParser(prog="qseries", description="Exact q-series identity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="verify one catalog identity")
    s.add_argument("id", help="identity id (see verify-all --format text)")

    sub.add_parser("verify-all", parents=[common], help="verify every catalog identity")

    s = sub.add_parser("expand", parents=[common], help="print the coefficients of a named series or a PhiSpec")
    s.add_argument("name", help="one of: " + ", ".join(EXPAND_NAMES) + "; or a PhiSpec as JSON text or a .json path")

    s = sub.add_parser("wz-check", parents=[common], help="check the q-WZ pair relation on a grid (default order 40)")
    s.add_argument("--a", type=_rational, default=Fraction(0), help="index shift as p/q (default 0)")
    s.add_argument("--nmax", type=int, default=None, help="largest n (default 10)")
    s.add_argument("--kmax", type=int, default=None, help="largest k (default 10)")
    s.add_argument("--grid", type=_grid, default=None, help="n=LO:HI,k=LO:HI; overrides --nmax/--kmax")

    s = sub.add_parser("limit", parents=[common], help="q -> 1 limit experiment, CSV of eps, value, abs_error")
    s.add_argument("id", help="one of: " + ", ".join(numerics.LIMIT_EXPRESSIONS))
    s.add_argument("--eps", type=_eps_list, default=None, help="comma list (default 0.1,0.03,0.01,0.003,0.001)")
    s.add_argument("--target", type=float, default=None, help="override the limit value")
    s.add_argument("--threshold", type=float, default=None, help="required final error (default 1e-2)")

    s = sub.add_parser("classical", parents=[common], help="partial sum of a classical series")
    s.add_argument("name", help="one of: " + ", ".join(numerics.CLASSICAL_TARGETS))
    s.add_argument("--terms", type=int, default=None, help="number of terms (default 40)")

    s = sub.add_parser("arith", parents=[common], help="representation-count tables")
    s.add_argument("table", nargs="?", default="t2", choices=("t2", "r2", "relation"),
                   help="t2: brute vs divisor formula; r2: same for sums of two squares; relation: 8 t2(n) = r2(8n+5)")
    s.add_argument("--nmax", type=int, default=None, help="table size (default 100)")
    return p


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if args.config is None:
        return
    try:
        cfg = json.loads(args.config.read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    for key, value in cfg.items():
        key = key.replace("-", "_")
        if not hasattr(args, key):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            if key == "a":
                value = Fraction(str(value))
            elif key == "grid":
                value = _grid(value)
            elif key == "eps" and isinstance(value, str):
                value = _eps_list(value)
            elif key == "out":
                value = Path(value)
            setattr(args, key, value)


def _order(args, default: int | None) -> int | None:
    if args.order is not None:
        order = args.order
    elif os.environ.get(ORDER_ENV):
        try:
            order = int(os.environ[ORDER_ENV])
        except ValueError:
            raise UsageError(f"${ORDER_ENV} must be an integer") from None
    else:
        order = default
    if order is not None and order < 1:
        raise UsageError("order must be at least 1")
    return order


# -- commands -------------------------------------------------------------------


def _emit_reports(reports, fmt) -> tuple[str, int]:
    if fmt == "json":
        text = catalog.reports_to_json(reports)
    elif fmt == "csv":
        text = catalog.reports_to_csv(reports)
    else:
        text = "".join(str(r) + "\n" for r in reports)
    if any(r.status == "error" for r in reports):
        code = EXIT_INTERNAL
    else:
        code = EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
    return text, code


def cmd_verify(args):
    cat = catalog.default_catalog()
    if args.id not in cat:
        raise UsageError(f"unknown identity {args.id!r}; known: {', '.join(cat.ids)}")
    return _emit_reports([cat.verify(args.id, _order(args, None))], args.format)


def cmd_verify_all(args):
    return _emit_reports(catalog.verify_all(_order(args, None)), args.format)


def _series_text(s: LaurentSeries, fmt) -> str:
    if fmt == "json":
        return s.to_json() + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        for e, c in s.terms().items():
            w.writerow([str(e), str(c)])
        return buf.getvalue()
    if s.scale == 1 and s.floor >= 0:
        return ", ".join(str(c) for c in s.coefficients()) + "\n"
    return repr(s) + "\n"


def _phi_spec(name: str, order) -> hyper.PhiSpec | None:
    text = name
    if name.endswith(".json") and Path(name).exists():
        text = Path(name).read_text()
    elif not name.lstrip().startswith("{"):
        return None
    try:
        d = json.loads(text)
        if order is not None:
            d["order"] = order
        return hyper.PhiSpec.from_dict(d)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad PhiSpec: {exc}") from None


def cmd_expand(args):
    order = _order(args, 20)
    spec = _phi_spec(args.name, args.order if args.order is not None else None)
    if spec is not None:
        series = hyper.phi(spec)
    elif args.name in SUM_SIDES:
        series = SUM_SIDES[args.name](order)
    elif args.name in PRODUCT_SIDE_NAMES:
        series = product_side(args.name, order)
    else:
        raise UsageError(f"unknown series {args.name!r}; known: {', '.join(EXPAND_NAMES)}")
    return _series_text(series, args.format), EXIT_OK


def cmd_wz_check(args):
    order = _order(args, 40)
    n = (0, 10 if args.nmax is None else args.nmax)
    k = (0, 10 if args.kmax is None else args.kmax)
    if args.grid:
        n, k = args.grid.get("n", n), args.grid.get("k", k)
    if args.a < 0:
        raise UsageError("--a must be nonnegative")
    report = wz.wz_grid(args.a, n[1], k[1], order, nmin=n[0], kmin=k[0])
    d = report.to_dict()
    if args.format == "json":
        text = json.dumps(d, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "exponent", "lhs", "rhs"])
        for f in d["failures"]:
            w.writerow([f["n"], f["k"], f["exponent"], f["lhs"], f["rhs"]])
        text = buf.getvalue()
    else:
        text = f"a={d['a']} n={n[0]}..{n[1]} k={k[0]}..{k[1]} order={order}: {d['status']} ({d['points']} points)\n"
        for f in d["failures"]:
            text += f"  n={f['n']} k={f['k']}: q^{f['exponent']} lhs={f['lhs']} rhs={f['rhs']}\n"
    return text, EXIT_OK if report.ok else EXIT_FAIL


def cmd_limit(args):
    if args.id not in numerics.LIMIT_EXPRESSIONS:
        raise UsageError(f"unknown limit expression {args.id!r}")
    kwargs = {"target": args.target}
    if args.eps is not None:
        kwargs["eps_schedule"] = args.eps
    try:
        exp = numerics.q_limit(args.id, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    threshold = 1e-2 if args.threshold is None else args.threshold
    ok = exp.converged(threshold)
    if args.format == "json":
        text = json.dumps({"id": exp.expr, "target": exp.target, "eps": exp.eps, "values": exp.values,
                           "errors": exp.errors, "monotone": exp.monotone, "converged": ok}, indent=2) + "\n"
    else:
        text = exp.to_csv()
    return text, EXIT_OK if ok else EXIT_FAIL


def cmd_classical(args):
    if args.name not in numerics.CLASSICAL_TARGETS:
        raise UsageError(f"unknown classical series {args.name!r}")
    terms = 40 if args.terms is None else args.terms
    if terms < 1:
        raise UsageError("--terms must be at least 1")
    value = numerics.classical_series(args.name, terms)
    target = numerics.CLASSICAL_TARGETS[args.name]
    if args.format == "json":
        text = json.dumps({"name": args.name, "terms": terms, "value": value, "target": target,
                           "abs_error": abs(value - target)}) + "\n"
    else:
        text = f"{args.name} terms={terms} value={value!r} target={target!r} abs_error={abs(value - target):.3e}\n"
    return text, EXIT_OK


def cmd_arith(args):
    nmax = 100 if args.nmax is None else args.nmax
    if nmax < 1:
        raise UsageError("--nmax must be at least 1")
    if args.table == "t2":
        rows = [(r.n, r.brute, r.formula, r.match) for r in arith.t2_results(nmax)]
        header = ["n", "t2_brute", "t2_formula", "match"]
    elif args.table == "r2":
        brute = arith.r2_brute_table(nmax)
        rows = [(m, brute[m], arith.r2_formula(m), brute[m] == arith.r2_formula(m)) for m in range(1, nmax + 1)]
        header = ["m", "r2_brute", "r2_formula", "match"]
    else:
        t2 = arith.t2_brute_table(nmax)
        r2 = arith.r2_brute_table(8 * nmax + 5)
        rows = [(n, 8 * t2[n], r2[8 * n + 5], 8 * t2[n] == r2[8 * n + 5]) for n in range(nmax + 1)]
        header = ["n", "8*t2(n)", "r2(8n+5)", "match"]
    ok = all(r[3] for r in rows)
    if args.format == "json":
        text = json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([*r[:3], str(r[3]).lower()])
        text = buf.getvalue()
    return text, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify": cmd_verify,
    "verify-all": cmd_verify_all,
    "expand": cmd_expand,
    "wz-check": cmd_wz_check,
    "limit": cmd_limit,
    "classical": cmd_classical,
    "arith": cmd_arith,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _apply_config(args, parser)
        args.format = args.format or "text"
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"qseries: {exc}", file=stderr)
        return EXIT_USAGE
    except (SeriesError, ArithmeticError, ValueError, KeyError) as exc:
        print(f"qseries: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    if args.out is not None:
        args.out.write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
