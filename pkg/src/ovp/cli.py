"""Command-line interface.

Subcommands:

    compute   pbar / theta / ck coefficient tables
    verify    congruence families and the dissection chain
    hecke     apply T(l^2) or run an eigenform check
    dissect   extract an arithmetic progression from a series
    export    write a table to CSV or JSON

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys


from . import cache
from .congruence import family_by_id, registry, verify, verify_dissection_chain
from .hecke import HeckeParams, eigenform_check, hecke_apply
from .overpartition import CoeffTable, Method, canonical_method, overpartition_table
from .qseries import ZZ, CoefficientRing, Series, mod_ring
from .squares import squares_table
from .theta import ThetaKind, theta_series

_THETA_BY_NAME = {
    "phi": ThetaKind.PHI_PLUS,
    "phi-minus": ThetaKind.PHI_MINUS,
    "psi": ThetaKind.PSI,
    "positive-squares": ThetaKind.POSITIVE_SQUARES,
}

_DEFAULT_VERIFY_BUDGET = 10**5
_CHAIN_ORDER_CAP = 2500


def _ring_from(mod: int | None) -> CoefficientRing:
    return ZZ if mod is None else mod_ring(mod)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _series_text(values) -> str:
    return ",".join(str(int(v)) for v in values)


def _series_csv(values) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "value"])
    for n, v in enumerate(values):
        writer.writerow([n, int(v)])
    return buf.getvalue()


def _series_json(series: Series, **extra) -> str:
    payload = dict(extra)
    payload.update(series.to_json_dict())
    return json.dumps(payload, indent=2)


def _get_pbar_table(
    ring: CoefficientRing, length: int, method: str, args
) -> CoeffTable:
    use_cache = not getattr(args, "no_cache", False)
    cache_dir = getattr(args, "cache_dir", None)
    if use_cache:
        hit = cache.load_table("pbar", method, ring, length, cache_dir)
        if hit is not None:
            return hit
    table = overpartition_table(ring, length, method)
    if use_cache:
        cache.store_table(table, cache_dir)
    return table


# -- compute -----------------------------------------------------------------


def _cmd_compute(args, parser) -> int:
    if args.target == "pbar":
        method = canonical_method(args.method)
        table = _get_pbar_table(_ring_from(args.mod), args.order, method, args)
        if args.format == "text":
            _emit(_series_text(table.values), args.out)
        elif args.format == "csv":
            _emit(_series_csv(table.values), args.out)
        else:
            _emit(
                _series_json(table.as_series(), name="pbar", method=method),
                args.out,
            )
        return 0
    if args.target == "theta":
        kind = _THETA_BY_NAME[args.kind]
        series = theta_series(kind, _ring_from(args.mod), args.order)
        if args.format == "text":
            _emit(_series_text(series.coeffs), args.out)
        elif args.format == "csv":
            _emit(_series_csv(series.coeffs), args.out)
        else:
            _emit(_series_json(series, name=f"theta:{args.kind}"), args.out)
        return 0
    # ck: representation counts by ordered sums of positive squares
    table = squares_table(args.k, args.order)
    if args.format == "json":
        payload = {
            "name": "ck",
            "k_max": table.k_max,
            "order": table.order,
            "rows": [list(row) for row in table.rows],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        buf = io.StringIO()
        table.write_csv(buf)
        text = buf.getvalue()
        if args.format == "text":
            text = "\n".join(
                " ".join(line.split(",")) for line in text.splitlines()
            )
        _emit(text, args.out)
    return 0


# -- verify ------------------------------------------------------------------


def _cmd_verify(args, parser) -> int:
    if not args.all and not args.family:
        parser.error("choose --all or at least one --family")
    wanted: list[str] = []
    run_chain = False
    if args.all:
        wanted = [fam.id for fam in registry()]
        run_chain = True
    for fid in args.family or []:
        if fid == "dissection-chain":
            run_chain = True
        else:
            wanted.append(fid)
    try:
        families = [family_by_id(fid) for fid in wanted]
    except KeyError as exc:
        parser.error(str(exc.args[0]))

    budget = args.budget
    moduli = [fam.modulus for fam in families]
    if run_chain:
        moduli.append(5)
    table_mod = math.lcm(*moduli) if moduli else 5
    table = _get_pbar_table(
        mod_ring(table_mod), budget + 1, Method.THETA_INVERSION, args
    )

    reports = [verify(fam, table, budget=budget) for fam in families]
    chain_checks = []
    if run_chain:
        chain_order = max(1, min(_CHAIN_ORDER_CAP, budget // 80))
        chain_checks = verify_dissection_chain(chain_order, table)

    all_ok = all(r.ok for r in reports) and all(c.ok for c in chain_checks)
    if args.format == "json":
        payload = {
            "budget": budget,
            "pass": all_ok,
            "families": [r.to_json_dict() for r in reports],
            "dissection_chain": [c.to_dict() for c in chain_checks],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        lines = []
        for r in reports:
            mark = "PASS" if r.ok else "FAIL"
            lines.append(
                f"{mark} {r.family_id}: {r.statement} "
                f"[cases={r.cases}, n<={r.n_max}, arg<={r.max_argument}]"
            )
            for (n, arg, lhs, rhs) in r.counterexamples:
                lines.append(f"     counterexample n={n} arg={arg} lhs={lhs} rhs={rhs}")
        for c in chain_checks:
            mark = "PASS" if c.ok else "FAIL"
            where = "" if c.ok else f" (first difference at q^{c.first_difference})"
            lines.append(f"{mark} chain: {c.name} [order {c.order}]{where}")
        lines.append(
            f"{'PASS' if all_ok else 'FAIL'}: {len(reports)} families"
            + (f" + {len(chain_checks)} chain identities" if chain_checks else "")
            + f" at budget {budget}"
        )
        _emit("\n".join(lines), args.out)
    return 0 if all_ok else 1


# -- hecke -------------------------------------------------------------------


def _cmd_hecke(args, parser) -> int:
    try:
        params = HeckeParams(k=args.k, N=args.level, ell=args.ell)
    except ValueError as exc:
        parser.error(str(exc))
    ring = _ring_from(args.mod)
    if args.f == "phi3":
        f = theta_series(ThetaKind.PHI_PLUS, ring, args.order) ** 3
    else:
        f = theta_series(ThetaKind.PHI_MINUS, ring, args.order) ** 3
    try:
        if args.check_eigen:
            lam = args.eigenvalue if args.eigenvalue is not None else args.ell + 1
            report = eigenform_check(f, params, lam)
            if args.format == "json":
                _emit(json.dumps(report.to_json_dict(), indent=2), args.out)
            else:
                mark = "PASS" if report.ok else "FAIL"
                where = (
                    ""
                    if report.ok
                    else f"; first failure at q^{report.first_failure}"
                )
                _emit(
                    f"{mark} T({args.ell}^2) {args.f} lambda={lam} "
                    f"[order {report.order}]{where}",
                    args.out,
                )
            return 0 if report.ok else 1
        image = hecke_apply(f, params)
    except ValueError as exc:
        parser.error(str(exc))
    if args.format == "text":
        _emit(_series_text(image.coeffs), args.out)
    elif args.format == "csv":
        _emit(_series_csv(image.coeffs), args.out)
    else:
        _emit(_series_json(image, name=f"T({args.ell}^2) {args.f}"), args.out)
    return 0


# -- dissect -----------------------------------------------------------------


def _cmd_dissect(args, parser) -> int:
    if args.r < 0 or args.r >= args.d:
        parser.error(f"need 0 <= r < d, got r={args.r}, d={args.d}")
    ring = _ring_from(args.mod)
    if args.series == "pbar":
        base = _get_pbar_table(ring, args.order, Method.THETA_INVERSION, args).as_series()
    else:
        base = theta_series(_THETA_BY_NAME[args.series], ring, args.order)
    part = base.extract_progression(args.d, args.r)
    if args.format == "text":
        _emit(_series_text(part.coeffs), args.out)
    elif args.format == "csv":
        _emit(_series_csv(part.coeffs), args.out)
    else:
        _emit(
            _series_json(part, name=f"{args.series}[{args.d}n+{args.r}]"),
            args.out,
        )
    return 0


# -- export ------------------------------------------------------------------


def _cmd_export(args, parser) -> int:
    if args.table == "pbar":
        method = canonical_method(args.method)
        table = _get_pbar_table(_ring_from(args.mod), args.order, method, args)
        if args.format == "csv":
            buf = io.StringIO()
            table.write_csv(buf)
            _emit(buf.getvalue(), args.out)
        else:
            _emit(
                _series_json(table.as_series(), name="pbar", method=method),
                args.out,
            )
        return 0
    sq = squares_table(args.k, args.order)
    if args.format == "csv":
        buf = io.StringIO()
        sq.write_csv(buf)
        _emit(buf.getvalue(), args.out)
    else:
        payload = {
            "name": "ck",
            "k_max": sq.k_max,
            "order": sq.order,
            "rows": [list(row) for row in sq.rows],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    return 0


# -- parser ------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, *, order_default: int | None) -> None:
    if order_default is not None:
        p.add_argument(
            "-T",
            "--order",
            type=int,
            default=order_default,
            help=f"truncation order / table length (default {order_default})",
        )
    p.add_argument("--mod", type=int, default=None, help="work in Z/m instead of ZZ")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="write output to this file")
    p.add_argument("--cache-dir", default=None, help="cache directory override")
    p.add_argument("--no-cache", action="store_true", help="skip the table cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ovp",
        description="Overpartition congruence toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="coefficient tables: pbar, theta, ck")
    p.add_argument("target", choices=("pbar", "theta", "ck"))
    _add_common(p, order_default=100)
    p.add_argument(
        "--method",
        default="theta",
        help="pbar method: theta | euler | enum | two-adic",
    )
    p.add_argument(
        "--kind",
        choices=tuple(_THETA_BY_NAME),
        default="phi",
        help="theta kind for target 'theta'",
    )
    p.add_argument("--k", type=int, default=2, help="k_max for target 'ck'")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="verify congruence families")
    p.add_argument("--all", action="store_true", help="entire registry + chain")
    p.add_argument(
        "--family",
        action="append",
        help="family id (repeatable); also: dissection-chain, planted-false",
    )
    p.add_argument(
        "--budget",
        type=int,
        default=_DEFAULT_VERIFY_BUDGET,
        help=f"largest pbar argument swept (default {_DEFAULT_VERIFY_BUDGET})",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--list", action="store_true", help="list family ids and exit")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("hecke", help="apply T(l^2) / eigenform check")
    p.add_argument("--f", choices=("phi3", "phi-minus3"), default="phi3")
    p.add_argument("--ell", type=int, required=True, help="odd prime l")
    p.add_argument("--k", type=int, default=3, help="weight numerator (odd)")
    p.add_argument("--level", type=int, default=16, help="level N, 4 | N")
    _add_common(p, order_default=10000)
    p.add_argument("--check-eigen", action="store_true")
    p.add_argument(
        "--eigenvalue",
        type=int,
        default=None,
        help="expected eigenvalue (default l + 1)",
    )
    p.set_defaults(func=_cmd_hecke)

    p = sub.add_parser("dissect", help="extract progression d*n + r")
    p.add_argument(
        "--series",
        choices=("pbar",) + tuple(_THETA_BY_NAME),
        default="pbar",
    )
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    _add_common(p, order_default=100)
    p.set_defaults(func=_cmd_dissect)

    p = sub.add_parser("export", help="write a table to --out")
    p.add_argument("--table", choices=("pbar", "ck"), default="pbar")
    p.add_argument("--method", default="theta")
    p.add_argument("--k", type=int, default=2)
    p.add_argument(
        "-T", "--order", type=int, required=True, help="table length"
    )
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "list", False) and args.command == "verify":
        ids = [fam.id for fam in registry()] + ["dissection-chain", "planted-false"]
        _emit("\n".join(ids), getattr(args, "out", None))
        return 0
    try:
        return args.func(args, parser)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
