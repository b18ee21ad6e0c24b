"""Command-line entry point.

Exit codes: 0 success, 1 verification or convergence failure, 2 usage or
I/O error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from . import __version__
from .gauge import certify_unique_root
from .moments import PREDICTION_COUPLING, REGIMES, lepton_table, moment_result
from .quadrature import QuadratureConfig
from .renorm import BARE_ALPHA_INV, Coupling, renormalized_alpha_inv
from .report import (
    ReportOptions,
    document_text,
    gauge_csv,
    records_csv,
    run_report,
    to_json,
)
from .verify import run_verify


def _common_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--alpha-inv", type=float, default=default(None),
                        help="coupling 1/alpha (default 136 for renormalization, 137.0359 for moments)")
    parser.add_argument("--rel-tol", type=float, default=default(1e-10), help="quadrature relative tolerance")
    parser.add_argument("--format", choices=("text", "json", "csv"), default=default("text"))
    parser.add_argument("--out", default=default(None), help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlqed", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _common_flags(p, suppress=True)
        return p

    p = add("report", "full result document")
    p.add_argument("--gauge-min", type=float, default=0.01)
    p.add_argument("--gauge-max", type=float, default=50.0)
    p.add_argument("--gauge-points", type=int, default=500)

    add("verify", "run the acceptance checks")

    p = add("zratio", "Z-ratios and renormalized coupling for one fermion mass")
    p.add_argument("--mass", type=float, default=None, help="fermion mass; omit for the massless limit")

    p = add("gauge", "scan the gauge condition residual")
    p.add_argument("--min", dest="m_min", type=float, default=0.01)
    p.add_argument("--max", dest="m_max", type=float, default=50.0)
    p.add_argument("--points", type=int, default=500)

    p = add("moment", "anomalous magnetic moment at one mass")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--regime", choices=REGIMES, default="auto")

    add("leptons", "electron, muon and tau moments")
    return parser


def _flat_text(record: dict) -> str:
    width = max(len(k) for k in record)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in record.items())


def _render(args, records: list[dict], obj) -> str:
    if args.format == "json":
        return to_json(obj)
    if args.format == "csv":
        return records_csv(records)
    return "".join(_flat_text(r) + ("\n" if len(records) > 1 else "") for r in records)


def _execute(args) -> tuple[str, int]:
    cfg = QuadratureConfig(rel_tol=args.rel_tol)
    if args.command == "report":
        opts = ReportOptions(alpha_inv=args.alpha_inv, rel_tol=args.rel_tol, gauge_min=args.gauge_min,
                             gauge_max=args.gauge_max, gauge_points=args.gauge_points)
        doc = run_report(opts)
        status = 0 if doc.converged else 1
        if args.format == "json":
            return to_json(doc), status
        if args.format == "csv":
            scan = certify_unique_root(opts.gauge_min, opts.gauge_max, opts.gauge_points)
            return gauge_csv(scan), status
        return document_text(doc), status
    if args.command == "zratio":
        c = Coupling(BARE_ALPHA_INV if args.alpha_inv is None else args.alpha_inv)
        rep = renormalized_alpha_inv(c, mass=args.mass, cfg=cfg)
        return _render(args, [asdict(rep)], rep), 0 if rep.converged else 1
    if args.command == "gauge":
        scan = certify_unique_root(args.m_min, args.m_max, args.points)
        if args.format == "csv":
            return gauge_csv(scan), 0
        summary = {
            "points": len(scan.grid),
            "max_value_on_grid": scan.max_value_on_grid,
            "brackets": [list(b) for b in scan.brackets],
            "unique_root_at_zero": scan.unique_root_at_zero,
        }
        if args.format == "json":
            return to_json(dict(summary, grid=[list(p) for p in scan.grid])), 0
        return _flat_text(summary), 0
    c = PREDICTION_COUPLING if args.alpha_inv is None else Coupling(args.alpha_inv)
    if args.command == "moment":
        res = moment_result(args.mass, c, args.regime, cfg)
        return _render(args, [asdict(res)], res), 0 if res.converged else 1
    if args.command == "leptons":
        rows = lepton_table(c, cfg)
        return _render(args, [asdict(r) for r in rows], [asdict(r) for r in rows]), \
            0 if all(r.converged for r in rows) else 1
    raise AssertionError(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        if args.out is None:
            return 0 if run_verify(sys.stdout) else 1
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                ok = run_verify(fh)
        except OSError as exc:
            print(f"nlqed: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
        return 0 if ok else 1
    try:
        text, status = _execute(args)
    except ValueError as exc:
        print(f"nlqed: {exc}", file=sys.stderr)
        return 2
    if args.out is None:
        sys.stdout.write(text)
        return status
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"nlqed: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
