"""Command-line experiment runner.

``diracop verify <suite>`` runs one named verification suite and writes
report.json, CSV tables and PNG figures into the output directory; the
exit code is 0 when every check passes, 1 otherwise, and 2 on usage
errors.  ``diracop convergence <suite>`` emits a refinement table and
fails when an asserted column is not monotone.

Flags can also be read from a flat ``key = value`` config file; explicit
flags override file entries.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .reporting import write_csv, write_figure, write_json_doc, write_report
from .suites import SUITES, convergence_table, run_suite


def _parse_config_file(path: str) -> dict:
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _coerce(value, kind):
    if value is None or value == "":
        return None
    return kind(value)


def _hopf(value):
    if value is None:
        return None
    if isinstance(value, (tuple, list)):
        return tuple(int(v) for v in value)
    parts = [int(v) for v in str(value).split(",")]
    if len(parts) != 3:
        raise ValueError("hopf grid needs three comma-separated counts")
    return tuple(parts)


def _ladder(value):
    return [int(v) for v in str(value).split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracop",
        description="verification suites for the singular Cauchy integral, "
                    "Szego projection and Toeplitz operator machinery")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one named suite")
    verify.add_argument("suite", choices=sorted(SUITES))
    _common_flags(verify)

    conv = sub.add_parser("convergence", help="refinement-ladder table")
    conv.add_argument("suite", choices=["cauchy", "s3-defect"])
    conv.add_argument("--ladder", default=None,
                      help="comma-separated grid sizes, e.g. 64,128,256")
    _common_flags(conv)
    return parser


def _common_flags(cmd):
    cmd.add_argument("--n", type=int, default=None, help="complex dimension")
    cmd.add_argument("--nodes", type=int, default=None, help="circle node count")
    cmd.add_argument("--hopf", default=None, help="Hopf counts a,b,c")
    cmd.add_argument("--symbol", default=None, help="multiplier family name")
    cmd.add_argument("--k", type=int, default=None, help="symbol winding power")
    cmd.add_argument("--tol", type=float, default=None, help="threshold override")
    cmd.add_argument("--eta", type=float, default=None,
                     help="mode-energy fraction for the finite-section filter")
    cmd.add_argument("--seed", type=int, default=None, help="random seed")
    cmd.add_argument("--out", default=None, help="output directory")
    cmd.add_argument("--config", default=None, help="flat key = value file")
    cmd.add_argument("--no-figures", action="store_true",
                     help="skip PNG rendering")


def _merge_config(args) -> dict:
    file_cfg = _parse_config_file(args.config) if args.config else {}
    cfg = {
        "n": _coerce(file_cfg.get("n"), int),
        "nodes": _coerce(file_cfg.get("nodes"), int),
        "hopf": _hopf(file_cfg.get("hopf")),
        "symbol": file_cfg.get("symbol"),
        "k": _coerce(file_cfg.get("k"), int),
        "tol": _coerce(file_cfg.get("tol"), float),
        "eta": _coerce(file_cfg.get("eta"), float),
        "seed": _coerce(file_cfg.get("seed"), int),
        "out": file_cfg.get("out"),
        "ladder": file_cfg.get("ladder"),
    }
    for key in ("n", "nodes", "symbol", "k", "tol", "eta", "seed", "out"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "hopf", None) is not None:
        cfg["hopf"] = _hopf(args.hopf)
    if getattr(args, "ladder", None) is not None:
        cfg["ladder"] = args.ladder
    if cfg["seed"] is None:
        cfg["seed"] = 0
    if cfg["out"] is None:
        cfg["out"] = "reports"
    cfg = {k: v for k, v in cfg.items() if v is not None}
    return cfg


def _json_safe_config(cfg: dict) -> dict:
    out = {}
    for key, value in cfg.items():
        if key == "out":
            continue          # report location, not semantic config
        if isinstance(value, tuple):
            out[key] = list(value)
        else:
            out[key] = value
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _merge_config(args)
    outdir = Path(cfg["out"])

    if args.command == "verify":
        result = run_suite(args.suite, cfg)
        write_report(outdir, result, _json_safe_config(cfg))
        for name, (header, rows) in result.tables.items():
            write_csv(outdir, name, header, rows)
        for name, doc in result.json_docs.items():
            write_json_doc(outdir, name, doc)
        if not args.no_figures:
            for name, spec in result.figures.items():
                write_figure(outdir, name, spec)
        for check in result.checks:
            status = "pass" if check.ok else "FAIL"
            print(f"[{status}] {check.name}: metric = {check.metric:.3e}, "
                  f"tol = {check.tol:.3e}")
        print(f"report written to {outdir / 'report.json'}")
        return 0 if result.ok else 1

    if args.command == "convergence":
        ladder = _ladder(cfg.get("ladder") or "64,128,256")
        header, rows, flags = convergence_table(args.suite, ladder, cfg)
        name = f"convergence_{args.suite}"
        write_csv(outdir, name, header, rows)
        if not args.no_figures:
            series = []
            for col in range(1, len(header)):
                ys = [max(float(r[col]), 1e-18) for r in rows]
                series.append((header[col], [r[0] for r in rows], ys))
            write_figure(outdir, name, {
                "kind": "loglog", "series": series, "legend": True,
                "xlabel": "grid size", "ylabel": "metric",
                "title": f"{args.suite} refinement ladder"})
        ok = all(flags.values())
        for col, good in flags.items():
            print(f"[{'pass' if good else 'FAIL'}] monotone decrease: {col}")
        print(f"table written to {outdir / (name + '.csv')}")
        return 0 if ok else 1

    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
