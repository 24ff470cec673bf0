"""Report files: JSON verdicts, CSV tables and rendered figures.

All writes are atomic (temp file in the target directory, then rename) so a
crashed run never leaves a half-written report.  JSON content is produced
with sorted keys; a fixed config and seed reproduce identical bytes.
"""
from __future__ import annotations

import csv
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["Check", "SuiteResult", "write_report", "write_csv",
           "write_figure", "write_json_doc"]


@dataclass
class Check:
    name: str
    metric: float
    tol: float
    ok: bool

    @staticmethod
    def leq(name: str, metric: float, tol: float) -> "Check":
        return Check(name, float(metric), float(tol), bool(metric <= tol))

    @staticmethod
    def equals(name: str, metric: float, expect: float) -> "Check":
        return Check(name, float(metric), float(expect), bool(metric == expect))

    @staticmethod
    def flag(name: str, ok: bool) -> "Check":
        return Check(name, 1.0 if ok else 0.0, 1.0, bool(ok))

    def to_dict(self) -> dict:
        return {"name": self.name, "metric": self.metric,
                "tol": self.tol, "pass": self.ok}


@dataclass
class SuiteResult:
    suite: str
    checks: list
    kappa: complex | None = None
    tables: dict = field(default_factory=dict)       # name -> (header, rows)
    figures: dict = field(default_factory=dict)      # name -> plot spec
    json_docs: dict = field(default_factory=dict)    # name -> document

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def write_json_doc(outdir, name: str, doc) -> Path:
    path = Path(outdir) / f"{name}.json"
    _atomic_write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def _atomic_write(path: Path, data: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(outdir, result: SuiteResult, config: dict) -> Path:
    from . import __version__

    doc = {
        "suite": result.suite,
        "config": config,
        "checks": [c.to_dict() for c in result.checks],
        "kappa": ([result.kappa.real, result.kappa.imag]
                  if result.kappa is not None else None),
        "version": __version__,
    }
    path = Path(outdir) / "report.json"
    _atomic_write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def write_csv(outdir, name: str, header, rows) -> Path:
    path = Path(outdir) / f"{name}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            writer.writerows(rows)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_figure(outdir, name: str, spec: dict) -> Path:
    """Render one figure spec to PNG next to the delimited output.

    Specs are small dictionaries: kind 'semilogy' / 'loglog' / 'bar' with
    series [(label, xs, ys)], plus axis labels.
    """
    path = Path(outdir) / f"{name}.png"
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    kind = spec.get("kind", "semilogy")
    for label, xs, ys in spec["series"]:
        if kind == "bar":
            ax.bar([str(x) for x in xs], ys, label=label)
        elif kind == "loglog":
            ax.loglog(xs, ys, "o-", label=label)
        else:
            ax.semilogy(xs, ys, "o-", label=label)
    ax.set_xlabel(spec.get("xlabel", ""))
    ax.set_ylabel(spec.get("ylabel", ""))
    if spec.get("title"):
        ax.set_title(spec["title"], fontsize=10)
    if len(spec["series"]) > 1 or spec.get("legend"):
        ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
