"""Run manifests and deterministic CSV / line-delimited record emission.

Floats are rendered with repr (shortest round-trip form), record keys are
sorted, and volatile data (timestamps, runtimes) stays in the manifest only,
so re-running a configuration reproduces every output file byte for byte.
"""

from __future__ import annotations

import datetime
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .experiments import ExperimentReport

__all__ = [
    "canonical_json",
    "config_hash",
    "format_cell",
    "write_csv",
    "write_jsonl",
    "RunManifest",
    "report_records",
    "report_csv",
    "POINTS_CSV_HEADER",
]

POINTS_CSV_HEADER = ["parameter", "source_norm", "target_norm", "ratio"]

_VERSION = "0.1.0"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def config_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()[:12]


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_jsonl(path, records) -> None:
    path = Path(path)
    lines = [canonical_json(rec) for rec in records]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass
class RunManifest:
    """Provenance for one command invocation.

    The run id is the hash of the configuration (not of the clock), so output
    files named by it are stable across re-runs; the timestamp lives only here.
    """

    command: str
    run_id: str
    seed: int
    grid: dict
    version: str = _VERSION
    timestamp: str = ""
    outputs: list = field(default_factory=list)

    @classmethod
    def create(cls, command: str, config, seed: int, grid: dict) -> "RunManifest":
        return cls(
            command=command,
            run_id=config_hash(config),
            seed=seed,
            grid=grid,
            timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        )

    def save(self, directory) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{self.run_id}__manifest.json"
        path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path


def report_records(report: ExperimentReport) -> list:
    """Serializable records for a report: one summary plus one record per point.

    Runtime is intentionally omitted; records must be reproducible.
    """
    summary = {
        "kind": "summary",
        "experiment": report.experiment,
        "config": report.config,
        "slope": report.slope,
        "residual": report.residual,
        "expected_slope": report.expected_slope,
        "growth": report.growth,
        "verdict": report.verdict,
        "classifier_holds": report.classifier_holds,
        "concordant": report.concordant,
        "seed": report.seed,
    }
    records = [summary]
    for pt in report.points:
        rec = {"kind": "point"}
        rec.update(pt)
        records.append(rec)
    return records


def report_csv(report: ExperimentReport) -> tuple[list, list]:
    """CSV header and rows (parameter, source_norm, target_norm, ratio)."""
    rows = []
    for pt in report.points:
        if "ratio" in pt:
            rows.append([pt["parameter"], pt["source_norm"], pt["target_norm"], pt["ratio"]])
        else:
            rows.append([pt["parameter"], pt["value"], "", ""])
    return POINTS_CSV_HEADER, rows
