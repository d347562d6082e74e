"""Structured verification reports with CSV and JSON-lines emitters.

A report is a sequence of per-check records (name, LHS, RHS, ratio,
tolerance, outcome) plus an environment echo and truncation residuals.
JSON-lines is the round-trippable format; CSV is a flat export of the same
records.  Numeric fields are written with full round-trip precision
(shortest repr) and field order is fixed, so identical runs yield identical
bytes.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

SCHEMA_VERSION = "1"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

_CSV_FIELDS = ["scenario", "name", "lhs", "rhs", "ratio", "tolerance", "outcome", "detail"]


@dataclass(frozen=True)
class CheckRecord:
    """One verified inequality or identity: values, tolerance, and outcome."""

    name: str
    lhs: float
    rhs: float
    ratio: float
    tolerance: float
    outcome: str
    detail: str = ""

    def __post_init__(self) -> None:
        if self.outcome not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown outcome {self.outcome!r}")


@dataclass
class VerificationReport:
    """All check records of one scenario run, with its environment echo."""

    scenario: str
    environment: dict = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)
    residuals: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add(
        self,
        name: str,
        lhs: float,
        rhs: float,
        *,
        tolerance: float,
        passed: bool | None,
        ratio: float | None = None,
        detail: str = "",
    ) -> CheckRecord:
        """Append a record; ``passed=None`` marks an inconclusive check."""
        if ratio is None:
            ratio = lhs / rhs if rhs not in (0.0, float("inf")) else 0.0
        outcome = INCONCLUSIVE if passed is None else (PASS if passed else FAIL)
        rec = CheckRecord(
            name=name,
            lhs=float(lhs),
            rhs=float(rhs),
            ratio=float(ratio),
            tolerance=float(tolerance),
            outcome=outcome,
            detail=detail,
        )
        self.records.append(rec)
        return rec

    @property
    def n_failed(self) -> int:
        return sum(1 for r in self.records if r.outcome == FAIL)

    @property
    def n_inconclusive(self) -> int:
        return sum(1 for r in self.records if r.outcome == INCONCLUSIVE)

    @property
    def all_passed(self) -> bool:
        return self.n_failed == 0 and self.n_inconclusive == 0

    def exit_code(self) -> int:
        """0 all pass, 1 any fail, 2 inconclusive results but no failure."""
        if self.n_failed:
            return 1
        if self.n_inconclusive:
            return 2
        return 0


def _num(x) -> float | str:
    # full-precision decimal via shortest round-trip repr; inf/nan as strings
    if isinstance(x, float) and (x != x or x in (float("inf"), float("-inf"))):
        return repr(x)
    return x


def emit_report(report: VerificationReport, path: str, format: str = "jsonl") -> str:
    """Write a report to ``path`` as 'jsonl' (round-trippable) or 'csv'."""
    if format == "jsonl":
        return _emit_jsonl(report, path)
    if format == "csv":
        return _emit_csv(report, path)
    raise ValueError(f"unknown report format {format!r}")


def _record_dict(rec: CheckRecord) -> dict:
    return {
        "name": rec.name,
        "lhs": _num(rec.lhs),
        "rhs": _num(rec.rhs),
        "ratio": _num(rec.ratio),
        "tolerance": _num(rec.tolerance),
        "outcome": rec.outcome,
        "detail": rec.detail,
    }


def _emit_jsonl(report: VerificationReport, path: str) -> str:
    header = {
        "schema_version": report.schema_version,
        "scenario": report.scenario,
        "environment": report.environment,
        "residuals": {k: _num(v) for k, v in report.residuals.items()},
    }
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for rec in report.records:
                fh.write(json.dumps(_record_dict(rec), sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write report to {path!r}: {exc}") from exc
    return path


def _parse_num(x):
    if isinstance(x, str):
        return float(x)
    return float(x)


def parse_jsonl(path: str) -> VerificationReport:
    """Inverse of the JSON-lines emitter: parse(emit(r)) reproduces r."""
    try:
        with open(path) as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
    except OSError as exc:
        raise OSError(f"cannot read report from {path!r}: {exc}") from exc
    if not lines:
        raise ValueError(f"empty report file {path!r}")
    header = lines[0]
    report = VerificationReport(
        scenario=header["scenario"],
        environment=header.get("environment", {}),
        residuals={k: _parse_num(v) for k, v in header.get("residuals", {}).items()},
        schema_version=header.get("schema_version", SCHEMA_VERSION),
    )
    for row in lines[1:]:
        report.records.append(
            CheckRecord(
                name=row["name"],
                lhs=_parse_num(row["lhs"]),
                rhs=_parse_num(row["rhs"]),
                ratio=_parse_num(row["ratio"]),
                tolerance=_parse_num(row["tolerance"]),
                outcome=row["outcome"],
                detail=row.get("detail", ""),
            )
        )
    return report


def _emit_csv(report: VerificationReport, path: str) -> str:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS, lineterminator="\n")
            writer.writeheader()
            for rec in report.records:
                row = {"scenario": report.scenario, **_record_dict(rec)}
                writer.writerow(row)
    except OSError as exc:
        raise OSError(f"cannot write report to {path!r}: {exc}") from exc
    return path
