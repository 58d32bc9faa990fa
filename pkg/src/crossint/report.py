"""Machine-readable reports: one Report per CLI run, emitted as JSON, CSV or text.

JSON output is byte-deterministic for fixed inputs: keys are sorted, there
are no floats, and every integer inside ``results`` is written as a
decimal string so that no consumer ever rounds a count.  Wall-clock time
lives in the separate ``timing_ms`` field.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

SCHEMA_VERSION = "1"
PASS, FAIL, NOT_APPLICABLE, EXPECTED_FAIL = "pass", "fail", "n/a", "xfail"
STATUSES = (PASS, FAIL, NOT_APPLICABLE, EXPECTED_FAIL)
FORMATS = ("json", "csv", "text")


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Report:
    command: str
    instance: dict | None = None
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    table: tuple[list[str], list[list[Any]]] | None = None  # (columns, rows) for CSV
    timing_ms: int = 0

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def check(self, name: str, ok: bool | None, detail: str = "") -> Check:
        """Append a check; ``ok=None`` records it as not applicable."""
        status = NOT_APPLICABLE if ok is None else (PASS if ok else FAIL)
        c = Check(name, status, detail)
        self.checks.append(c)
        return c

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "instance": self.instance,
            "results": stringify_ints(self.results),
            "checks": [c.as_dict() for c in self.checks],
            "ok": self.ok,
        }
        if timing:
            out["timing_ms"] = int(self.timing_ms)
        return out


def stringify_ints(value: Any) -> Any:
    """Recursively turn ints into decimal strings; bools stay booleans, tuples become lists."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): stringify_ints(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify_ints(v) for v in value]
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports")
    return str(value)


def to_json(report: Report, timing: bool = True) -> str:
    return json.dumps(report.as_dict(timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    if report.table is not None:
        columns, rows = report.table
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    else:
        writer.writerow(["name", "status", "detail"])
        for c in report.checks:
            writer.writerow([c.name, c.status, c.detail])
    return buf.getvalue()


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        parts = [_cell(x) for x in v]
        # a list of comma-joined sets reads better space-separated
        return (" " if any("," in p for p in parts) else ",").join(parts)
    return str(v)


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) or " " in str(v) for v in value):
        for p, v in enumerate(value):
            _flatten(f"{prefix}[{p}]", v, out)
    else:
        out.append((prefix, _cell(value) if value is not None else "-"))


def to_text(report: Report) -> str:
    lines = [f"command: {report.command}"]
    if report.instance:
        lines.append("instance: " + ", ".join(f"{k}={_cell(v)}" for k, v in sorted(report.instance.items())))
    pairs: list[tuple[str, str]] = []
    _flatten("", report.results, pairs)
    if pairs:
        width = max(len(k) for k, _ in pairs)
        lines += [f"  {k.ljust(width)}  {v}" for k, v in pairs]
    if report.checks:
        width = max(len(c.name) for c in report.checks)
        lines.append("checks:")
        for c in report.checks:
            tail = f"  {c.detail}" if c.detail else ""
            lines.append(f"  {c.status.upper():5} {c.name.ljust(width)}{tail}".rstrip())
    lines.append(f"overall: {'PASS' if report.ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        text = to_csv(report)
    elif fmt == "text":
        text = to_text(report)
    else:
        raise ValueError(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")
    return text.encode("utf-8")


def load_schema() -> dict:
    return json.loads(resources.files("crossint").joinpath("report.schema.json").read_text("utf-8"))
