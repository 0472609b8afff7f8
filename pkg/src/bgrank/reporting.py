"""Deterministic serialization for experiment outputs.

Floats are rendered with 17 significant digits in lowercase e-notation, big
integers as plain base-10 strings, JSON keys sorted; identical inputs give
byte-identical text.  Wall-clock time is carried on RunReport for console
display but deliberately kept out of the serialized forms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float in report: {x!r}")
    return f"{x:.16e}"


def _fragment(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            if not isinstance(key, str):
                raise TypeError(f"JSON keys must be strings, got {key!r}")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _fragment(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _fragment(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} deterministically")


def json_text(obj) -> str:
    out: list[str] = []
    _fragment(obj, out)
    return "".join(out)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    text = str(value)
    if any(ch in text for ch in ",\"\n"):
        return '"' + text.replace('"', '""') + '"'
    return text


def csv_text(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


@dataclass
class RunReport:
    """One executed experiment: echoed command, parameters, result rows,
    named pass/fail checks, and (console-only) wall time."""

    command: str
    params: dict
    columns: tuple[str, ...]
    rows: list[dict] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.get("passed", False) for c in self.checks)

    def add_check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def to_csv_text(self) -> str:
        return csv_text(self.columns, self.rows)

    def to_json_text(self) -> str:
        doc = {
            "command": self.command,
            "params": self.params,
            "columns": list(self.columns),
            "rows": self.rows,
            "checks": self.checks,
        }
        return json_text(doc) + "\n"
