"""Tabular output records with deterministic 17 significant digit encoding.

Every command produces one OutputRecord: a named table plus the parameters
and metadata that produced it.  Two encodings are supported, CSV (parameters
and metadata as comment lines, then a header row and data rows) and JSON (a
single object).  Real cells are always written through the same fixed format
so identical inputs give byte identical payloads and parsing recovers every
float bit exactly.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

__all__ = [
    "OutputRecord",
    "format_real",
    "record_to_csv",
    "record_to_json",
    "parse_csv",
    "parse_json",
]


def format_real(value: float) -> str:
    """Fixed 17 significant digit encoding; round-trips every finite float."""
    return "%.17g" % value


def _format_cell(value) -> str:
    if isinstance(value, bool):
        raise TypeError("boolean cells are not part of the table contract")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_real(value)
    return str(value)


def _parse_cell(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass(frozen=True)
class OutputRecord:
    """One tabular result: command name, parameters, columns, rows, metadata.

    Rows hold ints, floats and short strings; metadata carries the tool
    version and the tolerances in effect, never timestamps, so that repeated
    runs stay byte identical.
    """

    command: str
    parameters: dict
    columns: tuple
    rows: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        rows = tuple(tuple(row) for row in self.rows)
        for row in rows:
            if len(row) != len(self.columns):
                raise ValueError(
                    f"row width {len(row)} does not match {len(self.columns)} columns"
                )
        object.__setattr__(self, "rows", rows)


def record_to_csv(record: OutputRecord) -> str:
    lines = [f"# command: {record.command}"]
    for key, value in record.parameters.items():
        lines.append(f"# parameter {key}: {_format_cell(value)}")
    for key, value in record.metadata.items():
        lines.append(f"# metadata {key}: {_format_cell(value)}")
    lines.append(",".join(record.columns))
    for row in record.rows:
        lines.append(",".join(_format_cell(cell) for cell in row))
    return "\n".join(lines) + "\n"


def _json_scalar(value) -> str:
    if isinstance(value, bool):
        raise TypeError("boolean cells are not part of the table contract")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "NaN"
        if math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return format_real(value)
    return json.dumps(str(value))


def record_to_json(record: OutputRecord) -> str:
    # hand assembled so float cells go through the same 17 digit format as
    # the CSV encoder
    def obj(mapping: dict) -> str:
        inner = ", ".join(f"{json.dumps(str(k))}: {_json_scalar(v)}" for k, v in mapping.items())
        return "{" + inner + "}"

    rows = ", ".join(
        "[" + ", ".join(_json_scalar(cell) for cell in row) + "]" for row in record.rows
    )
    parts = [
        f'"command": {json.dumps(record.command)}',
        f'"parameters": {obj(record.parameters)}',
        f'"columns": {json.dumps(list(record.columns))}',
        f'"rows": [{rows}]',
        f'"metadata": {obj(record.metadata)}',
    ]
    return "{" + ", ".join(parts) + "}\n"


def parse_csv(text: str) -> dict:
    """Recover columns and typed rows from an emitted CSV record."""
    columns = None
    rows = []
    command = None
    parameters = {}
    metadata = {}
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("command:"):
                command = body.split(":", 1)[1].strip()
            elif body.startswith("parameter "):
                key, value = body[len("parameter ") :].split(":", 1)
                parameters[key.strip()] = _parse_cell(value.strip())
            elif body.startswith("metadata "):
                key, value = body[len("metadata ") :].split(":", 1)
                metadata[key.strip()] = _parse_cell(value.strip())
            continue
        if columns is None:
            columns = line.split(",")
            continue
        rows.append(tuple(_parse_cell(cell) for cell in line.split(",")))
    if columns is None:
        raise ValueError("no header row found")
    return {
        "command": command,
        "parameters": parameters,
        "columns": tuple(columns),
        "rows": tuple(rows),
        "metadata": metadata,
    }


def parse_json(text: str) -> dict:
    data = json.loads(text)
    data["columns"] = tuple(data["columns"])
    data["rows"] = tuple(tuple(row) for row in data["rows"])
    return data
