"""Report documents: structured results plus JSON / CSV / table rendering.

A report is a plain mapping described by ``schemas/report.schema.json``
(``schema_version`` ``"1"``): provenance (tool, version, optional seed —
deliberately no timestamps, so identical inputs give byte-identical JSON),
an echo of the inputs, the computed outputs, and an optional ``oracle``
section comparing closed-form values against the simulation estimator.

Rendering rules:

* JSON uses sorted keys and two-space indentation; floats serialise via
  ``repr`` (shortest round-trip form), so JSON and CSV carry identical
  numeric values at full precision;
* CSV is a flat two-column ``field,value`` listing with dotted/indexed
  paths, sorted by path;
* the table format is for human eyes only: same rows as CSV, numbers
  shortened to 10 significant digits.

Every interest rate in a report is an object ``{value, basis, ...}`` —
per-annum rates carry their ``day_count``, per-period rates their
``tenor_days`` — so a bare number can never be mistaken for the wrong
compounding basis.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping

from . import __version__
from .errors import ValidationError

REPORT_SCHEMA_VERSION = "1"

FORMATS = ("json", "csv", "table")


def rate_per_annum(value: float, day_count: int) -> dict[str, Any]:
    """Tag a per-annum simple rate with its day-count basis."""

    return {"value": float(value), "basis": "per_annum", "day_count": int(day_count)}


def rate_per_period(value: float, tenor_days: int) -> dict[str, Any]:
    """Tag a per-period simple rate with the period length in days."""

    return {"value": float(value), "basis": "per_period", "tenor_days": int(tenor_days)}


def build_report(
    *,
    command: str,
    inputs: Mapping[str, Any],
    outputs: Mapping[str, Any],
    oracle: Mapping[str, Any] | None = None,
    seed: int | None = None,
) -> dict[str, Any]:
    """Assemble a schema-version-1 report document."""

    provenance: dict[str, Any] = {
        "tool": "repo-options",
        "version": __version__,
        "command": command,
        "seed": seed,
    }
    doc: dict[str, Any] = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "provenance": provenance,
        "inputs": dict(inputs),
        "outputs": dict(outputs),
    }
    if oracle is not None:
        doc["oracle"] = dict(oracle)
    return doc


def to_json(doc: Mapping[str, Any]) -> str:
    """Serialise a report deterministically (sorted keys, trailing newline)."""

    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> dict[str, Any]:
    """Parse a report document back from its JSON form."""

    return json.loads(text)


def flatten(value: Any, prefix: str = "") -> list[tuple[str, Any]]:
    """Flatten nested dicts/lists into ``(dotted.path[index], scalar)`` rows."""

    if isinstance(value, Mapping):
        rows: list[tuple[str, Any]] = []
        for key in sorted(value):
            path = f"{prefix}.{key}" if prefix else str(key)
            rows.extend(flatten(value[key], path))
        return rows
    if isinstance(value, (list, tuple)):
        rows = []
        for i, item in enumerate(value):
            rows.extend(flatten(item, f"{prefix}[{i}]"))
        return rows
    return [(prefix, value)]


def _scalar_full_precision(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(doc: Mapping[str, Any]) -> str:
    """Render a report as sorted ``field,value`` rows at full precision."""

    rows = sorted(flatten(doc), key=lambda item: item[0])
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["field", "value"])
    for path, value in rows:
        writer.writerow([path, _scalar_full_precision(value)])
    return buffer.getvalue()


def _scalar_table(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def to_table(doc: Mapping[str, Any]) -> str:
    """Render a report as an aligned two-column table (human-readable)."""

    rows = sorted(flatten(doc), key=lambda item: item[0])
    width = max((len(path) for path, _ in rows), default=0)
    lines = [f"{path.ljust(width)}  {_scalar_table(value)}" for path, value in rows]
    return "\n".join(lines) + "\n"


def render(doc: Mapping[str, Any], fmt: str) -> str:
    """Render a report in one of the supported output formats."""

    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(doc)
    if fmt == "table":
        return to_table(doc)
    raise ValidationError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
