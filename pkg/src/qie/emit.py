"""Deterministic CSV/JSON emission: 17-significant-digit round-trip floats,
LF line endings, `#`-prefixed comment headers."""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence


def format_number(value: Any) -> str:
    """Render a scalar for output; floats carry 17 significant digits."""
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            return "nan"
        return format(value, ".17g")
    return str(value)


def config_header(command: str, config: Mapping[str, Any]) -> list[str]:
    """Effective-config echo as `# key = value` comment lines."""
    lines = [f"# qie {command}"]
    for key, value in config.items():
        if value is None:
            continue
        if isinstance(value, (list, tuple)):
            rendered = ",".join(format_number(v) for v in value)
        else:
            rendered = format_number(value)
        lines.append(f"# {key} = {rendered}")
    return lines


def csv_document(
    command: str,
    config: Mapping[str, Any],
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    trailing_comments: Sequence[str] = (),
) -> str:
    lines = config_header(command, config)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_number(cell) for cell in row))
    for comment in trailing_comments:
        lines.append(f"# {comment}")
    return "\n".join(lines) + "\n"


def _json_fragment(obj: Any, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [
            f'{inner}{json.dumps(str(k))}: {_json_fragment(v, indent + 1)}'
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{_json_fragment(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return "null"
        return format(obj, ".17g")
    return json.dumps(str(obj))


def json_document(payload: Mapping[str, Any]) -> str:
    """Serialize with 17-significant-digit floats and stable key order."""
    return _json_fragment(payload, 0) + "\n"
