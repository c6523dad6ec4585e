"""Table and model writers used by the CLI."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence


def atomic_write(path: str | Path, text: str) -> None:
    """Write ``text`` to a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


def table_to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def table_to_json(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    payload = {"columns": list(header), "rows": [list(r) for r in rows]}
    return json.dumps(payload, indent=2) + "\n"


def render_table(header, rows, fmt: str = "csv") -> str:
    return table_to_csv(header, rows) if fmt == "csv" else table_to_json(header, rows)


def load_table(text: str, fmt: str = "csv") -> tuple[list[str], list[list[str]]]:
    if fmt == "json":
        data = json.loads(text)
        return data["columns"], data["rows"]
    reader = list(csv.reader(io.StringIO(text)))
    return reader[0], reader[1:]
