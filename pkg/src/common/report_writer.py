#
# report_writer.py
# csv / json output of the cli; files are written to a temp file next
# to the target and renamed, so a failed run never leaves half a report
#
from __future__ import annotations

import csv
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

logger = logging.getLogger(__name__)


def _cell(value: Any) -> Any:
    # None is a blank cell, booleans lowercase like the json output
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def render_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({name: _cell(row.get(name)) for name in columns})
    return buffer.getvalue()


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def write_text(text: str, output_path: Optional[str] = None) -> None:
    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    target = Path(output_path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.info(f"wrote {target}")


def write_rows(
    rows: List[Dict[str, Any]],
    columns: Sequence[str],
    output_format: str = "csv",
    output_path: Optional[str] = None,
) -> None:
    """Rows as csv (header = columns) or as a json array with the same keys."""
    if output_format == "csv":
        text = render_csv(rows, columns)
    elif output_format == "json":
        text = render_json([{name: row.get(name) for name in columns} for row in rows])
    else:
        raise ValueError(f"unknown output format {output_format!r}")
    write_text(text, output_path)
