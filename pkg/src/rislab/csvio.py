"""Deterministic CSV and text output helpers.

Floats print with 9 significant digits, '.' radix, no locale dependence;
files are written atomically (write to a temp file, then rename) with
'\\n' line endings.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path


def fmt(value) -> str:
    """Canonical cell text: ints verbatim, floats at 9 significant digits."""
    if isinstance(value, bool):
        raise TypeError("bool is not a CSV cell type")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value == 0.0:  # avoid '-0'
            value = 0.0
        return format(value, ".9g")
    return str(value)


def atomic_write_text(path, text: str) -> None:
    """Write text to path atomically, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)  # mkstemp creates 0600
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, rows) -> None:
    """Write a CSV with the given header tuple and iterable of row tuples."""
    lines = [",".join(header)]
    lines.extend(",".join(fmt(cell) for cell in row) for row in rows)
    atomic_write_text(path, "\n".join(lines) + "\n")


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()
