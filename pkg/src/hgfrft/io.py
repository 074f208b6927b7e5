"""On-disk formats for signals, spectra, regions and sampling plans.

Complex ``m x n`` arrays are stored as CSV with one row per Hilbert index
and two columns (re, im) per vertex.  A JSON sidecar next to the CSV holds
``{m, n, alpha, beta}``.
"""

import csv
import json
from pathlib import Path

import numpy as np

from .errors import ParseError

__all__ = [
    "fmt",
    "write_complex_csv",
    "read_complex_csv",
    "sidecar_path",
    "write_json",
    "read_json",
    "write_table",
]


def fmt(value):
    """Round-trip float formatting (17 significant digits)."""
    return format(float(value), ".17g")


def sidecar_path(path):
    return Path(path).with_suffix(".json")


def write_complex_csv(path, x, alpha=None, beta=None):
    x = np.atleast_2d(np.asarray(x, dtype=complex))
    m, n = x.shape
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        for row in x:
            cells = []
            for z in row:
                cells.append(fmt(z.real))
                cells.append(fmt(z.imag))
            fh.write(",".join(cells) + "\n")
    meta = {"m": m, "n": n, "alpha": alpha, "beta": beta}
    write_json(sidecar_path(path), meta)
    return path


def read_complex_csv(path):
    """Return ``(x, meta)``; ``meta`` is empty when there is no sidecar."""
    path = Path(path)
    rows = []
    with path.open(newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            if len(row) % 2:
                raise ParseError("odd number of columns in complex CSV", lineno)
            try:
                vals = [float(v) for v in row]
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            rows.append([complex(a, b) for a, b in zip(vals[::2], vals[1::2])])
    if not rows or len({len(r) for r in rows}) != 1:
        raise ParseError(f"{path}: empty or ragged complex CSV")
    x = np.array(rows, dtype=complex)
    side = sidecar_path(path)
    meta = read_json(side) if side.exists() else {}
    if meta and (meta.get("m"), meta.get("n")) != x.shape:
        raise ParseError(f"{path}: sidecar shape {meta.get('m')}x{meta.get('n')} != {x.shape}")
    return x, meta


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_table(path, header, rows):
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) if isinstance(v, (float, np.floating)) else str(v) for v in row) + "\n")
