"""Repo-wide JSON wire format for complex matrices.

Schema: ``{"rows": int, "cols": int, "re": [[float, ...], ...],
"im": [[float, ...], ...]}``, row-major.  Ragged rows are rejected.
"""

import json
import math
from pathlib import Path

import numpy as np

from nmrsim.errors import ParseError

__all__ = ["matrix_to_dict", "matrix_from_dict", "load_matrix", "save_matrix", "load_json"]


def matrix_to_dict(m) -> dict:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ParseError(f"expected a 2-d matrix, got {a.ndim}-d data")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [[float(x) for x in row] for row in a.real],
        "im": [[float(x) for x in row] for row in a.imag],
    }


def _require_number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {type(x).__name__}")
    if not math.isfinite(x):
        raise ParseError(f"{where}: non-finite value {x!r}")
    return float(x)


def _parse_part(part, name: str, rows: int, cols: int) -> list[list[float]]:
    if not isinstance(part, list) or len(part) != rows:
        raise ParseError(f'"{name}" must be a list of {rows} rows')
    out = []
    for i, row in enumerate(part):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f'"{name}" row {i} is ragged: expected {cols} entries')
        out.append([_require_number(x, f'"{name}"[{i}]') for x in row])
    return out


def matrix_from_dict(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("matrix document must be a JSON object")
    missing = {"rows", "cols", "re", "im"} - obj.keys()
    if missing:
        raise ParseError(f"matrix document missing keys: {sorted(missing)}")
    rows, cols = obj["rows"], obj["cols"]
    for label, v in (("rows", rows), ("cols", cols)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise ParseError(f'"{label}" must be a positive integer')
    re = _parse_part(obj["re"], "re", rows, cols)
    im = _parse_part(obj["im"], "im", rows, cols)
    return np.array(re, dtype=float) + 1j * np.array(im, dtype=float)


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path) -> np.ndarray:
    return matrix_from_dict(load_json(path))


def save_matrix(m, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(m), indent=2) + "\n")
