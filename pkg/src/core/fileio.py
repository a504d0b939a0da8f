"""
File I/O Helpers
================

Atomic writes and the JSON encodings shared by the sample, model and
reduced-model files.

Complex scalars are stored as ``[re, im]`` pairs and matrices as nested
row-major lists. Floats are written with Python's shortest round-trip
representation, so reading a file back reproduces every double exactly.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any, List, Optional, Union

import numpy as np

from src.core.exceptions import ParseError

PathLike = Union[str, "os.PathLike[str]"]


def atomic_write_text(path: PathLike, text: str) -> Path:
    """
    Write ``text`` to ``path`` atomically.

    The content goes to a temporary file in the target directory which is
    then renamed over the destination with :func:`os.replace`.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(
        prefix=f".{target.name}.", suffix=".tmp", dir=str(target.parent)
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def load_json(path: PathLike) -> Any:
    """Read a JSON document, turning decode errors into ParseError."""
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise ParseError("File not found", path=str(path)) from e
    except json.JSONDecodeError as e:
        raise ParseError(
            f"Invalid JSON: {e.msg}",
            path=str(path),
            details={"line": e.lineno, "column": e.colno},
        ) from e


def dump_json(data: Any, indent: Optional[int] = 2) -> str:
    """Serialize to JSON text with a trailing newline."""
    return json.dumps(data, indent=indent, ensure_ascii=False) + "\n"


# =============================================================================
# Encoders
# =============================================================================


def encode_complex(z: complex) -> List[float]:
    return [float(np.real(z)), float(np.imag(z))]


def encode_real_matrix(M: np.ndarray) -> List[List[float]]:
    arr = np.atleast_2d(np.asarray(M, dtype=float))
    return [[float(x) for x in row] for row in arr]


def encode_complex_matrix(M: np.ndarray) -> List[List[List[float]]]:
    arr = np.atleast_2d(np.asarray(M, dtype=complex))
    return [[encode_complex(x) for x in row] for row in arr]


# =============================================================================
# Decoders (with field diagnostics)
# =============================================================================


def decode_complex(value: Any, field: str, path: Optional[str] = None) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) for x in value)
    ):
        raise ParseError("Expected a [re, im] pair", path=path, field=field)
    return complex(float(value[0]), float(value[1]))


def decode_real_matrix(
    value: Any,
    field: str,
    shape: Optional[tuple] = None,
    path: Optional[str] = None,
) -> np.ndarray:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError("Expected a list of rows", path=path, field=field)
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise ParseError("Rows must hold numbers of equal length", path=path, field=field) from e
    if arr.size == 0:
        arr = arr.reshape(shape if shape is not None else (0, 0))
    if arr.ndim != 2:
        raise ParseError("Expected a matrix", path=path, field=field)
    if shape is not None and arr.shape != tuple(shape):
        raise ParseError(
            "Matrix has the wrong shape",
            path=path,
            field=field,
            details={"expected": list(shape), "found": list(arr.shape)},
        )
    return arr


def decode_complex_matrix(
    value: Any,
    field: str,
    shape: tuple,
    path: Optional[str] = None,
) -> np.ndarray:
    if not isinstance(value, list) or len(value) != shape[0]:
        raise ParseError(
            "Complex matrix has the wrong number of rows",
            path=path,
            field=field,
            details={"expected_rows": shape[0]},
        )
    out = np.zeros(shape, dtype=complex)
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise ParseError(
                "Complex matrix row has the wrong length",
                path=path,
                field=f"{field}[{i}]",
                details={"expected_cols": shape[1]},
            )
        for j, entry in enumerate(row):
            out[i, j] = decode_complex(entry, f"{field}[{i}][{j}]", path)
    return out
