"""Matrix JSON files: ``{"rows": r, "cols": c, "entries": ["1/2", "0+1*i", ...]}``."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import DimensionMismatch
from .matrix import RMatrix
from .scalar import GaussianRational, parse_scalar


class MatrixFormatError(ValueError):
    pass


def matrix_to_dict(M: RMatrix) -> dict:
    if not all(isinstance(e, GaussianRational) for e in M.entries):
        raise TypeError("only Gaussian-rational matrices can be serialized")
    return {"rows": M.rows, "cols": M.cols, "entries": [str(e) for e in M.entries]}


def matrix_from_dict(data) -> RMatrix:
    if not isinstance(data, dict):
        raise MatrixFormatError("matrix JSON must be an object")
    try:
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
    except KeyError as exc:
        raise MatrixFormatError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(rows, int) or not isinstance(cols, int) or not isinstance(entries, list):
        raise MatrixFormatError("rows and cols must be integers and entries a list")
    if len(entries) != rows * cols:
        raise DimensionMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, "
                                f"got {len(entries)}")
    values = []
    for e in entries:
        if isinstance(e, int) and not isinstance(e, bool):
            values.append(GaussianRational(e))
        elif isinstance(e, str):
            try:
                values.append(parse_scalar(e))
            except (ValueError, ZeroDivisionError) as exc:
                raise MatrixFormatError(f"bad scalar {e!r}: {exc}") from None
        else:
            raise MatrixFormatError(f"entry {e!r} is not a canonical scalar string")
    return RMatrix(rows, cols, values)


def dumps_matrix(M: RMatrix) -> str:
    return json.dumps(matrix_to_dict(M))


def loads_matrix(text: str) -> RMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"malformed JSON: {exc}") from None
    return matrix_from_dict(data)


def read_matrix(path) -> RMatrix:
    return loads_matrix(Path(path).read_text())


def write_matrix(M: RMatrix, path) -> None:
    Path(path).write_text(dumps_matrix(M) + "\n")
